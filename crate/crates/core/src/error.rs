use thiserror::Error;

#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial of degree {degree} exceeds the factorization cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("polynomial must have degree at least {min}")]
    DegreeTooSmall { min: usize },
    #[error("polynomial is zero modulo {0}")]
    ZeroModP(u64),
    #[error("interpolation inconsistent at t = {0}; degree bound too low")]
    InterpolationInconsistent(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("{k} is not coprime to {n}")]
    NotCoprime { k: u64, n: u64 },
    #[error("normal basis candidate is singular")]
    SingularBasis,
    #[error("no branch assignment verified up to {precision} bits: {diagnostic}")]
    NoVerifiedBranch { precision: u32, diagnostic: String },
    #[error("rounding to an integer polynomial failed: {0}")]
    Rounding(String),
    #[error("values do not form a Galois orbit: {0}")]
    NotAnOrbit(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown permutation group `{0}`")]
    UnknownGroup(String),
    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),
    #[error("family `{0}` has no Lucas specialization rules")]
    NoLucasRules(String),
    #[error("apolarity is only defined for n in {{3, 4, 6}}, got {0}")]
    ApolarDegree(usize),
    #[error("polynomial is reducible")]
    Reducible,
    #[error("fixture checksum mismatch: expected {expected}, found {found}")]
    Checksum { expected: String, found: String },
    #[error("malformed data: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ForgeError>;
