//! Exact polynomial algebra, resolvent constructions and local certificates for
//! families of unramified cyclic extensions of cyclic (and `PGL(3,2)`) number
//! fields.
//!
//! The algebra in [`exactalg`] is generic over the coefficient ring through
//! [`Ring`]/[`Domain`]; the aliases below fix the concrete exact types used by
//! the rest of the crate.

pub mod certify;
pub mod cheblucas;
pub mod cyclotomic;
mod error;
pub mod exactalg;
pub mod families;
#[cfg(test)]
mod properties;
pub mod resolvent;
pub mod selftest;

pub use error::{ForgeError, Result};
pub use exactalg::poly::{Domain, Field, Poly, Ring};

/// Arbitrary precision integer.
pub type Integer = num_bigint::BigInt;
/// Reduced rational with positive denominator.
pub type Rational = num_rational::BigRational;
/// Dense univariate polynomial over the integers, constant term first.
pub type IntPoly = Poly<Integer>;
/// Dense univariate polynomial over the rationals.
pub type RatPoly = Poly<Rational>;
/// Element of `Z[t][x]`: coefficient `i` is the polynomial in `t` multiplying `x^i`.
pub type BiPoly = Poly<IntPoly>;
/// Floating point polynomial, used for quick numeric estimates only.
pub type FloatPoly = Poly<f64>;

pub use certify::{Certificate, CheckStatus, NewtonCertificate, PermGroupTable, Verdict};
pub use cyclotomic::{ComplexApprox, CycloElt};
pub use exactalg::padic::PAdicInt;
pub use families::{FamilyInstance, FamilySpec};

/// Default seed for randomized subroutines.
pub const DEFAULT_SEED: u64 = 0;

/// Shorthand for building an [`IntPoly`] from machine integers, constant term first.
pub fn ipoly(coeffs: &[i64]) -> IntPoly {
    Poly::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
}

/// Shorthand for building a [`BiPoly`]; `rows[i]` holds the `t`-coefficients of `x^i`.
pub fn bipoly(rows: &[&[i64]]) -> BiPoly {
    Poly::new(rows.iter().map(|r| ipoly(r)).collect())
}
