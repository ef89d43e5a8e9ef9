use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exactalg::intpoly::is_squarefree;
use crate::exactalg::modp::{factor_mod_p, FpPoly};
use crate::exactalg::numtheory::is_prime;
use crate::{ForgeError, IntPoly, Result};

/// Dedekind's criterion at `p` for `Z[x]/(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedekindReport {
    pub p: u64,
    pub maximal: bool,
    /// `(degree, exponent)` of each irreducible factor of `f mod p`.
    pub splitting: Vec<(usize, u32)>,
}

/// Write `f = prod g_i^e_i mod p`, `g = prod g_i`, `h = prod g_i^(e_i - 1)`
/// (lifted), `F = (g h - f)/p`. `Z[x]/(f)` is `p`-maximal iff
/// `gcd(F, g, h) = 1` modulo `p`.
pub fn dedekind_p_maximal(f: &IntPoly, p: u64) -> Result<DedekindReport> {
    if !is_prime(p) {
        return Err(ForgeError::NotPrime(p));
    }
    if !f.is_monic() {
        return Err(ForgeError::Precondition("Dedekind criterion needs a monic polynomial".into()));
    }
    if !is_squarefree(f) {
        return Err(ForgeError::Precondition("Dedekind criterion needs a squarefree polynomial".into()));
    }
    let factors = factor_mod_p(f, p)?;
    let mut g = FpPoly::one(p);
    let mut h = FpPoly::one(p);
    for (gi, e) in &factors {
        g = g.mul(gi);
        for _ in 1..*e {
            h = h.mul(gi);
        }
    }
    let diff = &(&g.to_int() * &h.to_int()) - f;
    let pb = BigInt::from(p);
    let big_f = IntPoly::new(diff.coeffs().iter().map(|c| c / &pb).collect());
    let common = FpPoly::from_int(&big_f, p).gcd(&g).gcd(&h);
    let mut splitting: Vec<(usize, u32)> = factors
        .iter()
        .map(|(gi, e)| (gi.degree().unwrap_or(0), *e))
        .collect();
    splitting.sort();
    Ok(DedekindReport { p, maximal: common.degree() == Some(0), splitting })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipoly;

    #[test]
    fn quadratic_examples() {
        let r = dedekind_p_maximal(&ipoly(&[-5, 0, 1]), 5).unwrap();
        assert!(r.maximal);
        assert_eq!(r.splitting, vec![(1, 2)]);
        assert!(!dedekind_p_maximal(&ipoly(&[3, 0, 1]), 2).unwrap().maximal);
        let r = dedekind_p_maximal(&ipoly(&[1, 0, 1]), 3).unwrap();
        assert!(r.maximal);
        assert_eq!(r.splitting, vec![(2, 1)]);
    }

    #[test]
    fn index_divisible_by_p() {
        // Z[sqrt 20] has index 4 in the maximal order of Q(sqrt 5), prime to 5
        assert!(!dedekind_p_maximal(&ipoly(&[-20, 0, 1]), 2).unwrap().maximal);
        assert!(dedekind_p_maximal(&ipoly(&[-20, 0, 1]), 5).unwrap().maximal);
        assert!(!dedekind_p_maximal(&ipoly(&[-45, 0, 1]), 3).unwrap().maximal);
        assert!(dedekind_p_maximal(&ipoly(&[1, 0, -1, 0, 1]), 3).is_ok());
        assert!(dedekind_p_maximal(&ipoly(&[1, 0, 2]), 3).is_err());
    }
}
