use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::intpoly::to_rat;
use crate::exactalg::serial::bigint_string;
use crate::{ForgeError, IntPoly, RatPoly, Result};

/// `num(x) / den` with a constant integer denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMap {
    pub num: IntPoly,
    #[serde(with = "bigint_string")]
    pub den: BigInt,
}

impl RationalMap {
    pub fn new(num: IntPoly, den: impl Into<BigInt>) -> Self {
        RationalMap { num, den: den.into() }
    }

    pub fn identity() -> Self {
        Self::new(crate::ipoly(&[0, 1]), 1)
    }

    fn as_rat(&self) -> Result<RatPoly> {
        if self.den.is_zero() {
            return Err(ForgeError::DivisionByZero);
        }
        let inv = BigRational::new(BigInt::one(), self.den.clone());
        Ok(to_rat(&self.num).scale(&inv))
    }
}

/// `g(h(x)) mod f` by Horner's rule.
fn apply_mod(g: &RatPoly, h: &RatPoly, f: &RatPoly) -> RatPoly {
    g.coeffs().iter().rev().fold(RatPoly::zero(), |acc, c| {
        (&(&acc * h) + &RatPoly::constant(c.clone())).rem(f).expect("f nonzero")
    })
}

fn require_monic(f: &IntPoly) -> Result<()> {
    match f.degree() {
        Some(n) if n >= 1 && f.is_monic() => Ok(()),
        _ => Err(ForgeError::Precondition("expected a monic polynomial of positive degree".into())),
    }
}

/// `s1(s2(x)) mod f` as a rational polynomial.
pub fn compose_maps_mod(f: &IntPoly, s1: &RationalMap, s2: &RationalMap) -> Result<RatPoly> {
    require_monic(f)?;
    let fq = to_rat(f);
    Ok(apply_mod(&s1.as_rat()?, &s2.as_rat()?.rem(&fq)?, &fq))
}

/// Outcome of checking that a rational map permutes the roots of `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationCheck {
    pub maps_roots: bool,
    /// Order of the induced permutation.
    pub order: Option<usize>,
    /// Cycle lengths, descending.
    pub cycle_type: Vec<usize>,
}

fn mobius(n: usize) -> i64 {
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Check that `sigma = num/den` maps roots of the monic `f` to roots of `f`,
/// and read off the cycle structure exactly: `sigma^k` fixes
/// `deg gcd(f, sigma^k(x) - x)` roots.
pub fn verify_permutation_polynomial(f: &IntPoly, sigma: &RationalMap) -> Result<PermutationCheck> {
    require_monic(f)?;
    let n = f.degree().unwrap();
    let fq = to_rat(f);
    let s = sigma.as_rat()?.rem(&fq)?;
    let maps_roots = apply_mod(&fq, &s, &fq).is_zero();
    if !maps_roots {
        return Ok(PermutationCheck { maps_roots, order: None, cycle_type: Vec::new() });
    }
    let x = RatPoly::x().rem(&fq)?;
    let mut fixed = vec![0usize; n + 1];
    let mut iterate = s.clone();
    let mut order = None;
    for k in 1..=n {
        let diff = &iterate - &x;
        fixed[k] = if diff.is_zero() { n } else { fq.gcd(&diff).degree().unwrap_or(0) };
        if diff.is_zero() && order.is_none() {
            order = Some(k);
        }
        iterate = apply_mod(&s, &iterate, &fq);
    }
    let mut cycle_type = Vec::new();
    for d in 1..=n {
        let exact: i64 = (1..=d).filter(|e| d % e == 0).map(|e| mobius(d / e) * fixed[e] as i64).sum();
        for _ in 0..(exact.max(0) as usize / d) {
            cycle_type.push(d);
        }
    }
    cycle_type.sort_unstable_by(|a, b| b.cmp(a));
    Ok(PermutationCheck { maps_roots, order, cycle_type })
}

/// `D^deg(g) g(T(z)/D) = 0 mod f(z)`: the map `T/D` sends roots of `f` to roots of `g`.
pub fn verify_tschirnhaus(f: &IntPoly, map: &RationalMap, g: &IntPoly) -> Result<bool> {
    require_monic(f)?;
    require_monic(g)?;
    if f.degree() != g.degree() {
        return Err(ForgeError::Precondition("Tschirnhaus check needs equal degrees".into()));
    }
    let fq = to_rat(f);
    let t = map.as_rat()?.rem(&fq)?;
    Ok(apply_mod(&to_rat(g), &t, &fq).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipoly;

    #[test]
    fn sqrt_two_swap() {
        let c = verify_permutation_polynomial(&ipoly(&[-2, 0, 1]), &RationalMap::new(ipoly(&[0, -1]), 1)).unwrap();
        assert!(c.maps_roots);
        assert_eq!(c.order, Some(2));
        assert_eq!(c.cycle_type, vec![2]);
    }

    #[test]
    fn cyclotomic_frobenius_cycles() {
        // x -> x^2 on roots of Phi_5 is a 4-cycle; x -> x^4 is two 2-cycles.
        let f = ipoly(&[1, 1, 1, 1, 1]);
        let c = verify_permutation_polynomial(&f, &RationalMap::new(ipoly(&[0, 0, 1]), 1)).unwrap();
        assert_eq!(c.cycle_type, vec![4]);
        let c = verify_permutation_polynomial(&f, &RationalMap::new(ipoly(&[0, 0, 0, 0, 1]), 1)).unwrap();
        assert_eq!(c.cycle_type, vec![2, 2]);
        let c = verify_permutation_polynomial(&f, &RationalMap::new(ipoly(&[1, 1]), 1)).unwrap();
        assert!(!c.maps_roots);
    }

    #[test]
    fn tschirnhaus_identity_and_scaling() {
        let f = ipoly(&[-2, 0, 1]);
        assert!(verify_tschirnhaus(&f, &RationalMap::identity(), &f).unwrap());
        // 2x maps roots of x^2 - 2 to roots of x^2 - 8.
        assert!(verify_tschirnhaus(&f, &RationalMap::new(ipoly(&[0, 2]), 1), &ipoly(&[-8, 0, 1])).unwrap());
        assert!(!verify_tschirnhaus(&f, &RationalMap::new(ipoly(&[0, 3]), 1), &ipoly(&[-8, 0, 1])).unwrap());
        assert!(verify_tschirnhaus(&f, &RationalMap::new(ipoly(&[0, 1]), 0), &f).is_err());
    }

    #[test]
    fn mobius_values() {
        assert_eq!((1..=10).map(mobius).collect::<Vec<_>>(), vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
