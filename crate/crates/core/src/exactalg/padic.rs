//! p-adic valuations, Newton convergence witnesses and Hensel lifting of roots.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::numtheory::{is_prime, valuation_int};
use crate::{ForgeError, IntPoly, Result};

/// Element of `Z_p / p^k Z_p`, stored as its representative in `[0, p^k)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PAdicInt {
    pub p: u64,
    pub precision: u32,
    #[serde(with = "super::serial::bigint_string")]
    pub value: BigInt,
}

impl PAdicInt {
    pub fn new(p: u64, precision: u32, value: &BigInt) -> Self {
        let m = BigInt::from(p).pow(precision);
        PAdicInt { p, precision, value: value.mod_floor(&m) }
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }

    /// Valuation of the represented class, capped at the precision.
    pub fn valuation(&self) -> u32 {
        valuation_int(&self.value, self.p).map_or(self.precision, |v| v.min(self.precision))
    }

    /// Reduce to a lower precision.
    pub fn truncate(&self, precision: u32) -> Self {
        Self::new(self.p, precision.min(self.precision), &self.value)
    }

    fn combine(&self, o: &Self, v: BigInt) -> Self {
        assert_eq!(self.p, o.p, "mixed primes");
        Self::new(self.p, self.precision.min(o.precision), &v)
    }

    /// Exact division by `p^e`; precision drops by `e`.
    pub fn div_p_power(&self, e: u32) -> Result<Self> {
        let d = BigInt::from(self.p).pow(e);
        if e > self.precision || !(&self.value % &d).is_zero() {
            return Err(ForgeError::Precondition(format!("not divisible by {}^{e}", self.p)));
        }
        Ok(Self::new(self.p, self.precision - e, &(&self.value / d)))
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.modulus();
        let e = self.value.extended_gcd(&m);
        if !e.gcd.is_one() {
            return Err(ForgeError::NotInvertible);
        }
        Ok(Self::new(self.p, self.precision, &e.x))
    }
}

impl Add for &PAdicInt {
    type Output = PAdicInt;
    fn add(self, o: &PAdicInt) -> PAdicInt {
        self.combine(o, &self.value + &o.value)
    }
}

impl Sub for &PAdicInt {
    type Output = PAdicInt;
    fn sub(self, o: &PAdicInt) -> PAdicInt {
        self.combine(o, &self.value - &o.value)
    }
}

impl Mul for &PAdicInt {
    type Output = PAdicInt;
    fn mul(self, o: &PAdicInt) -> PAdicInt {
        self.combine(o, &self.value * &o.value)
    }
}

impl Neg for &PAdicInt {
    type Output = PAdicInt;
    fn neg(self) -> PAdicInt {
        PAdicInt::new(self.p, self.precision, &-&self.value)
    }
}

impl fmt::Debug for PAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.p, self.precision)
    }
}

impl fmt::Display for PAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `v_p(n)`, with `None` standing for infinity.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    valuation_int(n, p)
}

/// Valuations entering Newton's criterion at a starting point `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonCheck {
    pub converges: bool,
    /// `v_p(f(u))`; `None` when `u` is an exact root.
    pub v_f: Option<u32>,
    /// `v_p(f'(u))`; `None` when `f'(u) = 0`.
    pub v_df: Option<u32>,
}

impl NewtonCheck {
    pub fn is_exact_root(&self) -> bool {
        self.v_f.is_none()
    }
}

/// Newton's criterion `v_p(f(u)) > 2 v_p(f'(u))`.
pub fn newton_converges(f: &IntPoly, p: u64, u: &BigInt) -> Result<NewtonCheck> {
    if !is_prime(p) {
        return Err(ForgeError::NotPrime(p));
    }
    let v_f = valuation(&f.eval(u), p);
    let v_df = valuation(&f.derivative().eval(u), p);
    let converges = match (v_f, v_df) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => a > 2 * b,
    };
    Ok(NewtonCheck { converges, v_f, v_df })
}

/// Working precision used when a congruence mod `p^k` is demanded and
/// `v_p(f'(u)) = e`.
pub fn working_precision(k: u32, e: u32) -> u32 {
    (2 * k + 4).max(k + 2 * e + 2)
}

/// Lift `u` to a root of `f` modulo `p^k` by Newton iteration.
///
/// The result agrees with the true p-adic root to precision `k`, so lifts to
/// different precisions are compatible.
pub fn hensel_lift_root(f: &IntPoly, p: u64, u: &BigInt, k: u32) -> Result<PAdicInt> {
    let check = newton_converges(f, p, u)?;
    if !check.converges {
        return Err(ForgeError::Precondition(format!(
            "Newton criterion fails at u = {u}: v(f) = {:?}, v(f') = {:?}",
            check.v_f, check.v_df
        )));
    }
    if check.is_exact_root() {
        return Ok(PAdicInt::new(p, k, u));
    }
    let e = check.v_df.expect("nonzero derivative");
    let big_k = working_precision(k, e);
    let m = BigInt::from(p).pow(big_k);
    let pe = BigInt::from(p).pow(e);
    let df = f.derivative();
    let mut r = u.mod_floor(&m);
    for _ in 0..128 {
        let fr = f.eval(&r);
        match valuation(&fr, p) {
            None => break,
            Some(v) if v >= k + e => break,
            Some(_) => {}
        }
        let dfr = df.eval(&r);
        let unit = &dfr / &pe;
        let inv = unit.extended_gcd(&m).x;
        r = (&r - (&fr / &pe) * inv).mod_floor(&m);
    }
    let result = PAdicInt::new(p, k, &r);
    if valuation(&f.eval(&result.value), p).is_some_and(|v| v < k) {
        return Err(ForgeError::Precondition("Newton iteration did not converge".into()));
    }
    Ok(result)
}

/// Search for a Newton starting point: walks residues `u mod p^m` with
/// `v_p(f(u)) >= m`, shallowest level first and ascending within a level,
/// returning the first `u` that meets Newton's criterion. Levels go up to
/// `max_exponent`; at most `node_cap` residues are examined.
pub fn find_newton_witness(f: &IntPoly, p: u64, max_exponent: u32, node_cap: usize) -> Result<Option<(BigInt, NewtonCheck)>> {
    if !is_prime(p) {
        return Err(ForgeError::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let mut level: Vec<BigInt> = vec![BigInt::zero()];
    let mut modulus = BigInt::one();
    let mut visited = 0usize;
    for m in 1..=max_exponent {
        let mut next = Vec::new();
        for base in &level {
            for digit in 0..p {
                let u = base + &modulus * BigInt::from(digit);
                visited += 1;
                if visited > node_cap {
                    return Ok(None);
                }
                let check = newton_converges(f, p, &u)?;
                if check.converges {
                    return Ok(Some((u, check)));
                }
                if check.v_f.is_none_or(|v| v >= m) {
                    next.push(u);
                }
            }
        }
        next.sort();
        modulus *= &pb;
        level = next;
        if level.is_empty() {
            break;
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipoly;

    #[test]
    fn newton_examples() {
        let c = newton_converges(&ipoly(&[-2, 0, 1]), 7, &BigInt::from(3)).unwrap();
        assert_eq!(c, NewtonCheck { converges: true, v_f: Some(1), v_df: Some(0) });
        let c = newton_converges(&ipoly(&[0, 0, 1]), 5, &BigInt::from(5)).unwrap();
        assert_eq!(c, NewtonCheck { converges: false, v_f: Some(2), v_df: Some(1) });
        let c = newton_converges(&ipoly(&[-4, 0, 1]), 5, &BigInt::from(2)).unwrap();
        assert!(c.converges && c.is_exact_root());
        assert!(newton_converges(&ipoly(&[1]), 6, &BigInt::one()).is_err());
    }

    #[test]
    fn lift_sqrt_two_mod_seven() {
        let f = ipoly(&[-2, 0, 1]);
        let r = hensel_lift_root(&f, 7, &BigInt::from(3), 4).unwrap();
        let m = BigInt::from(7).pow(4);
        assert!(((&r.value * &r.value - BigInt::from(2)) % &m).is_zero());
        assert_eq!(&r.value % 7, BigInt::from(3));
        // brute-force oracle: exactly one root mod 7^4 reduces to 3 mod 7
        let roots: Vec<i64> = (0..2401).filter(|x| (x * x - 2) % 2401 == 0 && x % 7 == 3).collect();
        assert_eq!(roots.len(), 1);
        assert_eq!(r.value, BigInt::from(roots[0]));
    }

    #[test]
    fn lift_with_nonunit_derivative() {
        // x^2 + 7 over Q_2: v(f(1)) = 3 > 2 v(f'(1)) = 2.
        let f = ipoly(&[7, 0, 1]);
        let r = hensel_lift_root(&f, 2, &BigInt::one(), 10).unwrap();
        let r12 = hensel_lift_root(&f, 2, &BigInt::one(), 12).unwrap();
        assert_eq!(r12.truncate(10), r);
        assert!(valuation(&f.eval(&r.value), 2).unwrap() >= 10);
    }

    #[test]
    fn exact_root_is_stable() {
        let f = ipoly(&[-9, 0, 1]);
        for k in [2, 5, 9] {
            assert_eq!(hensel_lift_root(&f, 3, &BigInt::from(3), k).unwrap().value, BigInt::from(3));
        }
    }

    #[test]
    fn witness_search() {
        let (u, c) = find_newton_witness(&ipoly(&[-2, 0, 1]), 7, 3, 1000).unwrap().unwrap();
        assert_eq!(u, BigInt::from(3));
        assert!(c.converges);
        assert!(find_newton_witness(&ipoly(&[-3, 0, 1]), 7, 4, 1000).unwrap().is_none());
        // x^2 + 7 over Q_2 needs u = 1 mod 8 territory.
        let (u, _) = find_newton_witness(&ipoly(&[7, 0, 1]), 2, 5, 1000).unwrap().unwrap();
        assert!(newton_converges(&ipoly(&[7, 0, 1]), 2, &u).unwrap().converges);
    }

    #[test]
    fn padic_arithmetic_tracks_precision() {
        let a = PAdicInt::new(5, 4, &BigInt::from(50));
        let b = PAdicInt::new(5, 2, &BigInt::from(7));
        assert_eq!((&a + &b).precision, 2);
        assert_eq!(a.valuation(), 2);
        assert_eq!(a.div_p_power(2).unwrap(), PAdicInt::new(5, 2, &BigInt::from(2)));
        let inv = b.inverse().unwrap();
        assert_eq!((&inv * &b).value, BigInt::one());
        assert!(a.inverse().is_err());
    }
}
