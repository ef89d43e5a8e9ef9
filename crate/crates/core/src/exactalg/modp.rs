//! Polynomials over `F_p` and their factorization: squarefree decomposition,
//! distinct-degree factorization and Cantor-Zassenhaus equal-degree splitting.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::numtheory::{inv_mod, is_prime, mul_mod};
use crate::{ForgeError, IntPoly, Result};

/// Polynomial over `F_p`, constant term first, coefficients in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    /// Reduction of an integer polynomial.
    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64"))
                .collect(),
        )
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p).expect("p prime");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|k| (self.get(k) + o.get(k)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|k| (self.get(k) + self.p - o.get(k)) % self.p)
                .collect(),
        )
    }

    fn get(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(ForgeError::DivisionByZero)?;
        let p = self.p;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv = inv_mod(d.lc(), p).ok_or(ForgeError::NotInvertible)?;
        let mut r = self.coeffs.clone();
        let n = r.len() - 1;
        let mut q = vec![0u64; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            if c != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = (r[k + i] + p - mul_mod(c, dc, p)) % p;
                }
            }
            q[k] = c;
        }
        Ok((Self::new(p, q), Self::new(p, r)))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).expect("nonzero modulus").1
    }

    pub fn div(&self, d: &Self) -> Self {
        self.divrem(d).expect("nonzero divisor").0
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mul_mod(c, k as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Inverse of a `p`-th power `c(x^p)`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly(mod {}){:?}", self.p, self.coeffs)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_int())
    }
}

/// Squarefree decomposition of a monic polynomial over `F_p`.
pub fn squarefree_mod_p(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg0() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div(&w);
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root();
        for (g, m) in squarefree_mod_p(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.rem(&rest);
    let pe = BigUint::from(p);
    let mut d = 1;
    while rest.deg0() >= 2 * d {
        h = h.pow_mod(&pe, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg0() > 0 {
        let d = rest.deg0();
        out.push((rest, d));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = f.deg0();
    if n == d {
        out.push(f.clone());
        return;
    }
    let p = f.p;
    let exponent = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg0() == 0 {
            continue;
        }
        let b = if p == 2 {
            let mut term = a.rem(f);
            let mut trace = term.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(f);
                trace = trace.add(&term);
            }
            trace
        } else {
            a.pow_mod(&exponent, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        let k = g.deg0();
        if k > 0 && k < n {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div(&g), d, rng, out);
            return;
        }
    }
}

fn rng_for(seed: u64, p: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Complete factorization modulo `p` into monic irreducibles with
/// multiplicities, sorted by degree then coefficients.
pub fn factor_mod_p_seeded(f: &IntPoly, p: u64, seed: u64) -> Result<Vec<(FpPoly, u32)>> {
    if !is_prime(p) {
        return Err(ForgeError::NotPrime(p));
    }
    let fp = FpPoly::from_int(f, p);
    if fp.is_zero() {
        return Err(ForgeError::ZeroModP(p));
    }
    let mut rng = rng_for(seed, p);
    let mut out = Vec::new();
    for (g, m) in squarefree_mod_p(&fp.monic()) {
        for (h, d) in distinct_degree(&g) {
            let mut parts = Vec::new();
            equal_degree(&h, d, &mut rng, &mut parts);
            out.extend(parts.into_iter().map(|q| (q, m)));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.deg0().cmp(&b.deg0()).then_with(|| a.coeffs.cmp(&b.coeffs)));
    Ok(out)
}

/// [`factor_mod_p_seeded`] with the default seed.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<Vec<(FpPoly, u32)>> {
    factor_mod_p_seeded(f, p, crate::DEFAULT_SEED)
}

/// Sorted degrees of the irreducible factors of `f mod p`, or `None` when
/// `f mod p` is not squarefree of full degree.
pub fn degree_pattern(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let fp = FpPoly::from_int(f, p);
    if fp.degree() != f.degree() || fp.deg0() == 0 {
        return None;
    }
    let fp = fp.monic();
    if !fp.gcd(&fp.derivative()).is_one() {
        return None;
    }
    let mut pattern = Vec::new();
    for (g, d) in distinct_degree(&fp) {
        pattern.extend(std::iter::repeat(d).take(g.deg0() / d));
    }
    pattern.sort_unstable();
    Some(pattern)
}

/// Irreducibility over `F_p` for a polynomial of unchanged degree mod `p`.
pub fn is_irreducible_mod_p(f: &IntPoly, p: u64) -> bool {
    f.degree().is_some_and(|n| degree_pattern(f, p) == Some(vec![n]))
}

/// Product of the factors, times the leading coefficient.
pub fn expand_factors(factors: &[(FpPoly, u32)], p: u64) -> FpPoly {
    factors.iter().fold(FpPoly::one(p), |acc, (g, m)| {
        (0..*m).fold(acc, |a, _| a.mul(g))
    })
}

/// Build from signed machine integers.
pub fn fp_from_i64(p: u64, coeffs: &[i64]) -> FpPoly {
    FpPoly::new(
        p,
        coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipoly;

    #[test]
    fn x_squared_minus_one_mod_two() {
        let fs = factor_mod_p(&ipoly(&[-1, 0, 1]), 2).unwrap();
        assert_eq!(fs, vec![(fp_from_i64(2, &[1, 1]), 2)]);
    }

    #[test]
    fn rejects_composite_and_vanishing() {
        assert!(matches!(factor_mod_p(&ipoly(&[1, 1]), 4), Err(ForgeError::NotPrime(4))));
        assert!(matches!(factor_mod_p(&ipoly(&[3, 3]), 3), Err(ForgeError::ZeroModP(3))));
    }

    #[test]
    fn splits_cyclotomic_mod_eleven() {
        // Phi_5 splits completely mod 11.
        let f = ipoly(&[1, 1, 1, 1, 1]);
        let fs = factor_mod_p(&f, 11).unwrap();
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(expand_factors(&fs, 11), FpPoly::from_int(&f, 11));
        assert_eq!(degree_pattern(&f, 2), Some(vec![4]));
        assert_eq!(degree_pattern(&f, 19), Some(vec![2, 2]));
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        // (x^3 + 2)^3 (x + 1)^2 mod 3, where x^3 + 2 = (x + 2)^3 in char 3.
        let a = ipoly(&[2, 0, 0, 1]);
        let f = &a.pow(3) * &ipoly(&[1, 1]).pow(2);
        let fs = factor_mod_p(&f, 3).unwrap();
        assert_eq!(fs, vec![(fp_from_i64(3, &[1, 1]), 2), (fp_from_i64(3, &[2, 1]), 9)]);
        let g = &ipoly(&[1, 1, 0, 1]).pow(2) * &ipoly(&[1, 0, 1]);
        let fs = factor_mod_p(&g, 2).unwrap();
        assert_eq!(expand_factors(&fs, 2), FpPoly::from_int(&g, 2));
    }

    #[test]
    fn seed_changes_nothing_in_result() {
        let f = ipoly(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let a = factor_mod_p_seeded(&f, 17, 0).unwrap();
        let b = factor_mod_p_seeded(&f, 17, 12345).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
    }

    #[test]
    fn characteristic_two_equal_degree() {
        // x^15 - 1 over F_2: 1 + 1 + 2 + 4 + 4 + 4 (degrees)
        let f = ipoly(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let fs = factor_mod_p(&f, 2).unwrap();
        let degs: Vec<_> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
        assert_eq!(expand_factors(&fs, 2), FpPoly::from_int(&f, 2));
    }
}
