//! The cyclotomic field `Q(zeta_n)`: exact arithmetic modulo `Phi_n`, the
//! Galois action, normal bases, and certified complex embeddings.

mod complex;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use complex::{root_of_unity, ComplexApprox, DEFAULT_PRECISION, MAX_PRECISION};

use crate::exactalg::intpoly::to_rat;
use crate::exactalg::numtheory::{gcd_u64, units_mod};
use crate::exactalg::serial::JsonCoeff;
use crate::{ForgeError, IntPoly, Poly, RatPoly, Result};

/// `Phi_n`, by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    let mut num = IntPoly::monomial(BigInt::one(), n as usize) - IntPoly::one();
    for d in 1..n {
        if n % d == 0 {
            num = num.div_exact_poly(&cyclotomic_poly(d)).expect("Phi_d divides x^n - 1");
        }
    }
    num
}

/// Defining data shared by all elements of one cyclotomic field.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    n: u64,
    modulus: RatPoly,
}

impl CyclotomicField {
    pub fn new(n: u64) -> Arc<Self> {
        Arc::new(CyclotomicField { n, modulus: to_rat(&cyclotomic_poly(n)) })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `phi(n)`.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }
}

/// Element of `Q(zeta_n)` in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.
#[derive(Clone)]
pub struct CycloElt {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycloElt {
    fn eq(&self, o: &Self) -> bool {
        self.field.n == o.field.n && self.coeffs == o.coeffs
    }
}

impl Eq for CycloElt {}

impl CycloElt {
    /// Reduce an arbitrary polynomial in `zeta` modulo `Phi_n`.
    pub fn from_poly(field: &Arc<CyclotomicField>, f: &RatPoly) -> Self {
        let r = f.rem(&field.modulus).expect("Phi_n is nonzero");
        let mut coeffs = r.into_coeffs();
        coeffs.resize(field.degree(), BigRational::zero());
        CycloElt { field: field.clone(), coeffs }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        Self::from_poly(field, &RatPoly::constant(q))
    }

    pub fn from_int(field: &Arc<CyclotomicField>, k: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(k.into()))
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_poly(field, &RatPoly::zero())
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_int(field, 1)
    }

    /// `zeta^k`; negative exponents wrap modulo `n`.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.n as i64) as usize;
        Self::from_poly(field, &RatPoly::monomial(BigRational::one(), e))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.field.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> RatPoly {
        Poly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.field.n, o.field.n, "elements of different cyclotomic fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        CycloElt {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        CycloElt {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloElt { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloElt { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        Self::from_poly(&self.field, &(&self.to_poly() * &o.to_poly()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse, checked by multiplying back.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(ForgeError::NotInvertible);
        }
        let (g, s, _) = self.to_poly().ext_gcd(&self.field.modulus);
        if !g.is_one() {
            return Err(ForgeError::NotInvertible);
        }
        let inv = Self::from_poly(&self.field, &s);
        debug_assert!(inv.mul(self) == Self::one(&self.field));
        Ok(inv)
    }

    /// The automorphism `sigma_k: zeta -> zeta^k`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.field.n;
        let kk = k.rem_euclid(n as i64) as u64;
        if gcd_u64(kk, n) != 1 && n > 1 {
            return Err(ForgeError::NotCoprime { k: kk, n });
        }
        let mut out = vec![BigRational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = (j as u64 * kk % n) as usize;
            out[e] += c;
        }
        Ok(Self::from_poly(&self.field, &Poly::new(out)))
    }

    /// Trace to `Q`: the sum of all conjugates.
    pub fn trace(&self) -> BigRational {
        units_mod(self.field.n)
            .into_iter()
            .map(|k| self.galois(k as i64).expect("unit").coeffs[0].clone())
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Value at the principal embedding `zeta = exp(2 pi i / n)`.
    pub fn embed(&self, prec: u32) -> ComplexApprox {
        complex_embed(self, prec)
    }
}

impl fmt::Debug for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElt(n={}, {})", self.field.n, self)
    }
}

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().to_string_in("z"))
    }
}

#[derive(Serialize, Deserialize)]
struct CycloEltJson {
    n: u64,
    coefficients: Vec<String>,
}

impl Serialize for CycloElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloEltJson {
            n: self.field.n,
            coefficients: self.coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = CycloEltJson::deserialize(d)?;
        if raw.n == 0 {
            return Err(D::Error::custom("n must be positive"));
        }
        let coeffs = raw
            .coefficients
            .iter()
            .map(|s| BigRational::from_json(&serde_json::Value::String(s.clone())))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(CycloElt::from_poly(&CyclotomicField::new(raw.n), &Poly::new(coeffs)))
    }
}

/// Evaluate at `zeta = exp(2 pi i / n)` with a certified error radius.
pub fn complex_embed(e: &CycloElt, prec: u32) -> ComplexApprox {
    let n = e.field.n;
    let mut acc = ComplexApprox::zero(prec);
    for (k, c) in e.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = root_of_unity(n, k as u64, prec).mul(&ComplexApprox::from_rational(c, prec));
        acc = acc.add(&term);
    }
    acc
}

/// Conjugates `omega_k = sigma_k(omega_1)` for `k` in `I_n` (ascending),
/// forming a basis of `Q(zeta_n)` over `Q`.
#[derive(Clone, Debug)]
pub struct NormalBasis {
    units: Vec<u64>,
    omega: Vec<CycloElt>,
}

impl NormalBasis {
    /// Conjugates of `generator`; fails when they are linearly dependent.
    pub fn from_generator(generator: &CycloElt) -> Result<Self> {
        let n = generator.n();
        let units = units_mod(n);
        let omega: Vec<CycloElt> = units
            .iter()
            .map(|&k| generator.galois(k as i64))
            .collect::<Result<_>>()?;
        let rows: Vec<Vec<BigRational>> = omega.iter().map(|w| w.coeffs.clone()).collect();
        if determinant(rows).is_zero() {
            return Err(ForgeError::SingularBasis);
        }
        Ok(NormalBasis { units, omega })
    }

    /// `omega_i = zeta^i` when `n` is squarefree; otherwise the first
    /// element `c + zeta + zeta^2 + ...` (small integer shifts) whose
    /// conjugates are independent.
    pub fn default_for(n: u64) -> Result<Self> {
        let field = CyclotomicField::new(n);
        let zeta = CycloElt::zeta_pow(&field, 1);
        if let Ok(b) = Self::from_generator(&zeta) {
            return Ok(b);
        }
        let mut candidate = zeta.clone();
        for extra in 2..=field.degree() as i64 + 1 {
            for shift in 0..4 {
                let g = candidate.add(&CycloElt::from_int(&field, shift));
                if let Ok(b) = Self::from_generator(&g) {
                    return Ok(b);
                }
            }
            candidate = candidate.add(&CycloElt::zeta_pow(&field, extra));
        }
        Err(ForgeError::SingularBasis)
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn elements(&self) -> &[CycloElt] {
        &self.omega
    }

    /// `omega_m` for a unit `m` (taken modulo `n`).
    pub fn omega(&self, m: u64) -> &CycloElt {
        let n = self.omega[0].n();
        let idx = self.units.binary_search(&(m % n)).expect("index is a unit mod n");
        &self.omega[idx]
    }
}

/// `b_j = sum_i a_i omega_<ij>` for `j` in `I_n`, with `a` indexed by `I_n` ascending.
pub fn normal_basis_expand(basis: &NormalBasis, a: &[BigRational]) -> Result<Vec<CycloElt>> {
    let units = basis.units();
    if a.len() != units.len() {
        return Err(ForgeError::Precondition(format!(
            "expected {} coefficients indexed by I_n, got {}",
            units.len(),
            a.len()
        )));
    }
    let field = basis.omega[0].field().clone();
    let n = field.n();
    Ok(units
        .iter()
        .map(|&j| {
            units.iter().zip(a).fold(CycloElt::zero(&field), |acc, (&i, ai)| {
                acc.add(&basis.omega(i * j % n).scale(ai))
            })
        })
        .collect())
}

/// Determinant by Gaussian elimination over `Q`.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = &m[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = &m[col][c] * &factor;
                m[r][c] -= v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipoly;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), ipoly(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), ipoly(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(5), ipoly(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(12), ipoly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn field_arithmetic_n5() {
        let f = CyclotomicField::new(5);
        let z = CycloElt::zeta_pow(&f, 1);
        assert_eq!(z.galois(2).unwrap(), CycloElt::zeta_pow(&f, 2));
        let a = CycloElt::one(&f).add(&z);
        let b = CycloElt::one(&f).add(&CycloElt::zeta_pow(&f, 4));
        let expect = CycloElt::from_int(&f, 2).add(&z).add(&CycloElt::zeta_pow(&f, 4));
        assert_eq!(a.mul(&b), expect);
        assert_eq!(z.inverse().unwrap(), CycloElt::zeta_pow(&f, 4));
        assert!(CycloElt::zero(&f).inverse().is_err());
        assert!(matches!(z.galois(5), Err(ForgeError::NotCoprime { .. })));
        assert_eq!(z.trace(), q(-1));
    }

    #[test]
    fn normal_basis_prime_and_composite() {
        let b = NormalBasis::default_for(5).unwrap();
        let f = b.elements()[0].field().clone();
        let e = normal_basis_expand(&b, &[q(1), q(0), q(0), q(0)]).unwrap();
        for (idx, &j) in b.units().iter().enumerate() {
            assert_eq!(e[idx], CycloElt::zeta_pow(&f, j as i64));
        }
        let e = normal_basis_expand(&b, &[q(1), q(1), q(1), q(1)]).unwrap();
        assert!(e.iter().all(|x| x.as_rational() == Some(q(-1))));
        for n in [4, 8, 9, 12] {
            assert!(NormalBasis::default_for(n).is_ok(), "n = {n}");
        }
        let f4 = CyclotomicField::new(4);
        assert!(matches!(
            NormalBasis::from_generator(&CycloElt::zeta_pow(&f4, 1)),
            Err(ForgeError::SingularBasis)
        ));
    }

    #[test]
    fn embedding_examples() {
        let f4 = CyclotomicField::new(4);
        let i = complex_embed(&CycloElt::zeta_pow(&f4, 1), 128);
        let (re, im) = i.to_f64();
        assert!(re.abs() < 1e-30 && (im - 1.0).abs() < 1e-30);
        assert!(i.radius_abs() < 2f64.powi(-120));
        let f5 = CyclotomicField::new(5);
        let g = CycloElt::zeta_pow(&f5, 1).add(&CycloElt::zeta_pow(&f5, 4));
        let (re, im) = complex_embed(&g, 256).to_f64();
        assert!((re - 0.618_033_988_749_894_9).abs() < 1e-15 && im.abs() < 1e-30);
        let s = (0..5).fold(CycloElt::zero(&f5), |a, k| a.add(&CycloElt::zeta_pow(&f5, k)));
        assert!(s.is_zero());
        assert!(complex_embed(&s, 256).contains_zero());
    }

    #[test]
    fn json_roundtrip() {
        let f = CyclotomicField::new(7);
        let a = CycloElt::zeta_pow(&f, 3).scale(&BigRational::new(2.into(), 3.into()));
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"2/3\""));
        assert_eq!(serde_json::from_str::<CycloElt>(&s).unwrap(), a);
    }
}
