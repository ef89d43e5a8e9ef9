//! Dense univariate polynomials over a generic coefficient ring.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

use crate::{ForgeError, Result};

/// Commutative ring with the operations the polynomial code needs.
///
/// Blanket-implemented for every type with the listed `num-traits` and
/// operator bounds, so `BigInt`, `BigRational`, `f64`, `f32` and `Poly<T>`
/// itself all qualify.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + FromPrimitive
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = T> + Sub<Output = T> + FromPrimitive
{
}

/// Integral domain with exact division.
pub trait Domain: Ring {
    /// `Some(q)` with `q * d == self` when the quotient exists in the ring.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

/// Field: every nonzero element is invertible.
pub trait Field: Domain + Div<Output = Self> {}
impl<T: Domain + Div<Output = T>> Field for T {}

impl Domain for BigInt {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, d);
        r.is_zero().then_some(q)
    }
}

impl Domain for BigRational {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }
}

impl Domain for f64 {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (*d != 0.0).then(|| self / d)
    }
}

impl Domain for f32 {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (*d != 0.0).then(|| self / d)
    }
}

/// Polynomial with coefficients stored constant term first.
///
/// The zero polynomial is the empty vector; otherwise the last coefficient is
/// nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![T::zero(), T::one()] }
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Monic linear polynomial `x - root`.
    pub fn linear_root(root: T) -> Self {
        Poly { coeffs: vec![-root, T::one()] }.normalized()
    }

    fn normalized(self) -> Self {
        Self::new(self.coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_usize(k).expect("degree fits the ring"))
                .collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficient-wise map into another ring.
    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Substitute `x -> -x`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }
}

impl<T: Domain> Poly<T> {
    /// Pseudo-division: returns `(q, r)` with `lc(d)^(deg self - deg d + 1) * self = q d + r`.
    pub fn pseudo_divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(ForgeError::DivisionByZero)?;
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lc = d.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = r[k + dd].clone();
            for c in q.iter_mut() {
                *c = c.clone() * lc.clone();
            }
            q[k] = q[k].clone() + top.clone();
            for c in r.iter_mut().take(k + dd) {
                *c = c.clone() * lc.clone();
            }
            for (i, dc) in d.coeffs.iter().enumerate().take(dd) {
                r[k + i] = r[k + i].clone() - top.clone() * dc.clone();
            }
            r[k + dd] = T::zero();
        }
        Ok((Self::new(q), Self::new(r)))
    }

    /// Exact quotient, or `None` when `d` does not divide `self` in `T[x]`.
    pub fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let Some(n) = self.degree() else {
            return Some(Self::zero());
        };
        if n < dd {
            return None;
        }
        let lc = d.lc().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = r[k + dd].div_exact(lc)?;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        r.iter().all(|c| c.is_zero()).then(|| Self::new(q))
    }

    /// Pseudo-remainder only.
    pub fn prem(&self, d: &Self) -> Result<Self> {
        Ok(self.pseudo_divrem(d)?.1)
    }

    /// Resultant `lc(f)^deg g * prod g(alpha)` over the roots `alpha` of `f`,
    /// by the subresultant remainder sequence.
    pub fn resultant(&self, g: &Self) -> T {
        subresultant(self, g)
    }

    /// `(-1)^(n(n-1)/2) res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<T> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(ForgeError::DegreeTooSmall { min: 1 }),
        };
        let r = subresultant(self, &self.derivative());
        let q = r
            .div_exact(self.lc().unwrap())
            .ok_or_else(|| ForgeError::Precondition("resultant not divisible by leading coefficient".into()))?;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
    }
}

/// Collins/Brown subresultant algorithm for the resultant over an integral domain.
fn subresultant<T: Domain>(a: &Poly<T>, b: &Poly<T>) -> T {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return T::zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign_negative = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = true;
        }
    }
    if b.deg() == 0 {
        // res(a, c) = c^deg(a), and the sign flip needs both degrees odd
        return pow_ring(b.lc().unwrap(), a.deg() as u32);
    }
    let mut g = T::one();
    let mut h = T::one();
    loop {
        let (da, db) = (a.deg() as usize, b.deg() as usize);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let r = a.prem(&b).expect("b nonzero");
        a = b;
        let divisor = g.clone() * pow_ring(&h, delta as u32);
        b = Poly::new(
            r.coeffs
                .iter()
                .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
                .collect(),
        );
        g = a.lc().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            pow_ring(&g, delta as u32)
                .div_exact(&pow_ring(&h, delta as u32 - 1))
                .expect("subresultant division is exact")
        };
        match b.degree() {
            None => return T::zero(),
            Some(0) => {
                let dega = a.deg() as u32;
                let num = pow_ring(b.lc().unwrap(), dega);
                let res = if dega == 0 {
                    num * h
                } else {
                    num.div_exact(&pow_ring(&h, dega - 1)).expect("subresultant division is exact")
                };
                return if sign_negative { -res } else { res };
            }
            Some(_) => {}
        }
    }
}

pub(crate) fn pow_ring<T: Ring>(x: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

impl<T: Field> Poly<T> {
    /// Euclidean division over a field.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(ForgeError::DivisionByZero)?;
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = T::one() / d.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = r[k + dd].clone() * inv.clone();
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].clone() - c.clone() * dc.clone();
                }
            }
            r[k + dd] = T::zero();
            q[k] = c;
        }
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = T::one() / lc;
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }
}

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }
}

impl<T: Ring> FromPrimitive for Poly<T> {
    fn from_i64(n: i64) -> Option<Self> {
        T::from_i64(n).map(Self::constant)
    }
    fn from_u64(n: u64) -> Option<Self> {
        T::from_u64(n).map(Self::constant)
    }
}

impl<T: Domain> Domain for Poly<T> {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_exact_poly(d)
    }
}

impl<'a, T: Ring> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, T: Ring> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, T: Ring> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Ring> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Ring> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Ring> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Joins per-degree coefficient strings into `c_n var^n + ... + c_0`.
fn format_terms(coeffs: &[String], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let mut cs = c.clone();
        let compound = cs.contains('+') || cs.get(1..).is_some_and(|r| r.contains('-'));
        let negative = !compound && cs.starts_with('-');
        if negative {
            cs.remove(0);
        }
        if compound {
            cs = format!("({cs})");
        }
        let body = match k {
            0 => cs,
            _ => {
                let coef = if cs == "1" { String::new() } else { cs };
                let power = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                format!("{coef}{power}")
            }
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<T: Ring + fmt::Display> Poly<T> {
    /// Human readable form in the given variable, highest degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format_terms(&cs, var)
    }
}

impl<T: Ring + fmt::Display> Poly<Poly<T>> {
    /// Bivariate form, e.g. `x^2 + (t + 1)x - 3t`.
    pub fn to_string_bi(&self, outer: &str, inner: &str) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string_in(inner)).collect();
        format_terms(&cs, outer)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ipoly, IntPoly, RatPoly};

    #[test]
    fn difference_of_squares() {
        assert_eq!(&ipoly(&[1, 1]) * &ipoly(&[-1, 1]), ipoly(&[-1, 0, 1]));
    }

    #[test]
    fn compose_iterates_chebyshev_square() {
        let f = ipoly(&[-2, 0, 1]);
        assert_eq!(f.compose(&f), ipoly(&[2, 0, -4, 0, 1]));
    }

    #[test]
    fn eval_constant_term() {
        let f = ipoly(&[20, 50, 0, -35, 0, 1]);
        assert_eq!(f.eval(&BigInt::zero()), BigInt::from(20));
    }

    #[test]
    fn normalization_and_degree() {
        let f = ipoly(&[1, 2, 0, 0]);
        assert_eq!(f.degree(), Some(1));
        assert!(ipoly(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().deg(), -1);
    }

    #[test]
    fn divrem_over_rationals_and_zero_divisor() {
        let f: RatPoly = ipoly(&[-1, 0, 0, 1]).map(|c| BigRational::from_integer(c.clone()));
        let d: RatPoly = ipoly(&[-1, 1]).map(|c| BigRational::from_integer(c.clone()));
        let (q, r) = f.divrem(&d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, ipoly(&[1, 1, 1]).map(|c| BigRational::from_integer(c.clone())));
        assert!(matches!(f.divrem(&RatPoly::zero()), Err(ForgeError::DivisionByZero)));
    }

    #[test]
    fn exact_and_pseudo_division_over_z() {
        let f = ipoly(&[-4, 0, 1]);
        assert_eq!(f.div_exact_poly(&ipoly(&[2, 1])), Some(ipoly(&[-2, 1])));
        assert_eq!(f.div_exact_poly(&ipoly(&[1, 2])), None);
        let (q, r) = f.pseudo_divrem(&ipoly(&[1, 2])).unwrap();
        // 4 (x^2 - 4) = (2x - 1)(2x + 1) - 15
        assert_eq!(&(&q * &ipoly(&[1, 2])) + &r, f.scale(&BigInt::from(4)));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(ipoly(&[-2, 1]).resultant(&ipoly(&[-3, 1])), BigInt::from(-1));
        assert_eq!(ipoly(&[1, 0, 1]).resultant(&ipoly(&[-1, 0, 1])), BigInt::from(4));
        let f = ipoly(&[1, -3, 1]);
        assert_eq!(f.resultant(&f.derivative()), BigInt::from(-5));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(ipoly(&[1, -3, 1]).discriminant().unwrap(), BigInt::from(5));
        assert_eq!(ipoly(&[-1, -2, -1, 1, 1, 1]).discriminant().unwrap(), BigInt::from(2209));
        assert!(ipoly(&[3]).discriminant().is_err());
    }

    #[test]
    fn float_polys_share_the_generic_code() {
        let f: Poly<f64> = Poly::new(vec![-2.0, 0.0, 1.0]);
        assert_eq!(f.eval(&3.0), 7.0);
        assert_eq!(f.derivative(), Poly::new(vec![0.0, 2.0]));
        let g: Poly<f32> = Poly::new(vec![1.0, 1.0]);
        assert_eq!((&g * &g).coeffs(), &[1.0, 2.0, 1.0]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(ipoly(&[1, 47, 519, -47, 1]).to_string(), "x^4 - 47x^3 + 519x^2 + 47x + 1");
        let bi = crate::bipoly(&[&[-16, 1, -1], &[-15], &[0, -5], &[10], &[], &[1]]);
        assert_eq!(bi.to_string_bi("x", "t"), "x^5 + 10x^3 - 5tx^2 - 15x + (-t^2 + t - 16)");
    }

    #[test]
    fn ext_gcd_bezout_identity() {
        let to_q = |p: &IntPoly| p.map(|c| BigRational::from_integer(c.clone()));
        let a = to_q(&ipoly(&[-1, 0, 1]));
        let b = to_q(&ipoly(&[1, 1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
