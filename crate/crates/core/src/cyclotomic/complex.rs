//! Complex ball arithmetic on fixed-point big integers.
//!
//! A value is `(re + i im) / 2^prec` with an error radius measured in units
//! of `2^-prec` (ulps). Every operation widens the radius enough to contain
//! the exact result.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::{ForgeError, Result};

/// Working precision used unless a caller asks for more.
pub const DEFAULT_PRECISION: u32 = 256;
/// Precision escalation stops here.
pub const MAX_PRECISION: u32 = 1024;
const MIN_PRECISION: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexApprox {
    re: BigInt,
    im: BigInt,
    prec: u32,
    rad: f64,
}

/// `x / 2^prec` as `f64`.
fn fixed_to_f64(x: &BigInt, prec: u32) -> f64 {
    let s = prec.saturating_sub(60);
    let head = (x >> s).to_f64().unwrap_or(f64::INFINITY);
    head * 2f64.powi(-((prec - s) as i32))
}

fn f64_to_fixed(x: f64, prec: u32) -> BigInt {
    let scaled = BigInt::from_f64(x * 2f64.powi(60)).unwrap_or_default();
    if prec >= 60 {
        scaled << (prec - 60)
    } else {
        scaled >> (60 - prec)
    }
}

impl ComplexApprox {
    fn raw(re: BigInt, im: BigInt, prec: u32, rad: f64) -> Self {
        ComplexApprox { re, im, prec, rad }
    }

    pub fn zero(prec: u32) -> Self {
        Self::raw(BigInt::zero(), BigInt::zero(), prec.max(MIN_PRECISION), 0.0)
    }

    pub fn from_int(k: &BigInt, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        Self::raw(k << prec, BigInt::zero(), prec, 0.0)
    }

    /// Rational value, rounded to within one ulp.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let re = (q.numer() << prec) / q.denom();
        let rad = if q.denom() == &BigInt::from(1) { 0.0 } else { 1.0 };
        Self::raw(re, BigInt::zero(), prec, rad)
    }

    /// `sqrt(d)`, imaginary for negative `d`.
    pub fn sqrt_int(d: &BigInt, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let s = (d.abs() << (2 * prec)).sqrt();
        if d.is_negative() {
            Self::raw(BigInt::zero(), s, prec, 1.0)
        } else {
            Self::raw(s, BigInt::zero(), prec, 1.0)
        }
    }

    pub fn from_f64_exact(re: f64, im: f64, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        Self::raw(f64_to_fixed(re, prec), f64_to_fixed(im, prec), prec, 0.0)
    }

    /// Enlarge the radius by an absolute amount.
    pub fn widen(&self, err: &BigRational) -> Self {
        let ulps = (err * BigRational::from_integer(BigInt::from(1) << self.prec)).ceil().to_integer();
        let extra = ulps.to_f64().unwrap_or(f64::INFINITY);
        Self::raw(self.re.clone(), self.im.clone(), self.prec, self.rad + extra)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Error radius in ulps.
    pub fn radius_ulps(&self) -> f64 {
        self.rad
    }

    /// Error radius as an absolute magnitude.
    pub fn radius_abs(&self) -> f64 {
        self.rad * 2f64.powi(-(self.prec as i32))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (fixed_to_f64(&self.re, self.prec), fixed_to_f64(&self.im, self.prec))
    }

    /// Upper bound for `|z|` over the ball.
    pub fn abs_upper(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b) * (1.0 + 1e-12) + self.radius_abs() + 2f64.powi(-(self.prec as i32))
    }

    /// Lower bound for `|z|` over the ball (may be zero).
    pub fn abs_lower(&self) -> f64 {
        let (a, b) = self.to_f64();
        (a.hypot(b) * (1.0 - 1e-12) - self.radius_abs() - 2f64.powi(-(self.prec as i32))).max(0.0)
    }

    fn same_prec(&self, o: &Self) {
        assert_eq!(self.prec, o.prec, "mixed precisions");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_prec(o);
        Self::raw(&self.re + &o.re, &self.im + &o.im, self.prec, self.rad + o.rad)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_prec(o);
        Self::raw(&self.re - &o.re, &self.im - &o.im, self.prec, self.rad + o.rad)
    }

    pub fn neg(&self) -> Self {
        Self::raw(-&self.re, -&self.im, self.prec, self.rad)
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.re.clone(), -&self.im, self.prec, self.rad)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_prec(o);
        let p = self.prec;
        let re = (&self.re * &o.re - &self.im * &o.im) >> p;
        let im = (&self.re * &o.im + &self.im * &o.re) >> p;
        let rad = if self.rad == 0.0 && o.rad == 0.0 {
            2.0
        } else {
            self.abs_upper() * o.rad + o.abs_upper() * self.rad + self.rad * o.rad * 2f64.powi(-(p as i32)) + 2.0
        };
        Self::raw(re, im, p, rad)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Self::raw(&self.re * k, &self.im * k, self.prec, self.rad * k.unsigned_abs() as f64)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(&BigInt::from(1), self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `true` when `0` lies in the ball.
    pub fn contains_zero(&self) -> bool {
        let r = BigInt::from_f64(self.rad.ceil()).unwrap_or_default() + 1;
        &self.re * &self.re + &self.im * &self.im <= &r * &r
    }

    /// `true` when the two balls overlap.
    pub fn overlaps(&self, o: &Self) -> bool {
        self.same_prec(o);
        let d = self.sub(o);
        d.contains_zero()
    }

    /// The unique integer within the ball, when the ball is real-compatible
    /// and narrower than a quarter on each side of that integer.
    pub fn round_to_integer(&self) -> Option<BigInt> {
        if self.rad >= 2f64.powi(self.prec as i32 - 2) {
            return None;
        }
        let rad = BigInt::from_f64(self.rad.ceil())? + 1;
        if self.im.abs() > rad {
            return None;
        }
        let half = BigInt::from(1) << (self.prec - 1);
        let k = (&self.re + &half) >> self.prec;
        let dist = (&self.re - (&k << self.prec)).abs();
        (dist + rad < half).then_some(k)
    }

    /// Principal `n`-th root (argument in `(-pi/n, pi/n]`), certified by a
    /// residual bound after Newton refinement.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if n == 1 {
            return Ok(self.clone());
        }
        if self.contains_zero() {
            return Err(ForgeError::Precondition("n-th root of a ball containing zero".into()));
        }
        let (a, b) = self.to_f64();
        let r = a.hypot(b).powf(1.0 / n as f64);
        let theta = b.atan2(a) / n as f64;
        let start = (r * theta.cos(), r * theta.sin());
        newton_root(self, n, start)
    }
}

/// Fixed-point helpers on ball centers only, used inside Newton iterations.
fn cmul(a: &(BigInt, BigInt), b: &(BigInt, BigInt), p: u32) -> (BigInt, BigInt) {
    (
        (&a.0 * &b.0 - &a.1 * &b.1) >> p,
        (&a.0 * &b.1 + &a.1 * &b.0) >> p,
    )
}

fn cdiv(a: &(BigInt, BigInt), b: &(BigInt, BigInt), p: u32) -> (BigInt, BigInt) {
    let den = &b.0 * &b.0 + &b.1 * &b.1;
    (
        ((&a.0 * &b.0 + &a.1 * &b.1) << p) / &den,
        ((&a.1 * &b.0 - &a.0 * &b.1) << p) / &den,
    )
}

fn cpow(a: &(BigInt, BigInt), e: u32, p: u32) -> (BigInt, BigInt) {
    let mut acc = (BigInt::from(1) << p, BigInt::zero());
    for _ in 0..e {
        acc = cmul(&acc, a, p);
    }
    acc
}

/// Solve `z^n = w` near `start` and attach a certified radius.
fn newton_root(w: &ComplexApprox, n: u32, start: (f64, f64)) -> Result<ComplexApprox> {
    let prec = w.prec;
    let guard = prec + 32;
    let wc = (&w.re << 32u32, &w.im << 32u32);
    let mut z = (f64_to_fixed(start.0, guard), f64_to_fixed(start.1, guard));
    let tol = BigInt::from(1u64 << 40);
    for _ in 0..64 {
        let zn1 = cpow(&z, n - 1, guard);
        let zn = cmul(&zn1, &z, guard);
        let f = (&zn.0 - &wc.0, &zn.1 - &wc.1);
        let df = (&zn1.0 * n, &zn1.1 * n);
        let step = cdiv(&f, &df, guard);
        z = (&z.0 - &step.0, &z.1 - &step.1);
        if step.0.abs() < tol && step.1.abs() < tol {
            break;
        }
    }
    let center = ComplexApprox::raw(z.0 >> 32u32, z.1 >> 32u32, prec, 0.0);
    certify_root(w, n, center)
}

/// For `z^n - w` some root lies within `n |f(z)| / |f'(z)| = |f(z)| / |z|^(n-1)`;
/// it is the intended one when that radius is far below the root spacing.
fn certify_root(w: &ComplexApprox, n: u32, center: ComplexApprox) -> Result<ComplexApprox> {
    let residual = center.pow(n).sub(w);
    let rho_ulps = residual.re.to_f64().unwrap_or(f64::INFINITY).hypot(residual.im.to_f64().unwrap_or(f64::INFINITY))
        + residual.rad;
    let zl = center.abs_lower();
    let bound = rho_ulps / zl.powi(n as i32 - 1) * 1.000_001 + 1.0;
    let spacing = zl * (PI / n as f64).sin();
    let out = ComplexApprox { rad: bound, ..center };
    if !(out.radius_abs() < 0.25 * spacing) {
        return Err(ForgeError::Precondition(format!(
            "root isolation failed at {} bits",
            out.prec
        )));
    }
    Ok(out)
}

/// `exp(2 pi i k / n)`; exact for the four axis points.
pub fn root_of_unity(n: u64, k: u64, prec: u32) -> ComplexApprox {
    let prec = prec.max(MIN_PRECISION);
    let k = k % n;
    let one = BigInt::from(1) << prec;
    if (4 * k) % n == 0 {
        let quarter = 4 * k / n;
        let (re, im) = match quarter {
            0 => (one, BigInt::zero()),
            1 => (BigInt::zero(), one),
            2 => (-one, BigInt::zero()),
            _ => (BigInt::zero(), -one),
        };
        return ComplexApprox::raw(re, im, prec, 0.0);
    }
    let theta = 2.0 * PI * k as f64 / n as f64;
    let w = ComplexApprox::from_int(&BigInt::from(1), prec);
    newton_root(&w, n as u32, (theta.cos(), theta.sin())).expect("roots of unity are well separated")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_multiply_back() {
        for n in [3u64, 5, 7, 9, 12] {
            let z = root_of_unity(n, 1, 200);
            let zn = z.pow(n as u32);
            let one = ComplexApprox::from_int(&BigInt::from(1), 200);
            assert!(zn.overlaps(&one), "n = {n}");
            assert!(z.radius_abs() < 1e-50);
        }
    }

    #[test]
    fn nth_root_principal_branch() {
        let w = ComplexApprox::from_int(&BigInt::from(-8), 128);
        let r = w.nth_root(3).unwrap();
        let (a, b) = r.to_f64();
        assert!((a - 1.0).abs() < 1e-14 && (b - 3f64.sqrt()).abs() < 1e-14);
        assert!(r.pow(3).overlaps(&w));
        assert!(ComplexApprox::zero(128).nth_root(5).is_err());
    }

    #[test]
    fn rounding_and_sqrt() {
        let s = ComplexApprox::sqrt_int(&BigInt::from(-47), 128);
        let sq = s.mul(&s);
        assert_eq!(sq.round_to_integer(), Some(BigInt::from(-47)));
        let half = ComplexApprox::from_rational(&BigRational::new(1.into(), 2.into()), 128);
        assert_eq!(half.round_to_integer(), None);
        let (a, _) = ComplexApprox::sqrt_int(&BigInt::from(2), 100).to_f64();
        assert!((a - 2f64.sqrt()).abs() < 1e-15);
    }
}
