use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{root_of_unity, ComplexApprox};
use crate::exactalg::serial::bigint_string;
use crate::{ForgeError, Result};

/// `(a + b sqrt(d)) / den` in a quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadElt {
    #[serde(with = "bigint_string")]
    pub a: BigInt,
    #[serde(with = "bigint_string", default = "BigInt::zero")]
    pub b: BigInt,
    #[serde(with = "bigint_string", default = "BigInt::zero")]
    pub d: BigInt,
    #[serde(with = "bigint_string", default = "BigInt::one")]
    pub den: BigInt,
}

impl QuadElt {
    pub fn new(a: i64, b: i64, d: i64, den: i64) -> Self {
        QuadElt { a: a.into(), b: b.into(), d: d.into(), den: den.into() }
    }

    pub fn rational(a: i64) -> Self {
        Self::new(a, 0, 0, 1)
    }

    /// Image under `sqrt(d) -> -sqrt(d)`.
    pub fn conj(&self) -> Self {
        QuadElt { b: -&self.b, ..self.clone() }
    }

    /// Canonical form for equality tests: `(a, b, den)` as rationals.
    fn normalized(&self) -> (BigRational, BigRational) {
        let b = if self.d.is_zero() { BigRational::zero() } else { BigRational::new(self.b.clone(), self.den.clone()) };
        (BigRational::new(self.a.clone(), self.den.clone()), b)
    }

    pub fn same_value(&self, o: &Self) -> bool {
        let (a1, b1) = self.normalized();
        let (a2, b2) = o.normalized();
        a1 == a2 && (b1 == b2 && (b1.is_zero() || self.d == o.d))
    }

    pub fn embed(&self, prec: u32) -> ComplexApprox {
        let inv_den = BigRational::new(BigInt::one(), self.den.clone());
        let mut v = ComplexApprox::from_int(&self.a, prec);
        if !self.b.is_zero() && !self.d.is_zero() {
            let s = ComplexApprox::sqrt_int(&self.d, prec).mul(&ComplexApprox::from_int(&self.b, prec));
            v = v.add(&s);
        }
        v.mul(&ComplexApprox::from_rational(&inv_den, prec))
    }

    pub fn validate(&self) -> Result<()> {
        if self.den.is_zero() {
            return Err(ForgeError::Parse("quadratic element with zero denominator".into()));
        }
        Ok(())
    }
}

/// One entry of an orbit, evaluable at any working precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitValue {
    Quadratic(QuadElt),
    /// Decimal approximation with an absolute error bound.
    Decimal { re: String, im: String, error: String },
    /// `sum_k a_k zeta^<mk>` over `k` in `I_n`, the dual-orbit sum.
    DualSum { n: u64, m: u64, a: Vec<QuadElt> },
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int}{frac}");
    let num: BigInt = digits
        .parse()
        .map_err(|_| ForgeError::Parse(format!("bad decimal `{s}`")))?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    let v = BigRational::new(num, den);
    Ok(if neg { -v } else { v })
}

impl OrbitValue {
    pub fn evaluate(&self, prec: u32) -> Result<ComplexApprox> {
        match self {
            OrbitValue::Quadratic(q) => {
                q.validate()?;
                Ok(q.embed(prec))
            }
            OrbitValue::Decimal { re, im, error } => {
                let re = ComplexApprox::from_rational(&parse_decimal(re)?, prec);
                let im = ComplexApprox::from_rational(&parse_decimal(im)?, prec);
                let i = root_of_unity(4, 1, prec);
                let err = parse_decimal(error)?;
                let v = re.add(&im.mul(&i));
                Ok(v.widen(&err))
            }
            OrbitValue::DualSum { n, m, a } => {
                let units = crate::exactalg::numtheory::units_mod(*n);
                if a.len() != units.len() {
                    return Err(ForgeError::NotAnOrbit(format!("expected {} a-values", units.len())));
                }
                let mut acc = ComplexApprox::zero(prec);
                for (&k, ak) in units.iter().zip(a) {
                    ak.validate()?;
                    let z = root_of_unity(*n, m * k % n, prec);
                    acc = acc.add(&ak.embed(prec).mul(&z));
                }
                Ok(acc)
            }
        }
    }
}

/// Values `b_i` indexed by `I_n` ascending, with a note on where they came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSpec {
    pub n: u64,
    pub values: Vec<OrbitValue>,
    #[serde(default)]
    pub provenance: String,
}

impl OrbitSpec {
    pub fn validate(&self) -> Result<()> {
        let width = crate::exactalg::numtheory::euler_phi(self.n) as usize;
        if self.values.len() != width {
            return Err(ForgeError::NotAnOrbit(format!(
                "orbit for n = {} needs {width} values, got {}",
                self.n,
                self.values.len()
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, prec: u32) -> Result<Vec<ComplexApprox>> {
        self.validate()?;
        let vals = self.values.iter().map(|v| v.evaluate(prec)).collect::<Result<Vec<_>>>()?;
        if vals.iter().any(ComplexApprox::contains_zero) {
            return Err(ForgeError::NotAnOrbit("orbit value indistinguishable from zero".into()));
        }
        Ok(vals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_embedding() {
        let q = QuadElt::new(-21, -1, -47, 2);
        let (re, im) = q.embed(128).to_f64();
        assert!((re + 10.5).abs() < 1e-15);
        assert!((im + 47f64.sqrt() / 2.0).abs() < 1e-14);
        assert!(q.conj().same_value(&QuadElt::new(-21, 1, -47, 2)));
    }

    #[test]
    fn decimal_values() {
        assert_eq!(parse_decimal("-1.25").unwrap(), BigRational::new((-5).into(), 4.into()));
        let v = OrbitValue::Decimal { re: "0.5".into(), im: "-2".into(), error: "0.001".into() };
        let c = v.evaluate(96).unwrap();
        let (re, im) = c.to_f64();
        assert!((re - 0.5).abs() < 1e-15 && (im + 2.0).abs() < 1e-15);
        assert!(c.radius_abs() >= 0.001);
    }
}
