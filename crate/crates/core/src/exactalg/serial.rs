//! JSON form of polynomials: arrays of decimal strings, constant term first;
//! polynomials over `Z[t]` nest one level deeper.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::{ForgeError, Poly, Result, Ring};

/// Coefficients with a JSON encoding.
pub trait JsonCoeff: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonCoeff for BigInt {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.trim().parse().map_err(|_| ForgeError::Parse(format!("bad integer `{s}`"))),
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| ForgeError::Parse(format!("bad integer {n}"))),
            other => Err(ForgeError::Parse(format!("expected integer string, got {other}"))),
        }
    }
}

impl JsonCoeff for BigRational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => match s.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| ForgeError::Parse(format!("bad rational `{s}`")))?;
                    let d: BigInt = d.trim().parse().map_err(|_| ForgeError::Parse(format!("bad rational `{s}`")))?;
                    if d == BigInt::from(0) {
                        return Err(ForgeError::Parse(format!("zero denominator in `{s}`")));
                    }
                    Ok(BigRational::new(n, d))
                }
                None => Ok(BigRational::from_integer(BigInt::from_json(v)?)),
            },
            _ => Ok(BigRational::from_integer(BigInt::from_json(v)?)),
        }
    }
}

impl<T: Ring + JsonCoeff> JsonCoeff for Poly<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(JsonCoeff::to_json).collect())
    }
    fn from_json(v: &Value) -> Result<Self> {
        let Value::Array(items) = v else {
            return Err(ForgeError::Parse(format!("expected coefficient array, got {v}")));
        };
        Ok(Poly::new(items.iter().map(T::from_json).collect::<Result<Vec<_>>>()?))
    }
}

impl<T: Ring + JsonCoeff> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de, T: Ring + JsonCoeff> Deserialize<'de> for Poly<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Self::from_json(&v).map_err(D::Error::custom)
    }
}

/// Serde adapter writing a `BigInt` as a decimal string.
pub mod bigint_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        BigInt::from_json(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Vec<BigInt>` as an array of decimal strings.
pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .iter()
            .map(|v| BigInt::from_json(v).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Option<BigInt>` as a decimal string or `null`.
pub mod opt_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<BigInt>, D::Error> {
        Option::<Value>::deserialize(d)?
            .map(|v| BigInt::from_json(&v).map_err(D::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{bipoly, ipoly, BiPoly, IntPoly, RatPoly};

    #[test]
    fn roundtrip_int_and_bi() {
        let f = ipoly(&[-1, 0, 123456789]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["-1","0","123456789"]"#);
        assert_eq!(serde_json::from_str::<IntPoly>(&s).unwrap(), f);
        let g = bipoly(&[&[1], &[0, -1], &[1]]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"[["1"],["0","-1"],["1"]]"#);
        assert_eq!(serde_json::from_str::<BiPoly>(&s).unwrap(), g);
    }

    #[test]
    fn rationals_and_errors() {
        let f: RatPoly = serde_json::from_str(r#"["1/2","-3"]"#).unwrap();
        assert_eq!(f.coeff(0), BigRational::new(1.into(), 2.into()));
        assert!(serde_json::from_str::<IntPoly>(r#"["x"]"#).is_err());
        assert!(serde_json::from_str::<RatPoly>(r#"["1/0"]"#).is_err());
    }
}
