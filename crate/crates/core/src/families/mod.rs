//! Parametric families over `Z[t]`: the catalog, specialization, admissible
//! parameter enumeration and Lucas-indexed specializations.

mod apolar;
mod catalog;
mod elliptic;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use apolar::{apolarity_check, apolarity_variants, Apolarity};
pub use catalog::{catalog, family, fixture_digest, verify_fixture, FIXTURE_JSON, FIXTURE_SHA256};
pub use elliptic::{elliptic_parametrization_check, pre_transformation_symmetry, EllipticReport};

use crate::cheblucas::{lucas_number, pell_witness};
use crate::exactalg::intpoly::eval_t;
use crate::exactalg::serial::{bigint_string, opt_bigint};
use crate::{BiPoly, ForgeError, IntPoly, Result};

/// A polynomial in one variable over `Z[t]`, with its printed form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub var: String,
    pub printed: String,
    /// Corrected reading of `printed`, when the printed form has a typo.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected: Option<String>,
    pub coeffs: BiPoly,
}

impl PolyEntry {
    pub fn at(&self, t: &BigInt) -> IntPoly {
        eval_t(&self.coeffs, t)
    }
}

/// How the quadratic subfield depends on `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Quadratic {
    /// `Q(sqrt(factor(t)))`.
    Poly { factor: IntPoly, printed: String },
    /// `Q(sqrt(factor(t) * s))` on the curve `t^2 + pell_c = 5 s^2`.
    Pell { factor: IntPoly, pell_c: i64, printed: String },
}

impl Quadratic {
    /// The radicand at `t` (up to squares), or `None` off the Pell curve.
    pub fn radicand(&self, t: &BigInt) -> Option<BigInt> {
        match self {
            Quadratic::Poly { factor, .. } => Some(factor.eval(t)),
            Quadratic::Pell { factor, pell_c, .. } => pell_witness(t, *pell_c).map(|s| factor.eval(t) * s),
        }
    }

    pub fn printed(&self) -> &str {
        match self {
            Quadratic::Poly { printed, .. } | Quadratic::Pell { printed, .. } => printed,
        }
    }
}

/// `t = scale * L(mult * i + offset)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LucasRule {
    pub scale: i64,
    pub mult: i64,
    pub offset: i64,
    pub pell_c: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadratic: Option<Quadratic>,
}

impl LucasRule {
    pub fn index(&self, i: i64) -> i64 {
        self.mult * i + self.offset
    }

    pub fn t(&self, i: i64) -> BigInt {
        lucas_number(self.index(i)) * self.scale
    }

    pub fn describe(&self) -> String {
        let idx = match (self.mult, self.offset) {
            (m, 0) => format!("{m}i"),
            (m, o) if o < 0 => format!("{m}i-{}", -o),
            (m, o) => format!("{m}i+{o}"),
        };
        if self.scale == 1 {
            format!("t = L({idx})")
        } else {
            format!("t = {} L({idx})", self.scale)
        }
    }
}

/// Known Newton starting points: `u = u_offset + u_step s` for `t = t_offset + t_step s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonHint {
    pub t_offset: i64,
    pub t_step: i64,
    pub u_offset: i64,
    pub u_step: i64,
}

impl NewtonHint {
    pub fn start_for(&self, t: &BigInt) -> Option<BigInt> {
        let (s, r) = (t - self.t_offset).div_rem(&BigInt::from(self.t_step));
        r.is_zero().then(|| s * self.u_step + self.u_offset)
    }
}

/// A catalogued family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub id: String,
    pub description: String,
    pub group: String,
    pub main: PolyEntry,
    pub subfield: Option<PolyEntry>,
    #[serde(default)]
    pub aux: Vec<PolyEntry>,
    pub prime: Option<u64>,
    /// Admissible classes `(residue, modulus)`.
    #[serde(default)]
    pub classes: Vec<(i64, u64)>,
    pub quadratic: Option<Quadratic>,
    #[serde(default)]
    pub lucas: Vec<LucasRule>,
    pub newton_hint: Option<NewtonHint>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub flags: Vec<String>,
    /// `n` when the family is a sum of two `n`-th powers over `Q(zeta_n)`.
    pub apolar: Option<u32>,
}

impl FamilySpec {
    pub(crate) fn validate(&self) -> Result<()> {
        let lc = self.main.coeffs.lc().ok_or_else(|| ForgeError::Parse("empty main polynomial".into()))?;
        if !lc.is_one() {
            return Err(ForgeError::Parse("main polynomial is not monic in x".into()));
        }
        for &(_, m) in &self.classes {
            let p = self.prime.ok_or_else(|| ForgeError::Parse("classes without a prime".into()))?;
            let mut q = m;
            while q % p == 0 {
                q /= p;
            }
            if q != 1 {
                return Err(ForgeError::Parse(format!("modulus {m} is not a power of {p}")));
            }
        }
        Ok(())
    }

    pub fn aux(&self, name: &str) -> Option<&PolyEntry> {
        self.aux.iter().find(|a| a.name.as_deref() == Some(name))
    }

    pub fn has_parameter(&self) -> bool {
        let deg_t = |e: &PolyEntry| e.coeffs.coeffs().iter().any(|c| c.deg() > 0);
        deg_t(&self.main) || self.subfield.as_ref().is_some_and(deg_t)
    }

    /// The first admissible class containing `t`. Families without classes
    /// accept every `t`.
    pub fn matching_class(&self, t: &BigInt) -> Option<(i64, u64)> {
        self.classes
            .iter()
            .copied()
            .find(|&(r, m)| (t - r).mod_floor(&BigInt::from(m)).is_zero())
    }

    pub fn is_admissible(&self, t: &BigInt) -> bool {
        self.classes.is_empty() || self.matching_class(t).is_some()
    }

    pub fn specialize(&self, t: &BigInt) -> FamilyInstance {
        FamilyInstance {
            family: self.id.clone(),
            t: t.clone(),
            main: self.main.at(t),
            subfield: self.subfield.as_ref().map(|s| s.at(t)),
            admissible: self.is_admissible(t),
            class: self.matching_class(t),
        }
    }
}

/// A family specialized at an integer `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub family: String,
    #[serde(with = "bigint_string")]
    pub t: BigInt,
    pub main: IntPoly,
    pub subfield: Option<IntPoly>,
    pub admissible: bool,
    pub class: Option<(i64, u64)>,
}

impl FamilyInstance {
    pub fn spec(&self) -> Result<&'static FamilySpec> {
        family(&self.family)
    }
}

pub fn specialize(id: &str, t: &BigInt) -> Result<FamilyInstance> {
    Ok(family(id)?.specialize(t))
}

/// Admissible `t` in `from..=to`, ascending.
pub fn enumerate_admissible(id: &str, from: i64, to: i64) -> Result<Vec<i64>> {
    let spec = family(id)?;
    if from > to {
        return Ok(Vec::new());
    }
    Ok((from..=to)
        .into_par_iter()
        .filter(|&t| spec.is_admissible(&BigInt::from(t)))
        .collect())
}

/// One Lucas-indexed specialization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LucasSpecialization {
    pub i: i64,
    pub rule: usize,
    /// `s` with `t^2 + c = 5 s^2`.
    #[serde(with = "bigint_string")]
    pub pell_s: BigInt,
    #[serde(with = "opt_bigint")]
    pub radicand: Option<BigInt>,
    pub instance: FamilyInstance,
}

/// Specializations at `t` given by each Lucas rule for `i` in `from..=to`.
/// Every `t` is checked against the rule's Pell form.
pub fn lucas_specializations(id: &str, from: i64, to: i64) -> Result<Vec<LucasSpecialization>> {
    let spec = family(id)?;
    if spec.lucas.is_empty() {
        return Err(ForgeError::NoLucasRules(id.to_string()));
    }
    let mut out = Vec::new();
    for (k, rule) in spec.lucas.iter().enumerate() {
        for i in from..=to {
            let t = rule.t(i);
            let s = pell_witness(&t, rule.pell_c).ok_or_else(|| {
                ForgeError::Precondition(format!("{}: t = {t} is off the curve t^2 + {} = 5 s^2", rule.describe(), rule.pell_c))
            })?;
            let quadratic = rule.quadratic.as_ref().or(spec.quadratic.as_ref());
            let radicand = quadratic.and_then(|q| q.radicand(&t));
            out.push(LucasSpecialization { i, rule: k, pell_s: s.abs(), radicand, instance: spec.specialize(&t) });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipoly;

    #[test]
    fn catalog_loads_and_is_checksummed() {
        verify_fixture().unwrap();
        let c = catalog().unwrap();
        assert!(c.len() >= 14);
        let t4 = family("T4").unwrap();
        assert_eq!(t4.main.coeffs.degree(), Some(5));
        assert_eq!(t4.main.coeffs.coeffs().iter().map(|c| c.deg()).max(), Some(2));
        let t15 = family("T15").unwrap();
        let sub = &t15.subfield.as_ref().unwrap().coeffs;
        assert_eq!(sub.coeffs().iter().map(|c| c.deg()).max(), Some(1));
        assert!(matches!(family("T99"), Err(ForgeError::UnknownFamily(_))));
    }

    #[test]
    fn specialization_examples() {
        let i = specialize("T4", &3.into()).unwrap();
        assert_eq!(i.main, ipoly(&[-22, -15, -15, 10, 0, 1]));
        assert!(i.admissible);
        let i = specialize("T4", &2.into()).unwrap();
        assert_eq!(i.subfield.unwrap(), ipoly(&[0, 0, 100, 0, 1]));
        let i = specialize("T15", &0.into()).unwrap();
        assert_eq!(i.subfield.unwrap(), ipoly(&[-1, -4, -3, 6, 8, -3, -5, 1]));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_admissible("T4", 0, 30).unwrap(), vec![1, 3, 9, 20, 26, 28]);
        assert_eq!(enumerate_admissible("T9", 0, 49).unwrap(), vec![0, 5, 8, 17, 20, 25, 49]);
        // residue oracle for T8's mixed moduli
        let expect: Vec<i64> = (980..=1000)
            .filter(|t: &i64| {
                [7, 11].contains(&t.rem_euclid(25))
                    || [123, 0].contains(&t.rem_euclid(125))
                    || t.rem_euclid(3125) == 989
            })
            .collect();
        assert_eq!(enumerate_admissible("T8", 980, 1000).unwrap(), expect);
    }

    #[test]
    fn lucas_examples() {
        let v = lucas_specializations("T5", 0, 1).unwrap();
        assert_eq!(v[0].instance.t, BigInt::from(-22));
        assert_eq!(v[0].pell_s, BigInt::from(10));
        assert_eq!(v[1].instance.t, BigInt::from(2728));
        let v = lucas_specializations("T7", 1, 1).unwrap();
        assert_eq!(v[0].instance.t, BigInt::from(4));
        assert!(matches!(lucas_specializations("T4", 0, 1), Err(ForgeError::NoLucasRules(_))));
    }

    #[test]
    fn newton_hint_arithmetic() {
        let h = family("T4").unwrap().newton_hint.unwrap();
        assert_eq!(h.start_for(&1.into()), Some(BigInt::from(-9)));
        assert_eq!(h.start_for(&26.into()), Some(BigInt::from(-19)));
        assert_eq!(h.start_for(&(-24).into()), Some(BigInt::from(1)));
        assert_eq!(h.start_for(&3.into()), None);
    }
}
