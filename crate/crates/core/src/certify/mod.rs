//! Local certificates of unramifiedness for specialized family members, and
//! empirical Galois group identification by Frobenius cycle types.

mod dedekind;
mod groups;
mod pgl;
mod scan;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use dedekind::{dedekind_p_maximal, DedekindReport};
pub use groups::{compose, cycle_type, format_cycle_type, group_table, inverse, CycleType, Perm, PermGroupTable, GROUP_NAMES};
pub use pgl::{pair_discriminant_root, pgl_pair_checks, q_odd_on, PglPairReport, RealRootCounts};
pub use scan::{frobenius_patterns, galois_scan, ScanReport, DEFAULT_PRIME_BOUND, DEFAULT_TOLERANCE};

use crate::exactalg::numtheory::exact_sqrt;
use crate::exactalg::padic::{find_newton_witness, hensel_lift_root, newton_converges, valuation};
use crate::exactalg::{discriminant, is_irreducible_q, Irreducibility};
use crate::cheblucas::pell_witness;
use crate::families::{FamilyInstance, Quadratic};
use crate::{IntPoly, PAdicInt, Result};

pub const CERTIFICATE_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Residue tree depth beyond the family's largest modulus exponent.
const WITNESS_EXTRA_DEPTH: u32 = 4;
const WITNESS_MAX_DEPTH: u32 = 64;
const WITNESS_NODE_CAP: usize = 400_000;

/// A verified Newton starting point and the root it converges to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonCertificate {
    pub p: u64,
    #[serde(with = "crate::exactalg::serial::bigint_string")]
    pub start: BigInt,
    pub v_f: Option<u32>,
    pub v_df: Option<u32>,
    pub root: PAdicInt,
    pub precision: u32,
}

impl NewtonCertificate {
    /// Build a certificate from `u`, or `None` when Newton's criterion fails there.
    pub fn at(f: &IntPoly, p: u64, u: &BigInt, precision: u32) -> Result<Option<Self>> {
        let check = newton_converges(f, p, u)?;
        if !check.converges {
            return Ok(None);
        }
        let root = hensel_lift_root(f, p, u, precision)?;
        Ok(Some(NewtonCertificate { p, start: u.clone(), v_f: check.v_f, v_df: check.v_df, root, precision }))
    }

    /// `v(f(u)) > 2 v(f'(u))` and `f(root) = 0 mod p^precision`.
    pub fn verify(&self, f: &IntPoly) -> bool {
        let Ok(check) = newton_converges(f, self.p, &self.start) else { return false };
        let holds = valuation(&f.eval(&self.root.value), self.p).is_none_or(|v| v >= self.precision);
        check.converges && holds && self.root.precision == self.precision
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    /// Process exit code: 0 pass, 2 fail, 3 skip.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Skip => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub data: Value,
}

impl Check {
    fn new(name: &str, status: CheckStatus, data: Value) -> Self {
        Check { name: name.to_string(), status, data }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub family: String,
    #[serde(with = "crate::exactalg::serial::bigint_string")]
    pub t: BigInt,
    pub polys: BTreeMap<String, IntPoly>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub seed: u64,
    pub toolversion: String,
}

impl Certificate {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Fail if any check fails; skip if any is skipped; pass otherwise.
    fn decide(checks: &[Check]) -> Verdict {
        if checks.iter().any(|c| c.status == CheckStatus::Fail) {
            Verdict::Fail
        } else if checks.iter().any(|c| c.status == CheckStatus::Skip) {
            Verdict::Skip
        } else {
            Verdict::Pass
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn newton(&self) -> Option<NewtonCertificate> {
        let data = self.check("newton_witness")?.data.get("certificate")?;
        serde_json::from_value(data.clone()).ok()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyOptions {
    pub seed: u64,
    /// Run a Galois scan against the family's group.
    pub scan: bool,
    pub prime_bound: u64,
    pub tolerance: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { seed: crate::DEFAULT_SEED, scan: false, prime_bound: DEFAULT_PRIME_BOUND, tolerance: DEFAULT_TOLERANCE }
    }
}

fn irreducibility_data(r: &Irreducibility) -> Value {
    match r {
        Irreducibility::Irreducible(by) => json!({ "irreducible": true, "by": format!("{by:?}") }),
        Irreducibility::Reducible { witness } => json!({ "irreducible": false, "factor": witness.to_string() }),
    }
}

/// Remove from `n` every prime factor it shares with `s`.
pub(crate) fn strip_shared_primes(n: &BigInt, s: &BigInt) -> BigInt {
    let mut r = n.abs();
    if s.is_zero() {
        return r;
    }
    loop {
        let g = r.gcd(s);
        if g.is_one() {
            return r;
        }
        r /= g;
    }
}

fn max_modulus_exponent(classes: &[(i64, u64)], p: u64) -> u32 {
    classes
        .iter()
        .map(|&(_, m)| {
            let (mut m, mut e) = (m, 0);
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            e
        })
        .max()
        .unwrap_or(1)
}

/// Run the local checks for a family member and bundle them.
pub fn unramified_certificate(inst: &FamilyInstance, opts: &CertifyOptions) -> Result<Certificate> {
    let spec = inst.spec()?;
    let mut polys = BTreeMap::from([("main".to_string(), inst.main.clone())]);
    if let Some(s) = &inst.subfield {
        polys.insert("subfield".to_string(), s.clone());
    }
    let mut checks = Vec::new();

    checks.push(if spec.classes.is_empty() {
        Check::new("congruence", CheckStatus::Pass, json!({ "classes": [] }))
    } else {
        match inst.class {
            Some((r, m)) => Check::new("congruence", CheckStatus::Pass, json!({ "class": [r, m] })),
            None => Check::new("congruence", CheckStatus::Fail, json!({ "classes": spec.classes })),
        }
    });

    if let Some(Quadratic::Pell { pell_c, .. }) = &spec.quadratic {
        checks.push(match pell_witness(&inst.t, *pell_c) {
            Some(s) => Check::new("pell_form", CheckStatus::Pass, json!({ "c": pell_c, "s": s.to_string() })),
            None => Check::new("pell_form", CheckStatus::Fail, json!({ "c": pell_c, "reason": "t^2 + c is not 5 s^2" })),
        });
    }

    let main_irr = is_irreducible_q(&inst.main)?;
    let sub_irr = inst.subfield.as_ref().map(is_irreducible_q).transpose()?;
    let irreducible = main_irr.is_irreducible() && sub_irr.as_ref().is_none_or(Irreducibility::is_irreducible);
    let status = if irreducible { CheckStatus::Pass } else { CheckStatus::Skip };
    checks.push(Check::new(
        "irreducibility",
        status,
        json!({ "main": irreducibility_data(&main_irr), "subfield": sub_irr.as_ref().map(irreducibility_data) }),
    ));

    let later = ["discriminant_support", "newton_witness", "dedekind", "galois_scan"];
    if !irreducible {
        for name in later.iter().take(if opts.scan { 4 } else { 3 }) {
            checks.push(Check::new(name, CheckStatus::Skip, json!({ "reason": "reducible instance" })));
        }
        return Ok(finish(inst, polys, checks, opts));
    }

    let p = spec.prime;
    let disc_main = discriminant(&inst.main)?;
    let disc_sub = inst.subfield.as_ref().map(discriminant).transpose()?;
    let radicand = spec.quadratic.as_ref().and_then(|q| q.radicand(&inst.t));

    // Primes outside p, the subfield discriminant and the quadratic radicand
    // must divide disc(main) to even order.
    let mut allowed = BigInt::from(p.unwrap_or(1));
    if let Some(d) = &disc_sub {
        allowed *= d;
    }
    if let Some(r) = radicand.as_ref().filter(|r| !r.is_zero()) {
        allowed *= r;
    }
    let cofactor = strip_shared_primes(&disc_main, &allowed);
    let square = exact_sqrt(&cofactor).is_some();
    checks.push(Check::new(
        "discriminant_support",
        if square { CheckStatus::Pass } else { CheckStatus::Fail },
        json!({
            "disc_main": disc_main.to_string(),
            "disc_subfield": disc_sub.as_ref().map(|d| d.to_string()),
            "radicand": radicand.as_ref().map(|r| r.to_string()),
            "cofactor": cofactor.to_string(),
            "cofactor_is_square": square,
        }),
    ));

    checks.push(match p {
        None => Check::new("newton_witness", CheckStatus::Skip, json!({ "reason": "family has no distinguished prime" })),
        Some(p) if !(&disc_main % p).is_zero() => Check::new(
            "newton_witness",
            CheckStatus::Pass,
            json!({ "p": p, "reason": "p does not divide disc(main)" }),
        ),
        Some(p) => newton_check(inst, spec.newton_hint.as_ref(), witness_depth(&spec.classes, p, &disc_main), p)?,
    });

    if let Some(p) = p {
        let mut data = serde_json::Map::new();
        for (name, f) in &polys {
            let v = match dedekind_p_maximal(f, p) {
                Ok(r) => serde_json::to_value(r)?,
                Err(e) => json!({ "error": e.to_string() }),
            };
            data.insert(name.clone(), v);
        }
        checks.push(Check::new("dedekind", CheckStatus::Pass, Value::Object(data)));
    } else {
        checks.push(Check::new("dedekind", CheckStatus::Skip, json!({ "reason": "family has no distinguished prime" })));
    }

    if opts.scan {
        checks.push(match galois_scan(&inst.main, opts.prime_bound, &spec.group, opts.tolerance) {
            Ok(r) => Check::new(
                "galois_scan",
                if r.consistent { CheckStatus::Pass } else { CheckStatus::Fail },
                serde_json::to_value(&r)?,
            ),
            Err(e) => Check::new("galois_scan", CheckStatus::Skip, json!({ "reason": e.to_string() })),
        });
    }
    Ok(finish(inst, polys, checks, opts))
}

/// A root `a` of `f` has `v(f'(a)) <= v(disc f)`, and Newton's criterion
/// then holds at level `2 v(f'(a)) + 1`, so that depth always suffices.
fn witness_depth(classes: &[(i64, u64)], p: u64, disc: &BigInt) -> u32 {
    let v = valuation(disc, p).unwrap_or(0);
    (max_modulus_exponent(classes, p) + WITNESS_EXTRA_DEPTH)
        .max(2 * v + 1)
        .min(WITNESS_MAX_DEPTH)
}

fn newton_check(inst: &FamilyInstance, hint: Option<&crate::families::NewtonHint>, depth: u32, p: u64) -> Result<Check> {
    let precision = depth + 8;
    let f = &inst.main;
    let hinted = hint.and_then(|h| h.start_for(&inst.t));
    let mut cert = None;
    let mut source = "hint";
    if let Some(u) = &hinted {
        cert = NewtonCertificate::at(f, p, u, precision)?;
    }
    if cert.is_none() {
        source = "search";
        if let Some((u, _)) = find_newton_witness(f, p, depth, WITNESS_NODE_CAP)? {
            cert = NewtonCertificate::at(f, p, &u, precision)?;
        }
    }
    Ok(match cert {
        Some(c) if c.verify(f) => Check::new(
            "newton_witness",
            CheckStatus::Pass,
            json!({ "source": source, "hint": hinted.map(|u| u.to_string()), "certificate": c }),
        ),
        _ => Check::new(
            "newton_witness",
            CheckStatus::Fail,
            json!({ "p": p, "depth": depth, "reason": "no residue satisfies Newton's criterion" }),
        ),
    })
}

fn finish(inst: &FamilyInstance, polys: BTreeMap<String, IntPoly>, checks: Vec<Check>, opts: &CertifyOptions) -> Certificate {
    Certificate {
        version: CERTIFICATE_VERSION,
        family: inst.family.clone(),
        t: inst.t.clone(),
        polys,
        verdict: Certificate::decide(&checks),
        checks,
        seed: opts.seed,
        toolversion: TOOL_VERSION.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::specialize;

    #[test]
    fn t4_at_one_uses_the_printed_witness() {
        let inst = specialize("T4", &1.into()).unwrap();
        let c = unramified_certificate(&inst, &CertifyOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Pass, "{}", c.to_json().unwrap());
        let n = c.newton().unwrap();
        assert_eq!(n.start, BigInt::from(-9));
        assert!(n.verify(&inst.main));
    }

    #[test]
    fn dihedral_quintic_over_sqrt_minus_47() {
        let inst = specialize("D5_47", &0.into()).unwrap();
        let c = unramified_certificate(&inst, &CertifyOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!(c.check("discriminant_support").unwrap().data["disc_main"], "2209");
    }

    #[test]
    fn eisenstein_quintic_fails_at_five() {
        let inst = specialize("D5_235", &0.into()).unwrap();
        let c = unramified_certificate(&inst, &CertifyOptions::default()).unwrap();
        assert_eq!(c.check("newton_witness").unwrap().status, CheckStatus::Fail);
        assert_eq!(c.verdict, Verdict::Fail);
    }

    #[test]
    fn reducible_instance_is_skipped() {
        let inst = specialize("T4", &(-22).into()).unwrap();
        let c = unramified_certificate(&inst, &CertifyOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Skip);
        assert_eq!(c.verdict.exit_code(), 3);
    }

    #[test]
    fn certificate_json_is_deterministic() {
        let inst = specialize("T4", &28.into()).unwrap();
        let a = unramified_certificate(&inst, &CertifyOptions::default()).unwrap().to_json().unwrap();
        let b = unramified_certificate(&inst, &CertifyOptions::default()).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        let back: Certificate = serde_json::from_str(&a).unwrap();
        assert_eq!(back.to_json().unwrap(), a);
    }
}
