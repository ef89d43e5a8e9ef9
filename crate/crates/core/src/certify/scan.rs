use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::groups::{format_cycle_type, group_table, CycleType};
use crate::exactalg::modp::degree_pattern;
use crate::exactalg::numtheory::primes_up_to;
use crate::exactalg::{discriminant, is_irreducible_q};
use crate::{ForgeError, IntPoly, Result};

pub const DEFAULT_PRIME_BOUND: u64 = 10_000;
pub const DEFAULT_TOLERANCE: f64 = 0.05;

/// Frobenius cycle types of `f` over good primes, compared with a group table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub expected: String,
    pub prime_bound: u64,
    pub tolerance: f64,
    pub primes_used: usize,
    pub primes_skipped: usize,
    /// Observed counts keyed by rendered cycle type.
    pub histogram: BTreeMap<String, usize>,
    /// Group frequencies keyed by rendered cycle type.
    pub expected_frequencies: BTreeMap<String, f64>,
    /// Observed patterns that no group element has.
    pub foreign_patterns: Vec<String>,
    /// Total variation distance between observed and group frequencies.
    pub distance: f64,
    pub consistent: bool,
}

impl ScanReport {
    pub fn observed(&self, pattern: &[usize]) -> usize {
        self.histogram.get(&format_cycle_type(pattern)).copied().unwrap_or(0)
    }
}

/// Degree patterns of `f mod p` for good primes `p <= bound` (primes dividing
/// the discriminant or the leading coefficient are skipped).
pub fn frobenius_patterns(f: &IntPoly, bound: u64) -> Result<(BTreeMap<CycleType, usize>, usize)> {
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(ForgeError::Precondition("polynomial is not squarefree".into()));
    }
    let lc = f.lc().cloned().unwrap_or_default();
    let primes = primes_up_to(bound);
    let patterns: Vec<Option<CycleType>> = primes
        .par_iter()
        .map(|&p| {
            let pb = BigInt::from(p);
            if (&disc % &pb).is_zero() || (&lc % &pb).is_zero() {
                return None;
            }
            degree_pattern(f, p)
        })
        .collect();
    let mut hist = BTreeMap::new();
    let mut skipped = 0;
    for p in patterns {
        match p {
            Some(mut c) => {
                c.sort_unstable();
                *hist.entry(c).or_default() += 1;
            }
            None => skipped += 1,
        }
    }
    Ok((hist, skipped))
}

pub fn galois_scan(f: &IntPoly, bound: u64, expected: &str, tolerance: f64) -> Result<ScanReport> {
    if !is_irreducible_q(f)?.is_irreducible() {
        return Err(ForgeError::Reducible);
    }
    let table = group_table(expected)?;
    if table.degree != f.degree().unwrap_or(0) {
        return Err(ForgeError::Precondition(format!(
            "{expected} acts on {} points but the polynomial has degree {:?}",
            table.degree,
            f.degree()
        )));
    }
    let (hist, skipped) = frobenius_patterns(f, bound)?;
    let used: usize = hist.values().sum();
    let freqs = table.frequencies();
    let foreign: Vec<String> = hist
        .keys()
        .filter(|k| !freqs.contains_key(*k))
        .map(|k| format_cycle_type(k))
        .collect();
    let mut keys: Vec<&CycleType> = freqs.keys().chain(hist.keys()).collect();
    keys.sort();
    keys.dedup();
    let distance = 0.5
        * keys
            .iter()
            .map(|k| {
                let obs = hist.get(*k).copied().unwrap_or(0) as f64 / used.max(1) as f64;
                let exp = freqs.get(*k).copied().unwrap_or(0.0);
                (obs - exp).abs()
            })
            .sum::<f64>();
    Ok(ScanReport {
        expected: expected.to_string(),
        prime_bound: bound,
        tolerance,
        primes_used: used,
        primes_skipped: skipped,
        histogram: hist.iter().map(|(k, v)| (format_cycle_type(k), *v)).collect(),
        expected_frequencies: freqs.iter().map(|(k, v)| (format_cycle_type(k), *v)).collect(),
        consistent: foreign.is_empty() && distance <= tolerance && used > 0,
        foreign_patterns: foreign,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipoly;

    #[test]
    fn fifth_cyclotomic_is_cyclic_quartic() {
        let f = ipoly(&[1, 1, 1, 1, 1]);
        let r = galois_scan(&f, 2000, "Z4", 0.05).unwrap();
        assert!(r.consistent, "{r:?}");
        let allowed = ["1^4", "2^2", "4"];
        assert!(r.histogram.keys().all(|k| allowed.contains(&k.as_str())));
    }

    #[test]
    fn reducible_rejected() {
        assert!(matches!(galois_scan(&ipoly(&[-1, 0, 1]), 100, "Z2", 0.05), Err(ForgeError::Reducible)));
    }

    #[test]
    fn generic_quintic_is_not_dihedral() {
        // x^5 - x - 1 has group S5
        let f = ipoly(&[-1, -1, 0, 0, 0, 1]);
        let r = galois_scan(&f, 3000, "D5", 0.05).unwrap();
        assert!(!r.consistent);
        assert!(galois_scan(&f, 3000, "S5", 0.05).unwrap().consistent);
    }
}
