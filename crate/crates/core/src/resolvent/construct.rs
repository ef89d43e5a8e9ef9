use rayon::prelude::*;

use super::{OrbitSpec, ResolventConfig};
use crate::cyclotomic::{root_of_unity, ComplexApprox, MAX_PRECISION};
use crate::{ForgeError, IntPoly, Result};

/// Which branch assignments `k_i` to try.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Only the branch stored in the config.
    Fixed,
    /// All `n^phi(n)` assignments in lexicographic order.
    Exhaustive,
}

/// Result of one branch assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchOutcome {
    pub branch: Vec<u64>,
    pub poly: Option<IntPoly>,
}

#[derive(Clone, Debug)]
pub struct ConstructResult {
    /// The selected polynomial: the target when it was verified, else the
    /// first verified one in branch order.
    pub poly: IntPoly,
    pub branch: Vec<u64>,
    pub precision: u32,
    pub branches_tried: usize,
    /// Distinct verified polynomials with the number of branches giving each
    /// and the first such branch.
    pub verified: Vec<(IntPoly, usize, Vec<u64>)>,
    /// Whether the supplied target was among the verified polynomials.
    pub target_match: Option<bool>,
}

/// Coefficients (constant first) of `prod (x - r)`.
pub fn expand_roots(roots: &[ComplexApprox], prec: u32) -> Vec<ComplexApprox> {
    let mut coeffs = vec![ComplexApprox::from_int(&1.into(), prec)];
    for r in roots {
        let mut next = vec![ComplexApprox::zero(prec); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(r));
        }
        coeffs = next;
    }
    coeffs
}

/// Round every coefficient to the unique integer in its ball.
pub fn round_polynomial(coeffs: &[ComplexApprox]) -> Option<IntPoly> {
    coeffs
        .iter()
        .map(ComplexApprox::round_to_integer)
        .collect::<Option<Vec<_>>>()
        .map(IntPoly::new)
}

/// Rounded polynomial whose value at every root ball contains zero.
fn verified_round(roots: &[ComplexApprox], prec: u32) -> Option<IntPoly> {
    let p = round_polynomial(&expand_roots(roots, prec))?;
    let reproduces = roots.iter().all(|r| {
        p.coeffs()
            .iter()
            .rev()
            .fold(ComplexApprox::zero(prec), |acc, c| acc.mul(r).add(&ComplexApprox::from_int(c, prec)))
            .contains_zero()
    });
    reproduces.then_some(p)
}

struct Prepared {
    zeta: Vec<ComplexApprox>,
    e0: Vec<ComplexApprox>,
}

fn prepare(cfg: &ResolventConfig, orbit: &OrbitSpec, prec: u32) -> Result<Prepared> {
    let n = cfg.n;
    let b = orbit.evaluate(prec)?;
    let zeta: Vec<ComplexApprox> = (0..n).map(|k| root_of_unity(n, k, prec)).collect();
    let roots = b
        .iter()
        .map(|bi| bi.nth_root(n as u32))
        .collect::<Result<Vec<_>>>()?;
    let powers: Vec<Vec<ComplexApprox>> = roots
        .iter()
        .map(|c| {
            let mut pw = vec![ComplexApprox::from_int(&1.into(), prec)];
            for e in 1..n as usize {
                pw.push(pw[e - 1].mul(c));
            }
            pw
        })
        .collect();
    let e0 = (0..cfg.width())
        .map(|j| {
            (0..cfg.width()).fold(ComplexApprox::from_int(&1.into(), prec), |acc, i| {
                acc.mul(&powers[i][cfg.exponents[i][j] as usize])
            })
        })
        .collect();
    Ok(Prepared { zeta, e0 })
}

/// `r_i = sum_j e_j zeta^(i j)` for `i = 0..n-1`, with `e_j` twisted by the branch.
fn resolvent_roots(cfg: &ResolventConfig, prep: &Prepared, branch: &[u64], prec: u32) -> Vec<ComplexApprox> {
    let n = cfg.n;
    let e: Vec<ComplexApprox> = (0..cfg.width())
        .map(|j| prep.e0[j].mul(&prep.zeta[cfg.branch_twist(branch, j) as usize]))
        .collect();
    (0..n)
        .map(|i| {
            cfg.units.iter().zip(&e).fold(ComplexApprox::zero(prec), |acc, (&j, ej)| {
                acc.add(&ej.mul(&prep.zeta[(i * j % n) as usize]))
            })
        })
        .collect()
}

fn branch_from_index(mut idx: u64, n: u64, width: usize) -> Vec<u64> {
    let mut digits = vec![0; width];
    for d in digits.iter_mut().rev() {
        *d = idx % n;
        idx /= n;
    }
    digits
}

fn attempt(cfg: &ResolventConfig, orbit: &OrbitSpec, mode: &SearchMode, prec: u32) -> Result<Vec<BranchOutcome>> {
    let prep = prepare(cfg, orbit, prec)?;
    let branches: Vec<Vec<u64>> = match mode {
        SearchMode::Fixed => vec![cfg.branch.clone()],
        SearchMode::Exhaustive => {
            let total = cfg.n.pow(cfg.width() as u32);
            (0..total).map(|i| branch_from_index(i, cfg.n, cfg.width())).collect()
        }
    };
    Ok(branches
        .into_par_iter()
        .map(|branch| {
            let roots = resolvent_roots(cfg, &prep, &branch, prec);
            let poly = verified_round(&roots, prec);
            BranchOutcome { branch, poly }
        })
        .collect())
}

/// Build `P_n = prod (x - r_i)` numerically from the orbit `b_i`, round to
/// integers and verify the rounding, doubling the precision up to
/// [`MAX_PRECISION`] while no branch verifies.
pub fn construct_pn(
    cfg: &ResolventConfig,
    orbit: &OrbitSpec,
    mode: SearchMode,
    target: Option<&IntPoly>,
    start_precision: u32,
) -> Result<ConstructResult> {
    if orbit.n != cfg.n {
        return Err(ForgeError::Precondition(format!("orbit is for n = {}, config for n = {}", orbit.n, cfg.n)));
    }
    let mut prec = start_precision.max(64);
    loop {
        let outcomes = attempt(cfg, orbit, &mode, prec)?;
        let mut verified: Vec<(IntPoly, usize, Vec<u64>)> = Vec::new();
        for o in &outcomes {
            if let Some(p) = &o.poly {
                match verified.iter_mut().find(|(q, _, _)| q == p) {
                    Some(entry) => entry.1 += 1,
                    None => verified.push((p.clone(), 1, o.branch.clone())),
                }
            }
        }
        if !verified.is_empty() {
            let target_match = target.map(|t| verified.iter().any(|(p, _, _)| p == t));
            let chosen = match target {
                Some(t) if target_match == Some(true) => verified.iter().find(|(p, _, _)| p == t).unwrap(),
                _ => &verified[0],
            };
            return Ok(ConstructResult {
                poly: chosen.0.clone(),
                branch: chosen.2.clone(),
                precision: prec,
                branches_tried: outcomes.len(),
                verified,
                target_match,
            });
        }
        if prec >= MAX_PRECISION {
            return Err(ForgeError::NoVerifiedBranch {
                precision: prec,
                diagnostic: format!("{} branch assignments tried, none rounded to a verified integer polynomial", outcomes.len()),
            });
        }
        prec *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolvent::{OrbitValue, QuadElt};
    use crate::ipoly;

    fn ones(n: u64) -> OrbitSpec {
        let w = crate::exactalg::numtheory::euler_phi(n) as usize;
        OrbitSpec { n, values: vec![OrbitValue::Quadratic(QuadElt::rational(1)); w], provenance: "trivial".into() }
    }

    #[test]
    fn trivial_orbit_gives_x_minus_4_times_x_plus_1_to_the_4() {
        let cfg = ResolventConfig::new(5).unwrap();
        let r = construct_pn(&cfg, &ones(5), SearchMode::Fixed, None, 128).unwrap();
        assert_eq!(r.poly, &ipoly(&[-4, 1]) * &ipoly(&[1, 1]).pow(4));
        assert_eq!(r.branches_tried, 1);
    }

    #[test]
    fn branch_indices_are_lexicographic() {
        assert_eq!(branch_from_index(0, 5, 4), vec![0, 0, 0, 0]);
        assert_eq!(branch_from_index(7, 5, 4), vec![0, 0, 1, 2]);
        assert_eq!(branch_from_index(624, 5, 4), vec![4, 4, 4, 4]);
    }

    #[test]
    fn expansion_of_integer_roots_rounds_exactly() {
        let roots: Vec<_> = [2, -3, 5].iter().map(|&k| ComplexApprox::from_int(&k.into(), 96)).collect();
        let p = round_polynomial(&expand_roots(&roots, 96)).unwrap();
        assert_eq!(p, &(&ipoly(&[-2, 1]) * &ipoly(&[3, 1])) * &ipoly(&[-5, 1]));
    }
}
