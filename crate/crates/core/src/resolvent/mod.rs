//! Resolvent construction of `P_n` from an orbit of values, the dual orbit
//! of a quadratic `a`-orbit, and exact checks of rational root maps.

mod construct;
mod dual;
mod fixtures;
mod maps;
mod orbit;

pub use construct::{construct_pn, expand_roots, round_polynomial, BranchOutcome, ConstructResult, SearchMode};
pub use dual::{dual_orbit, DualOrbit};
pub use fixtures::{orbit_example, orbit_examples, orbit_fixture_digest, unit_quartic, unit_quartic_generators, OrbitExample, ORBIT_SHA256};
pub use maps::{compose_maps_mod, verify_permutation_polynomial, verify_tschirnhaus, PermutationCheck, RationalMap};
pub use orbit::{OrbitSpec, OrbitValue, QuadElt};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::exactalg::numtheory::{inv_mod, units_mod};
use crate::{ForgeError, Result};

/// `<q>`: the representative of `q` in `[0, n)`, for `q` with denominator
/// invertible modulo `n`.
pub fn reduce_mod(q: &BigRational, n: u64) -> Result<u64> {
    let nb = BigInt::from(n);
    let den = q.denom().mod_floor(&nb).to_u64().expect("residue fits u64");
    let inv = inv_mod(den, n).ok_or(ForgeError::NotInvertible)?;
    let num = q.numer().mod_floor(&nb).to_u64().expect("residue fits u64");
    Ok(crate::exactalg::numtheory::mul_mod(num, inv, n))
}

/// Index data `I_n` and the exponent table `E[i][j] = <j/i>`, together with
/// a branch choice `k_i`: `c_i` is the principal `n`-th root of `b_i` times
/// `zeta^(k_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventConfig {
    pub n: u64,
    pub units: Vec<u64>,
    pub exponents: Vec<Vec<u64>>,
    pub branch: Vec<u64>,
}

impl ResolventConfig {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(ForgeError::Precondition("resolvent needs n >= 2".into()));
        }
        let units = units_mod(n);
        let exponents = units
            .iter()
            .map(|&i| {
                units
                    .iter()
                    .map(|&j| reduce_mod(&BigRational::new(j.into(), i.into()), n))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let branch = vec![0; units.len()];
        Ok(ResolventConfig { n, units, exponents, branch })
    }

    pub fn with_branch(mut self, branch: Vec<u64>) -> Result<Self> {
        if branch.len() != self.units.len() || branch.iter().any(|&k| k >= self.n) {
            return Err(ForgeError::Precondition(format!(
                "branch needs {} entries in [0, {})",
                self.units.len(),
                self.n
            )));
        }
        self.branch = branch;
        Ok(self)
    }

    /// `phi(n)`.
    pub fn width(&self) -> usize {
        self.units.len()
    }

    /// Exponent of `zeta` that a branch `k` multiplies into `e_j`:
    /// `sum_i k_i <j/i> mod n`.
    pub fn branch_twist(&self, branch: &[u64], j_index: usize) -> u64 {
        branch
            .iter()
            .zip(&self.exponents)
            .map(|(k, row)| k * row[j_index])
            .sum::<u64>()
            % self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn reduce_mod_examples() {
        assert_eq!(reduce_mod(&q(1, 2), 5).unwrap(), 3);
        assert_eq!(reduce_mod(&q(7, 1), 5).unwrap(), 2);
        assert_eq!(reduce_mod(&q(3, 4), 7).unwrap(), 6);
        assert_eq!(reduce_mod(&q(-1, 1), 5).unwrap(), 4);
        assert!(reduce_mod(&q(1, 5), 5).is_err());
    }

    fn quad(a: i64, b: i64, d: i64, den: i64) -> QuadElt {
        QuadElt::new(a, b, d, den)
    }

    #[test]
    fn both_dihedral_quintics_from_their_orbits() {
        let cfg = ResolventConfig::new(5).unwrap();
        let a47 = [quad(-13, 1, -47, 1), quad(-21, -1, -47, 2), quad(-21, 1, -47, 2), quad(-13, -1, -47, 1)];
        let d = dual_orbit(5, &a47, 2).unwrap();
        let r = construct_pn(&cfg, &d.orbit, SearchMode::Exhaustive, None, 256).unwrap();
        assert_eq!(r.poly, crate::ipoly(&[443629, 5860, -2605, -10, 0, 1]));
        assert_eq!(r.branches_tried, 625);
        let a235 = [quad(-21, 1, -235, 2), quad(-13, 0, 0, 1), quad(-13, 0, 0, 1), quad(-21, -1, -235, 2)];
        let d2 = dual_orbit(5, &a235, 2).unwrap();
        assert_eq!(d2.poly, d.poly);
        let r2 = construct_pn(&cfg, &d2.orbit, SearchMode::Exhaustive, None, 256).unwrap();
        assert_eq!(r2.poly, crate::ipoly(&[167504, 5860, -2605, -10, 0, 1]));
        let sigma = RationalMap::new(crate::ipoly(&[234, 4186, -377, 8]), 5);
        let sigma_inv = RationalMap::new(crate::ipoly(&[-234, -6786, 612, -13]), 5);
        assert!(d.advanced_by(&sigma, 256).unwrap() != d2.advanced_by(&sigma, 256).unwrap());
        assert!(d.advanced_by(&sigma, 256).unwrap() || d.advanced_by(&sigma_inv, 256).unwrap());
    }

    #[test]
    fn exponent_table_inverts_rows() {
        for n in [5u64, 7, 9] {
            let cfg = ResolventConfig::new(n).unwrap();
            for (a, &i) in cfg.units.iter().enumerate() {
                for (b, &j) in cfg.units.iter().enumerate() {
                    assert_eq!(i * cfg.exponents[a][b] % n, j);
                }
            }
        }
    }
}
