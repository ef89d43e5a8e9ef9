use num_bigint::BigInt;
use num_integer::Integer as _;
use serde::{Deserialize, Serialize};

use crate::exactalg::intpoly::{disc_in_t, eval_t};
use crate::exactalg::modp::{is_irreducible_mod_p, FpPoly};
use crate::exactalg::sturm_real_roots;
use crate::families::family;
use crate::{ipoly, BiPoly, ForgeError, IntPoly, Result};

/// `6912t^4 - 3456t^3 - 95472t^2 + 23976t - 1417`
pub fn pair_discriminant_root() -> IntPoly {
    ipoly(&[-1417, 23976, -95472, -3456, 6912])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealRootCounts {
    pub t: i64,
    pub septic: usize,
    pub octic: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PglPairReport {
    pub septic_disc_is_q_squared: bool,
    pub octic_disc_is_q_squared: bool,
    /// The septic reduces to `x^7 + x^6 + x^5 + x^2 + 1` mod 2 for both parities of `t`.
    pub septic_mod2_constant: bool,
    /// Odd `t`: `y (y^7 + y + 1)` with the septic factor irreducible mod 2.
    pub octic_mod2_odd: bool,
    /// Even `t`: `(y + 1)(y^7 + y^6 + y^5 + y^4 + y^3 + y^2 + 1)`, likewise.
    pub octic_mod2_even: bool,
    /// `Q(t) = 1` as a polynomial over `F_2`.
    pub q_odd: bool,
    pub real_roots: Vec<RealRootCounts>,
    pub septic_three_real: bool,
    pub octic_four_real: bool,
}

impl PglPairReport {
    pub fn all_pass(&self) -> bool {
        self.septic_disc_is_q_squared
            && self.octic_disc_is_q_squared
            && self.septic_mod2_constant
            && self.octic_mod2_odd
            && self.octic_mod2_even
            && self.q_odd
            && self.septic_three_real
            && self.octic_four_real
    }
}

fn mod2_at_parity(f: &BiPoly, parity: i64) -> FpPoly {
    FpPoly::from_int(&eval_t(f, &BigInt::from(parity)), 2)
}

fn f2(coeffs: &[u64]) -> FpPoly {
    FpPoly::new(2, coeffs.to_vec())
}

fn split_as(f: &FpPoly, linear: &FpPoly, septic: &FpPoly) -> bool {
    *f == linear.mul(septic) && is_irreducible_mod_p(&septic.to_int(), 2)
}

/// Checks on the `PGL(3,2)` septic and its `2^3` octic extension over `t` in `ts`.
pub fn pgl_pair_checks(ts: &[i64]) -> Result<PglPairReport> {
    let spec = family("T15")?;
    let octic = &spec.main.coeffs;
    let septic = &spec
        .subfield
        .as_ref()
        .ok_or_else(|| ForgeError::Precondition("T15 septic missing".into()))?
        .coeffs;
    let q = pair_discriminant_root();
    let q2 = &q * &q;
    let septic_disc_is_q_squared = disc_in_t(septic)? == q2;
    let octic_disc_is_q_squared = disc_in_t(octic)? == q2;

    // t enters only through its parity mod 2
    let septic_target = f2(&[1, 0, 1, 0, 0, 1, 1, 1]);
    let septic_mod2_constant = mod2_at_parity(septic, 0) == septic_target && mod2_at_parity(septic, 1) == septic_target;
    let octic_mod2_odd = split_as(&mod2_at_parity(octic, 1), &f2(&[0, 1]), &f2(&[1, 1, 0, 0, 0, 0, 0, 1]));
    let octic_mod2_even = split_as(&mod2_at_parity(octic, 0), &f2(&[1, 1]), &f2(&[1, 0, 1, 1, 1, 1, 1, 1]));
    let q_odd = FpPoly::from_int(&q, 2) == FpPoly::one(2);

    let real_roots: Vec<RealRootCounts> = ts
        .iter()
        .map(|&t| {
            let tb = BigInt::from(t);
            RealRootCounts { t, septic: sturm_real_roots(&eval_t(septic, &tb)), octic: sturm_real_roots(&eval_t(octic, &tb)) }
        })
        .collect();
    let septic_three_real = real_roots.iter().all(|r| r.septic == 3);
    let octic_four_real = real_roots.iter().all(|r| r.octic == 4);
    Ok(PglPairReport {
        septic_disc_is_q_squared,
        octic_disc_is_q_squared,
        septic_mod2_constant,
        octic_mod2_odd,
        octic_mod2_even,
        q_odd,
        real_roots,
        septic_three_real,
        octic_four_real,
    })
}

/// `Q(t)` is odd at every integer `t` in the range (a sampled restatement of `q_odd`).
pub fn q_odd_on(range: std::ops::RangeInclusive<i64>) -> bool {
    let q = pair_discriminant_root();
    range.into_iter().all(|t| q.eval(&BigInt::from(t)).is_odd())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_claims() {
        let r = pgl_pair_checks(&[-3, 0, 1, 10]).unwrap();
        assert!(r.septic_disc_is_q_squared);
        assert!(r.octic_disc_is_q_squared);
        assert!(r.septic_mod2_constant);
        assert!(r.octic_mod2_odd && r.octic_mod2_even);
        assert!(r.q_odd);
        assert!(r.septic_three_real, "{:?}", r.real_roots);
        assert!(r.all_pass(), "{r:?}");
        assert!(q_odd_on(-50..=50));
    }
}
