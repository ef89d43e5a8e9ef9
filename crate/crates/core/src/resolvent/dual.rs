use num_traits::Zero;

use super::construct::{expand_roots, round_polynomial};
use super::maps::RationalMap;
use super::{OrbitSpec, OrbitValue, QuadElt};
use crate::cyclotomic::{ComplexApprox, DEFAULT_PRECISION, MAX_PRECISION};
use crate::exactalg::numtheory::{gcd_u64, units_mod};
use crate::{ForgeError, IntPoly, Result};

/// The dual orbit `b_m = sum_k a_k zeta^<mk>` of an `a`-orbit.
#[derive(Clone, Debug)]
pub struct DualOrbit {
    pub n: u64,
    pub generator: u64,
    /// Powers `g^0, g^1, ...` of the generator: `b` listed in this order is
    /// the cyclic ordering of the orbit.
    pub cycle: Vec<u64>,
    /// The `b_m` indexed by `I_n` ascending.
    pub orbit: OrbitSpec,
    /// Monic integer polynomial with roots `b_m`.
    pub poly: IntPoly,
    /// All `b_m` coincide.
    pub degenerate: bool,
    pub precision: u32,
}

impl DualOrbit {
    /// Numeric values in cyclic order.
    pub fn cycle_values(&self, prec: u32) -> Result<Vec<ComplexApprox>> {
        let units = units_mod(self.n);
        let vals = self.orbit.evaluate(prec)?;
        Ok(self
            .cycle
            .iter()
            .map(|m| vals[units.binary_search(m).expect("unit")].clone())
            .collect())
    }

    /// `true` when `sigma(b_{g^i}) = b_{g^(i+1)}` for all `i`, checked on balls.
    pub fn advanced_by(&self, sigma: &RationalMap, prec: u32) -> Result<bool> {
        let vals = self.cycle_values(prec)?;
        let inv_den = num_rational::BigRational::new(1.into(), sigma.den.clone());
        let scale = ComplexApprox::from_rational(&inv_den, prec);
        Ok((0..vals.len()).all(|i| {
            let image = sigma
                .num
                .coeffs()
                .iter()
                .rev()
                .fold(ComplexApprox::zero(prec), |acc, c| acc.mul(&vals[i]).add(&ComplexApprox::from_int(c, prec)))
                .mul(&scale);
            image.overlaps(&vals[(i + 1) % vals.len()])
        }))
    }
}

fn is_generator(g: u64, n: u64) -> bool {
    let width = units_mod(n).len();
    let mut x = 1 % n;
    for k in 1..=width {
        x = x * g % n;
        if x == 1 % n {
            return k == width;
        }
    }
    false
}

/// Dual orbit of `a` (indexed by `I_n` ascending), with its integer minimal
/// polynomial found by rounding and verified against every `b_m`.
///
/// The `a`-values must be closed under complex conjugation in the pattern
/// `conj(a_k) = a_(n-k)`, which makes the `b_m` real conjugates.
pub fn dual_orbit(n: u64, a: &[QuadElt], generator: u64) -> Result<DualOrbit> {
    let units = units_mod(n);
    if n < 3 || a.len() != units.len() {
        return Err(ForgeError::NotAnOrbit(format!("need {} a-values for n = {n}", units.len())));
    }
    if gcd_u64(generator, n) != 1 || !is_generator(generator % n, n) {
        return Err(ForgeError::Precondition(format!("{generator} does not generate (Z/{n})^*")));
    }
    for (idx, &k) in units.iter().enumerate() {
        let partner = units.binary_search(&(n - k)).expect("unit");
        let conj_is_imaginary = a[idx].d.is_zero() || a[idx].d < 0.into();
        if conj_is_imaginary && !a[idx].conj().same_value(&a[partner]) {
            return Err(ForgeError::NotAnOrbit(format!("conj(a_{k}) != a_{}", n - k)));
        }
    }
    let orbit = OrbitSpec {
        n,
        values: units
            .iter()
            .map(|&m| OrbitValue::DualSum { n, m, a: a.to_vec() })
            .collect(),
        provenance: format!("dual orbit b_m = sum a_k zeta^<mk>, generator {generator}"),
    };
    let mut cycle = vec![1 % n];
    while cycle.len() < units.len() {
        cycle.push(cycle.last().unwrap() * generator % n);
    }
    let mut prec = DEFAULT_PRECISION;
    loop {
        let vals: Vec<ComplexApprox> = orbit.values.iter().map(|v| v.evaluate(prec)).collect::<Result<_>>()?;
        if let Some(poly) = round_polynomial(&expand_roots(&vals, prec)) {
            let roots_ok = vals.iter().all(|b| {
                poly.coeffs()
                    .iter()
                    .rev()
                    .fold(ComplexApprox::zero(prec), |acc, c| acc.mul(b).add(&ComplexApprox::from_int(c, prec)))
                    .contains_zero()
            });
            if roots_ok {
                let degenerate = vals.windows(2).all(|w| w[0].overlaps(&w[1]));
                return Ok(DualOrbit { n, generator, cycle, orbit, poly, degenerate, precision: prec });
            }
        }
        if prec >= MAX_PRECISION {
            return Err(ForgeError::Rounding(format!("dual orbit polynomial did not round at {prec} bits")));
        }
        prec *= 2;
    }
}
