//! Property tests for the algebraic invariants, checked against independent
//! oracles where one is cheap.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use crate::certify::{compose, cycle_type, dedekind_p_maximal, group_table, GROUP_NAMES};
use crate::cheblucas::{
    admissible_thm2, admissible_thm3_refined, cheb_monic, lucas_number, lucas_poly, pell_witness, radical_root_witness,
};
use crate::exactalg::modp::degree_pattern;
use crate::exactalg::{discriminant, factor_over_z, hensel_lift_root, newton_converges, resultant, FpPoly};
use crate::IntPoly;

fn poly_strategy(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|v| crate::ipoly(&v))
}

fn monic_strategy(deg: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = IntPoly> {
    deg.prop_flat_map(move |d| prop::collection::vec(-bound..=bound, d)).prop_map(|mut v| {
        v.push(1);
        crate::ipoly(&v)
    })
}

/// Fraction-free (Bareiss) determinant.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    if size == 0 {
        return BigInt::from(1);
    }
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in f.coeffs().iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in g.coeffs().iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    bareiss(rows)
}

fn squarefree_kernel(n: i64) -> (i64, i64) {
    // n = f^2 s with s squarefree; returns (s, f)
    let (mut s, mut f) = (n.signum(), 1i64);
    let mut m = n.abs();
    let mut q = 2;
    while q * q <= m {
        while m % (q * q) == 0 {
            m /= q * q;
            f *= q;
        }
        if m % q == 0 {
            m /= q;
            s *= q;
        }
        q += 1;
    }
    (s * m, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chebyshev_composition(m in 1u32..=8, n in 1u32..=8) {
        prop_assume!(m * n <= 32);
        prop_assert_eq!(cheb_monic(m * n), cheb_monic(m).compose(&cheb_monic(n)));
    }

    #[test]
    fn chebyshev_is_frobenius_mod_p(i in 0usize..6) {
        let p = [2u64, 3, 5, 7, 11, 13][i];
        let xp = IntPoly::monomial(1.into(), p as usize);
        prop_assert_eq!(FpPoly::from_int(&cheb_monic(p as u32), p), FpPoly::from_int(&xp, p));
    }

    #[test]
    fn chebyshev_evaluates_power_sums(n in 0u32..20, y in 1i64..6) {
        // x^(.n)(y + 1/y) = y^n + 1/y^n, scaled by y^n
        let x = num_rational::BigRational::new((y * y + 1).into(), y.into());
        let lhs = cheb_monic(n)
            .coeffs()
            .iter()
            .rev()
            .fold(num_rational::BigRational::zero(), |acc, c| acc * &x + num_rational::BigRational::from_integer(c.clone()));
        let yb = BigInt::from(y);
        let rhs = num_rational::BigRational::new(yb.pow(2 * n) + 1, yb.pow(n));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lucas_composition_for_odd_indices(a in 0u32..5, b in 0u32..5) {
        let (m, n) = (2 * a + 1, 2 * b + 1);
        prop_assert_eq!(lucas_poly(m * n), lucas_poly(m).compose(&lucas_poly(n)));
    }

    #[test]
    fn lucas_numbers_are_lucas_polynomials_at_one(i in 0u32..60) {
        prop_assert_eq!(lucas_poly(i).eval(&1.into()), lucas_number(i as i64));
    }

    #[test]
    fn lucas_negative_index(i in 0i64..80) {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(lucas_number(-i), sign * lucas_number(i));
    }

    #[test]
    fn pell_closed_forms(i in -3i64..=3) {
        let b = |k: i64| 2 * lucas_number(20 * k - 5);
        prop_assert!(pell_witness(&b(i), 16).is_some());
        prop_assert_eq!(b(i + 1), 15127 * b(i) - b(i - 1));
        let c = |k: i64| lucas_number(4 * k - 1);
        prop_assert!(pell_witness(&c(i), 4).is_some());
        prop_assert_eq!(c(i + 1), 7 * c(i) - c(i - 1));
    }

    #[test]
    fn resultant_matches_sylvester(f in poly_strategy(5, 20), g in poly_strategy(5, 20)) {
        prop_assume!(f.degree().is_some() && g.degree().is_some());
        prop_assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g));
    }

    #[test]
    fn resultant_is_multiplicative(f in monic_strategy(1..=3, 9), g in monic_strategy(1..=3, 9), h in monic_strategy(1..=3, 9)) {
        prop_assert_eq!(resultant(&(&f * &g), &h), resultant(&f, &h) * resultant(&g, &h));
        let sign = if f.degree().unwrap() * g.degree().unwrap() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(resultant(&f, &g), sign * resultant(&g, &f));
    }

    #[test]
    fn discriminant_of_product(f in monic_strategy(1..=3, 9), g in monic_strategy(1..=3, 9)) {
        let r = resultant(&f, &g);
        prop_assert_eq!(discriminant(&(&f * &g)).unwrap(), discriminant(&f).unwrap() * discriminant(&g).unwrap() * &r * &r);
    }

    #[test]
    fn quadratic_discriminant(b in -50i64..50, c in -50i64..50) {
        let f = crate::ipoly(&[c, b, 1]);
        prop_assert_eq!(discriminant(&f).unwrap(), BigInt::from(b * b - 4 * c));
    }

    #[test]
    fn factorization_reproduces_input(f in monic_strategy(1..=3, 6), g in monic_strategy(1..=3, 6)) {
        let h = &f * &g;
        let fac = factor_over_z(&h).unwrap();
        prop_assert_eq!(fac.expand(), h.clone());
        let degs: usize = fac.factors.iter().map(|(q, e)| q.degree().unwrap() * *e as usize).sum();
        prop_assert_eq!(degs, h.degree().unwrap());
    }

    #[test]
    fn degree_pattern_sums_to_degree(f in monic_strategy(2..=7, 30), i in 0usize..5) {
        let p = [3u64, 5, 7, 11, 101][i];
        if let Some(pattern) = degree_pattern(&f, p) {
            prop_assert_eq!(pattern.iter().sum::<usize>(), f.degree().unwrap());
        }
    }

    #[test]
    fn hensel_lifts_are_compatible(f in monic_strategy(2..=5, 30), i in 0usize..4, k in 2u32..8) {
        let p = [3u64, 5, 7, 11][i];
        let root = (0..p as i64).map(BigInt::from).find(|u| newton_converges(&f, p, u).map(|c| c.converges).unwrap_or(false));
        prop_assume!(root.is_some());
        let u = root.unwrap();
        let low = hensel_lift_root(&f, p, &u, k).unwrap();
        let high = hensel_lift_root(&f, p, &u, 2 * k).unwrap();
        prop_assert_eq!(high.truncate(k), low);
        let m = BigInt::from(p).pow(2 * k);
        prop_assert!((f.eval(&high.value) % &m).is_zero());
    }

    #[test]
    fn dedekind_on_quadratics(b in -60i64..60, c in -60i64..60, i in 0usize..4) {
        let p = [2i64, 3, 5, 7][i];
        let d = b * b - 4 * c;
        prop_assume!(d != 0);
        let (s, _) = squarefree_kernel(d);
        prop_assume!(s != 1);
        // d = index^2 d_K, and Z[x]/(f) is p-maximal exactly when p does not divide the index
        let dk = if s.rem_euclid(4) == 1 { s } else { 4 * s };
        let index2 = d / dk;
        let oracle = index2 % (p * p) != 0;
        let r = dedekind_p_maximal(&crate::ipoly(&[c, b, 1]), p as u64).unwrap();
        prop_assert_eq!(r.maximal, oracle, "d = {}, d_K = {}", d, dk);
    }

    #[test]
    fn group_tables_are_closed(i in 0usize..GROUP_NAMES.len(), a in 0usize..2000, b in 0usize..2000) {
        let t = group_table(GROUP_NAMES[i]).unwrap();
        prop_assert_eq!(t.histogram.values().sum::<usize>(), t.order);
        prop_assert_eq!(t.order, t.elements.len());
        let (x, y) = (&t.elements[a % t.order], &t.elements[b % t.order]);
        prop_assert!(t.contains(&compose(x, y)));
        prop_assert_eq!(cycle_type(x).iter().sum::<usize>(), t.degree);
    }

    #[test]
    fn chebyshev_admissible_values_have_roots(j in -400i64..400, k in 1u32..=2) {
        let j = BigInt::from(j);
        if admissible_thm2(&j, 5, k).unwrap().admissible {
            prop_assert!(radical_root_witness(&j, 5, false, 4 * k + 6).unwrap().is_some());
        }
    }

    #[test]
    fn refined_lucas_admissible_values_have_roots(j in -400i64..400, i in 0usize..3) {
        let p = [5u64, 13, 17][i];
        let j = BigInt::from(j);
        if admissible_thm3_refined(&j, p, 1).unwrap().admissible {
            prop_assert!(radical_root_witness(&j, p, true, 10).unwrap().is_some());
        }
    }
}

#[test]
fn sylvester_oracle_sanity() {
    // res(x^2 - 2, x - 1) = -1
    let f = crate::ipoly(&[-2, 0, 1]);
    let g = crate::ipoly(&[-1, 1]);
    assert_eq!(sylvester_resultant(&f, &g), BigInt::from(-1));
    assert_eq!(squarefree_kernel(-12), (-3, 2));
    assert_eq!(squarefree_kernel(50), (2, 5));
}
