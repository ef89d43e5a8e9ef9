//! Chebyshev powers `x^(.n)`, Lucas polynomials and numbers, the Pell-type
//! sequences behind the Lucas-indexed families, and the admissibility tests
//! for Chebyshev and Lucas radicals.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::numtheory::{exact_sqrt, is_prime};
use crate::exactalg::padic::{find_newton_witness, hensel_lift_root, PAdicInt};
use crate::{ipoly, ForgeError, IntPoly, Result};

/// Monic Chebyshev power `x^(.n)` with `x^(.n)(y + 1/y) = y^n + 1/y^n`.
///
/// `x^(.0) = 2` is the constant that starts the recurrence.
pub fn cheb_monic(n: u32) -> IntPoly {
    let x = ipoly(&[0, 1]);
    let (mut prev, mut cur) = (ipoly(&[2]), x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Lucas polynomial `L_n` with `L_n(a + b) = a^n + b^n` whenever `ab = -1`.
pub fn lucas_poly(n: u32) -> IntPoly {
    let x = ipoly(&[0, 1]);
    let (mut prev, mut cur) = (ipoly(&[2]), x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&x * &cur) + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Lucas number `L_i` for any integer index, with `L_(-i) = (-1)^i L_i`.
pub fn lucas_number(i: i64) -> BigInt {
    let n = i.unsigned_abs();
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    if i < 0 && n % 2 == 1 {
        -a
    } else {
        a
    }
}

/// `sum_(j in I_n) a^j b^(n-j)` rewritten in `x = a + b` under `ab = 1`:
/// the pairs `j, n - j` contribute `x^(.(n - 2j))`.
pub fn resolvent_identity(n: u32) -> IntPoly {
    (1..n)
        .filter(|&j| j.gcd(&n) == 1 && 2 * j < n)
        .fold(IntPoly::zero(), |acc, j| &acc + &cheb_monic(n - 2 * j))
}

/// A linear recurrence `a_i = c1 a_(i-1) + c2 a_(i-2)` whose terms `t` satisfy
/// `t^2 + c = 5 s^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSequence {
    pub name: String,
    pub recurrence: (i64, i64),
    /// The constant `c` of the quadratic form `t^2 + c = 5 s^2`.
    pub form_c: i64,
    #[serde(with = "crate::exactalg::serial::bigint_vec")]
    pub terms: Vec<BigInt>,
}


/// Names accepted by [`pell_sequence`].
pub const PELL_SEQUENCES: [&str; 4] = ["T4_t2p16", "T6_t2p4", "T4_unramified_b", "T7_b"];

impl PellSequence {
    /// `s` with `t^2 + c = 5 s^2`, if the term satisfies the form.
    pub fn form_witness(&self, t: &BigInt) -> Option<BigInt> {
        pell_witness(t, self.form_c)
    }

    /// Every term satisfies the form.
    pub fn check_form(&self) -> bool {
        self.terms.iter().all(|t| self.form_witness(t).is_some())
    }
}

/// `s >= 0` with `t^2 + c = 5 s^2`.
pub fn pell_witness(t: &BigInt, c: i64) -> Option<BigInt> {
    let v = t * t + c;
    let (q, r) = v.div_rem(&BigInt::from(5));
    if !r.is_zero() {
        return None;
    }
    exact_sqrt(&q)
}

/// First `count` terms of a catalogued Pell-type sequence.
pub fn pell_sequence(name: &str, count: usize) -> Result<PellSequence> {
    let (start, recurrence, form_c): ([i64; 2], (i64, i64), i64) = match name {
        "T4_t2p16" => ([2, 8], (3, -1), 16),
        "T6_t2p4" => ([1, 4], (3, -1), 4),
        "T4_unramified_b" => ([-22, 2728], (15127, -1), 16),
        "T7_b" => ([-1, 4], (7, -1), 4),
        _ => return Err(ForgeError::UnknownSequence(name.to_string())),
    };
    let mut terms: Vec<BigInt> = start.iter().map(|&v| BigInt::from(v)).collect();
    while terms.len() < count {
        let k = terms.len();
        let next = &terms[k - 1] * recurrence.0 + &terms[k - 2] * recurrence.1;
        terms.push(next);
    }
    terms.truncate(count);
    Ok(PellSequence { name: name.to_string(), recurrence, form_c, terms })
}

/// Roots of `g(x) - x` modulo `p^k`: brute force when `p^k <= 10^6`,
/// otherwise Hensel lifts of the roots modulo `p`.
fn fixed_points_of(g: &IntPoly, p: u64, k: u32) -> Result<Vec<PAdicInt>> {
    if !is_prime(p) {
        return Err(ForgeError::NotPrime(p));
    }
    let h = g - &ipoly(&[0, 1]);
    let modulus = BigInt::from(p).pow(k);
    let mut out: Vec<PAdicInt> = if modulus <= BigInt::from(1_000_000) {
        let m = modulus.to_u64().expect("small modulus");
        (0..m)
            .filter(|&r| (h.eval(&BigInt::from(r)) % &modulus).is_zero())
            .map(|r| PAdicInt::new(p, k, &BigInt::from(r)))
            .collect()
    } else {
        let pb = BigInt::from(p);
        let mut v = Vec::new();
        for r in 0..p {
            let r = BigInt::from(r);
            if !(h.eval(&r) % &pb).is_zero() {
                continue;
            }
            v.push(hensel_lift_root(&h, p, &r, k)?);
        }
        v
    };
    out.sort_by(|a, b| a.value.cmp(&b.value));
    Ok(out)
}

/// Fixed points of `x^(.p)` modulo `p^k`.
///
/// `x^(.p) - x` reduces to `x^p - x` mod `p`, whose derivative is `-1`, so
/// every residue class lifts to exactly one `p`-adic fixed point: the set has
/// `p` elements, `2` among them.
pub fn cheb_fixed_points_mod(p: u64, k: u32) -> Result<Vec<PAdicInt>> {
    if p == 2 {
        return Err(ForgeError::Precondition("odd prime required".into()));
    }
    fixed_points_of(&cheb_monic(p as u32), p, k)
}

/// Fixed points of `L_p` modulo `p^k`.
pub fn lucas_fixed_points_mod(p: u64, k: u32) -> Result<Vec<PAdicInt>> {
    if p == 2 {
        return Err(ForgeError::Precondition("odd prime required".into()));
    }
    fixed_points_of(&lucas_poly(p as u32), p, k)
}

/// `|m| <= max(3, ceil(|j|^(1/p)) + 2)`. Both `x^(.p)` and `L_p` are odd
/// for odd `p` and increasing beyond 2 in absolute value, with
/// `|g(m)| >= |m|^p - p |m|^(p-2)`, so larger `|m|` overshoot `|j|`.
fn preimage_bound(j: &BigInt, p: u32) -> i64 {
    let root = j.abs().nth_root(p).to_i64().unwrap_or(i64::MAX - 3);
    3.max(root + 3)
}

fn integer_preimage(g: &IntPoly, j: &BigInt, p: u32) -> Option<BigInt> {
    let bound = preimage_bound(j, p);
    (-bound..=bound).map(BigInt::from).find(|m| g.eval(m) == *j)
}

/// `m` with `m^(.p) = j`, if `j` is a `p`-th Chebyshev power of an integer.
pub fn is_cheb_power(j: &BigInt, p: u64) -> Option<BigInt> {
    integer_preimage(&cheb_monic(p as u32), j, p as u32)
}

/// `m` with `L_p(m) = j`, if any.
pub fn is_lucas_value(j: &BigInt, p: u64) -> Option<BigInt> {
    integer_preimage(&lucas_poly(p as u32), j, p as u32)
}

/// Outcome of an admissibility predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub reason: String,
    /// The fixed point (or square root of -2) that `j` matched.
    #[serde(with = "crate::exactalg::serial::opt_bigint")]
    pub matched: Option<BigInt>,
    /// Modulus of the matching congruence.
    #[serde(with = "crate::exactalg::serial::opt_bigint")]
    pub modulus: Option<BigInt>,
}


impl Admissibility {
    fn no(reason: impl Into<String>) -> Self {
        Admissibility { admissible: false, reason: reason.into(), matched: None, modulus: None }
    }

    fn yes(reason: String, matched: BigInt, modulus: BigInt) -> Self {
        Admissibility { admissible: true, reason, matched: Some(matched), modulus: Some(modulus) }
    }
}

fn check_odd_prime(p: u64, k: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(ForgeError::NotPrime(p));
    }
    if p == 2 {
        return Err(ForgeError::Precondition("odd prime required".into()));
    }
    if k == 0 {
        return Err(ForgeError::Precondition("k must be positive".into()));
    }
    Ok(())
}

/// Match `j` against fixed points: modulo `p^(2k+1)` for those congruent to
/// a value in `special`, modulo `p^(k+1)` for the others.
fn match_fixed_points(j: &BigInt, fixed: &[PAdicInt], p: u64, k: u32, special: &[i64]) -> Option<(BigInt, BigInt)> {
    let pb = BigInt::from(p);
    for fp in fixed {
        let is_special = special.iter().any(|s| ((&fp.value - s) % &pb).is_zero());
        let e = if is_special { 2 * k + 1 } else { k + 1 };
        let m = pb.pow(e);
        if ((j - &fp.value) % &m).is_zero() {
            return Some((fp.value.mod_floor(&m), m));
        }
    }
    None
}

/// Chebyshev-radical admissibility: `j` is not `m^(.p)` for an integer `m`,
/// and `j` is congruent to a fixed point `m` of `x^(.p)` modulo `p^(2k+1)`
/// when `m = +-2 mod p`, or modulo `p^(k+1)` otherwise.
pub fn admissible_thm2(j: &BigInt, p: u64, k: u32) -> Result<Admissibility> {
    check_odd_prime(p, k)?;
    if let Some(m) = is_cheb_power(j, p) {
        return Ok(Admissibility::no(format!("{j} = {m}^(.{p}) is a Chebyshev power")));
    }
    let fixed = cheb_fixed_points_mod(p, 2 * k + 1)?;
    Ok(match match_fixed_points(j, &fixed, p, k, &[2, -2]) {
        Some((m, modulus)) => Admissibility::yes(format!("j = {m} mod {modulus}, a fixed point of x^(.{p})"), m, modulus),
        None => Admissibility::no("j is not congruent to a fixed point to the required precision"),
    })
}

/// Lucas-radical admissibility. For `p = 1 mod 4`: `j` is not `L_p(m)` and
/// is a fixed point of `L_p` modulo `p^(k+1)`. For `p = 3 mod 4`: `j` is
/// congruent to a square root of `-2` modulo `p^(2k+1)`, or to one of the
/// other fixed points modulo `p^(k+1)`; Lucas values `L_p(m)` are excluded
/// in both cases.
pub fn admissible_thm3(j: &BigInt, p: u64, k: u32) -> Result<Admissibility> {
    check_odd_prime(p, k)?;
    if let Some(m) = is_lucas_value(j, p) {
        return Ok(Admissibility::no(format!("{j} = L_{p}({m}) is a Lucas value")));
    }
    let pb = BigInt::from(p);
    let fixed = lucas_fixed_points_mod(p, k + 1)?;
    if p % 4 == 3 {
        let m = pb.pow(2 * k + 1);
        for root in sqrt_minus_two_mod(p, 2 * k + 1)? {
            if ((j - &root.value) % &m).is_zero() {
                return Ok(Admissibility::yes(
                    format!("j = {} mod {m}, a square root of -2", root.value),
                    root.value,
                    m,
                ));
            }
        }
        let roots_mod_p: Vec<BigInt> = sqrt_minus_two_mod(p, 1)?.into_iter().map(|r| r.value).collect();
        let others: Vec<PAdicInt> = fixed
            .into_iter()
            .filter(|f| !roots_mod_p.iter().any(|r| ((&f.value - r) % &pb).is_zero()))
            .collect();
        return Ok(match match_fixed_points(j, &others, p, k, &[]) {
            Some((v, m)) => Admissibility::yes(format!("j = {v} mod {m}, a fixed point of L_{p}"), v, m),
            None => Admissibility::no("j matches neither sqrt(-2) nor another fixed point"),
        });
    }
    Ok(match match_fixed_points(j, &fixed, p, k, &[]) {
        Some((v, m)) => Admissibility::yes(format!("j = {v} mod {m}, a fixed point of L_{p}"), v, m),
        None => Admissibility::no("j is not congruent to a fixed point of L_p"),
    })
}

/// [`admissible_thm3`] with the precision fixed at the critical points of
/// `L_p`. For `p = 1 mod 4` the fixed points congruent to `+-sqrt(-4)` mod `p`
/// are where `L_p'` vanishes mod `p^2`, and there `L_p(x) = j` is solvable
/// only when `j` matches the fixed point mod `p^(2k+1)`, as for `+-2` in the
/// Chebyshev case. Other cases defer to [`admissible_thm3`].
pub fn admissible_thm3_refined(j: &BigInt, p: u64, k: u32) -> Result<Admissibility> {
    check_odd_prime(p, k)?;
    if p % 4 == 3 {
        return admissible_thm3(j, p, k);
    }
    if let Some(m) = is_lucas_value(j, p) {
        return Ok(Admissibility::no(format!("{j} = L_{p}({m}) is a Lucas value")));
    }
    let critical: Vec<i64> = (1..p as i64).filter(|r| (r * r + 4) % p as i64 == 0).collect();
    let fixed = lucas_fixed_points_mod(p, 2 * k + 1)?;
    Ok(match match_fixed_points(j, &fixed, p, k, &critical) {
        Some((v, m)) => Admissibility::yes(format!("j = {v} mod {m}, a fixed point of L_{p}"), v, m),
        None => Admissibility::no("j is not congruent to a fixed point of L_p to the required precision"),
    })
}

/// Square roots of `-2` modulo `p^e` (empty when `-2` is a non-residue).
pub fn sqrt_minus_two_mod(p: u64, e: u32) -> Result<Vec<PAdicInt>> {
    let f = ipoly(&[2, 0, 1]);
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    for r in 1..p {
        let r = BigInt::from(r);
        if (f.eval(&r) % &pb).is_zero() {
            out.push(hensel_lift_root(&f, p, &r, e)?);
        }
    }
    out.sort_by(|a, b| a.value.cmp(&b.value));
    Ok(out)
}

/// Newton witness for a root of `x^(.p) - j` (or `L_p(x) - j`), searched
/// among residues up to `p^max_exponent`.
pub fn radical_root_witness(j: &BigInt, p: u64, lucas: bool, max_exponent: u32) -> Result<Option<PAdicInt>> {
    let g = if lucas { lucas_poly(p as u32) } else { cheb_monic(p as u32) };
    let f = &g - &IntPoly::constant(j.clone());
    match find_newton_witness(&f, p, max_exponent, 200_000)? {
        Some((u, _)) => Ok(Some(hensel_lift_root(&f, p, &u, max_exponent + 2)?)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn chebyshev_examples() {
        assert_eq!(cheb_monic(1), ipoly(&[0, 1]));
        assert_eq!(cheb_monic(2), ipoly(&[-2, 0, 1]));
        assert_eq!(cheb_monic(5), ipoly(&[0, 5, 0, -5, 0, 1]));
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_poly(1), ipoly(&[0, 1]));
        assert_eq!(lucas_poly(2), ipoly(&[2, 0, 1]));
        assert_eq!(lucas_poly(3), ipoly(&[0, 3, 0, 1]));
        assert_eq!(lucas_number(0), BigInt::from(2));
        assert_eq!(lucas_number(1), BigInt::from(1));
        assert_eq!(lucas_number(7), BigInt::from(29));
        assert_eq!(lucas_number(-5), BigInt::from(-11));
        assert_eq!(lucas_number(-4), BigInt::from(7));
    }

    #[test]
    fn resolvent_identity_n5_by_substitution() {
        let r = resolvent_identity(5);
        assert_eq!(r, ipoly(&[0, -2, 0, 1]));
        // independent check at a = 2, 3, 5 with b = 1/a
        for a in [2i64, 3, 5] {
            let a = BigRational::from_integer(a.into());
            let b = a.recip();
            let lhs: BigRational = [1u32, 2, 3, 4]
                .iter()
                .map(|&j| num_traits::pow(a.clone(), j as usize) * num_traits::pow(b.clone(), 5 - j as usize))
                .sum();
            let x = &a + &b;
            let rhs = &x * &x * &x - BigRational::from_integer(2.into()) * &x;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pell_sequences() {
        let s = pell_sequence("T4_t2p16", 7).unwrap();
        assert_eq!(&s.terms[..3], &[2.into(), 8.into(), 22.into()]);
        assert!(s.check_form());
        let s = pell_sequence("T6_t2p4", 7).unwrap();
        assert_eq!(&s.terms[..3], &[1.into(), 4.into(), 11.into()]);
        assert!(s.check_form());
        let s = pell_sequence("T4_unramified_b", 4).unwrap();
        assert_eq!(&s.terms[..3], &[(-22).into(), 2728.into(), 41266478.into()]);
        for (i, t) in s.terms.iter().enumerate() {
            assert_eq!(*t, lucas_number(20 * i as i64 - 5) * 2);
        }
        assert!(s.check_form());
        assert!(matches!(pell_sequence("nope", 3), Err(ForgeError::UnknownSequence(_))));
    }

    #[test]
    fn fixed_points_match_brute_force() {
        let fp: Vec<BigInt> = cheb_fixed_points_mod(3, 2).unwrap().into_iter().map(|x| x.value).collect();
        assert_eq!(fp, vec![0.into(), 2.into(), 7.into()]);
        let fp = cheb_fixed_points_mod(5, 2).unwrap();
        assert_eq!(fp.len(), 5);
        assert!(fp.iter().any(|x| x.value == BigInt::from(2)));
        // Hensel route agrees with brute force when forced above the threshold.
        let big = cheb_fixed_points_mod(5, 9).unwrap();
        let small = cheb_fixed_points_mod(5, 3).unwrap();
        for (a, b) in big.iter().zip(&small) {
            assert_eq!(a.truncate(3), *b);
        }
    }

    #[test]
    fn chebyshev_power_search() {
        assert_eq!(is_cheb_power(&2.into(), 5), Some(2.into()));
        assert_eq!(is_cheb_power(&123.into(), 5), Some(3.into()));
        assert_eq!(is_cheb_power(&3.into(), 5), None);
        assert_eq!(is_lucas_value(&0.into(), 5), Some(0.into()));
    }

    #[test]
    fn admissibility_examples() {
        let a = admissible_thm2(&29.into(), 3, 1).unwrap();
        assert!(a.admissible, "{}", a.reason);
        assert_eq!(a.modulus, Some(27.into()));
        assert!(!admissible_thm2(&2.into(), 3, 1).unwrap().admissible);
        assert!(!admissible_thm3(&0.into(), 5, 1).unwrap().admissible);
        assert!(admissible_thm3(&1.into(), 2, 1).is_err());
    }

    #[test]
    fn refined_lucas_precision_at_critical_points() {
        // 11 and 14 are the fixed points of L_5 above the roots of x^2 + 4 mod 5
        let stated = admissible_thm3(&36.into(), 5, 1).unwrap();
        assert!(stated.admissible);
        assert!(radical_root_witness(&36.into(), 5, true, 10).unwrap().is_none());
        assert!(!admissible_thm3_refined(&36.into(), 5, 1).unwrap().admissible);
        let r = admissible_thm3_refined(&136.into(), 5, 1).unwrap();
        assert!(r.admissible);
        assert_eq!(r.modulus, Some(125.into()));
        assert!(radical_root_witness(&136.into(), 5, true, 10).unwrap().is_some());
        // p = 3 mod 4 defers to the stated predicate
        for j in -50..50 {
            let j = BigInt::from(j);
            assert_eq!(admissible_thm3(&j, 7, 1).unwrap(), admissible_thm3_refined(&j, 7, 1).unwrap());
        }
    }
}
