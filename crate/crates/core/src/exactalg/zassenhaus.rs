//! Factorization over `Z` by Hensel lifting a modular factorization and
//! recombining subsets of the lifted factors.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intpoly::{content, primitive_part, squarefree_decomposition};
use super::modp::{degree_pattern, factor_mod_p_seeded, FpPoly};
use super::numtheory::{primes_up_to, trial_factor};
use crate::{ForgeError, IntPoly, Result};

/// Largest degree accepted by [`factor_over_z`] unless overridden.
pub const DEFAULT_DEGREE_CAP: usize = 12;

/// Complete factorization `f = unit * prod f_i^m_i` over `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Signed content, so that the product reproduces the input exactly.
    pub unit: BigInt,
    /// Primitive irreducible factors with positive leading coefficient.
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.unit.clone()), |acc, (g, m)| &acc * &g.pow(*m))
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

/// [`factor_over_z_with`] using [`DEFAULT_DEGREE_CAP`] and the default seed.
pub fn factor_over_z(f: &IntPoly) -> Result<Factorization> {
    factor_over_z_with(f, DEFAULT_DEGREE_CAP, crate::DEFAULT_SEED)
}

pub fn factor_over_z_with(f: &IntPoly, cap: usize, seed: u64) -> Result<Factorization> {
    let n = f.degree().ok_or_else(|| ForgeError::Precondition("cannot factor the zero polynomial".into()))?;
    if n > cap {
        return Err(ForgeError::DegreeTooLarge { degree: n, cap });
    }
    let mut unit = content(f);
    if f.lc().unwrap().is_negative() {
        unit = -unit;
    }
    let mut factors = Vec::new();
    for (a, m) in squarefree_decomposition(f) {
        for g in factor_squarefree(&a, seed)? {
            factors.push((g, m));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(Factorization { unit, factors })
}

/// Irreducible factors of a primitive squarefree polynomial.
fn factor_squarefree(f: &IntPoly, seed: u64) -> Result<Vec<IntPoly>> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return Ok(vec![primitive_part(f)]);
    }
    let Some(p) = choose_prime(f) else {
        return Err(ForgeError::Precondition("no suitable prime for modular factorization".into()));
    };
    let modular: Vec<FpPoly> = factor_mod_p_seeded(f, p, seed)?
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    if modular.len() == 1 {
        return Ok(vec![primitive_part(f)]);
    }
    let lc = f.lc().unwrap().abs();
    let bound = mignotte_bound(f) * &lc * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = multifactor_lift(f, &modular, p, k);
    Ok(recombine(f, lifted, &modulus))
}

/// Among the first good primes, the one giving the fewest modular factors.
fn choose_prime(f: &IntPoly) -> Option<u64> {
    let lc = f.lc()?;
    let mut best: Option<(usize, u64)> = None;
    let mut tried = 0;
    for p in primes_up_to(2000).into_iter().skip(1) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let Some(pattern) = degree_pattern(f, p) else { continue };
        tried += 1;
        if best.is_none_or(|(c, _)| pattern.len() < c) {
            best = Some((pattern.len(), p));
        }
        if pattern.len() == 1 || tried == 8 {
            break;
        }
    }
    best.map(|(_, p)| p)
}

/// `2^n * ||f||_2`, rounded up: bounds every coefficient of a monic-scaled factor.
fn mignotte_bound(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    (norm2.sqrt() + 1) << n
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    f.map(|c| c.mod_floor(m))
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce(&(a * b), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &IntPoly, h: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let dh = h.degree().expect("nonzero");
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    if r.len() <= dh {
        return (IntPoly::zero(), reduce(a, m));
    }
    let n = r.len() - 1;
    let mut q = vec![BigInt::zero(); n - dh + 1];
    for k in (0..=n - dh).rev() {
        let c = r[k + dh].mod_floor(m);
        if !c.is_zero() {
            for (i, hc) in h.coeffs().iter().enumerate() {
                r[k + i] = (&r[k + i] - &c * hc).mod_floor(m);
            }
        }
        q[k] = c;
    }
    (IntPoly::new(q), reduce(&IntPoly::new(r), m))
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lift `f = g h mod p` (with `h` monic and `s g + t h = 1 mod p`) to modulus `p^k`.
fn hensel_pair(f: &IntPoly, g: &IntPoly, h: &IntPoly, s: &IntPoly, t: &IntPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let target = BigInt::from(p).pow(k);
    let (mut g, mut h, mut s, mut t) = (g.clone(), h.clone(), s.clone(), t.clone());
    let mut m = BigInt::from(p);
    while m < target {
        m = &m * &m;
        let e = reduce(&(f - &(&g * &h)), &m);
        let (q, r) = divrem_monic(&mul_mod(&s, &e, &m), &h, &m);
        let g_new = reduce(&(&(&g + &(&t * &e)) + &(&q * &g)), &m);
        let h_new = reduce(&(&h + &r), &m);
        let b = reduce(&(&(&(&s * &g_new) + &(&t * &h_new)) - &IntPoly::one()), &m);
        let (c, d) = divrem_monic(&mul_mod(&s, &b, &m), &h_new, &m);
        s = reduce(&(&s - &d), &m);
        t = reduce(&(&(&t - &(&t * &b)) - &(&c * &g_new)), &m);
        g = g_new;
        h = h_new;
    }
    (reduce(&g, &target), reduce(&h, &target))
}

/// Monic lifts `L_i` with `f = lc(f) * prod L_i mod p^k`.
fn multifactor_lift(f: &IntPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    let modulus = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let inv = inv_mod_big(f.lc().unwrap(), &modulus);
        return vec![reduce(&f.scale(&inv), &modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(p), |a, g| a.mul(g));
    let lc_p = FpPoly::from_int(&IntPoly::constant(f.lc().unwrap().clone()), p);
    let g0 = prod(left).mul(&lc_p);
    let h0 = prod(right);
    let (s0, t0) = fp_bezout(&g0, &h0);
    let (g, h) = hensel_pair(
        &reduce(f, &modulus),
        &g0.to_int(),
        &h0.to_int(),
        &s0.to_int(),
        &t0.to_int(),
        p,
        k,
    );
    let mut out = multifactor_lift(&g, left, p, k);
    out.extend(multifactor_lift(&h, right, p, k));
    out
}

/// `(s, t)` with `s a + t b = 1` over `F_p` for coprime inputs.
fn fp_bezout(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
    let p = a.modulus();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
    let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("nonzero");
        r0 = std::mem::replace(&mut r1, r);
        let s2 = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t2);
    }
    debug_assert_eq!(r0.degree(), Some(0));
    let inv = super::numtheory::inv_mod(r0.lc(), p).expect("unit gcd");
    (s0.scale(inv), t0.scale(inv))
}

fn sym(f: &IntPoly, m: &BigInt) -> IntPoly {
    f.map(|c| super::numtheory::sym_mod(c, m))
}

/// Subset recombination of lifted monic factors, smallest subsets first.
fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut rest = primitive_part(f);
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in Combinations::new(lifted.len(), size) {
            let lc = IntPoly::constant(rest.lc().unwrap().clone());
            let candidate = subset.iter().fold(lc, |acc, &i| mul_mod(&acc, &lifted[i], modulus));
            let candidate = primitive_part(&sym(&candidate, modulus));
            if let Some(q) = rest.div_exact_poly(&candidate) {
                found = Some((subset, candidate, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                rest = primitive_part(&q);
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if !rest.is_constant() {
        out.push(rest);
    }
    out
}

/// Lexicographic `size`-subsets of `0..n`.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, size: usize) -> Self {
        Combinations { n, current: (size <= n).then(|| (0..size).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

/// Outcome of an irreducibility test over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible(IrreducibleBy),
    /// A proper factor of positive degree.
    Reducible { witness: IntPoly },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

/// Which test certified irreducibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrreducibleBy {
    Linear,
    Eisenstein(u64),
    ModP(u64),
    Factorization,
}

/// A prime at which `f` is Eisenstein, searching prime divisors below 10^4 of
/// the non-leading coefficients.
pub fn eisenstein_prime(f: &IntPoly) -> Option<u64> {
    let n = f.degree()?;
    if n == 0 {
        return None;
    }
    let g = f.coeffs()[..n].iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return None;
    }
    let (primes, _) = trial_factor(&g, 10_000);
    primes.into_iter().map(|(p, _)| p).find(|&p| {
        let pb = BigInt::from(p);
        !(f.lc().unwrap() % &pb).is_zero() && !(&f.coeffs()[0] % (&pb * &pb)).is_zero()
    })
}

/// Decides irreducibility over `Q`, trying Eisenstein and modular
/// irreducibility before a full factorization.
pub fn is_irreducible_q(f: &IntPoly) -> Result<Irreducibility> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(ForgeError::DegreeTooSmall { min: 1 }),
    };
    if n == 1 {
        return Ok(Irreducibility::Irreducible(IrreducibleBy::Linear));
    }
    if let Some(p) = eisenstein_prime(f) {
        return Ok(Irreducibility::Irreducible(IrreducibleBy::Eisenstein(p)));
    }
    let lc = f.lc().unwrap();
    for p in primes_up_to(200) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        if degree_pattern(f, p).is_some_and(|d| d.len() == 1) {
            return Ok(Irreducibility::Irreducible(IrreducibleBy::ModP(p)));
        }
    }
    let fac = factor_over_z(f)?;
    if fac.count() == 1 {
        Ok(Irreducibility::Irreducible(IrreducibleBy::Factorization))
    } else {
        Ok(Irreducibility::Reducible { witness: fac.factors[0].0.clone() })
    }
}

/// Degrees of the irreducible factors, with multiplicity, ascending.
pub fn factor_degrees(f: &IntPoly) -> Result<Vec<usize>> {
    let fac = factor_over_z(f)?;
    let mut out: Vec<usize> = fac
        .factors
        .iter()
        .flat_map(|(g, m)| std::iter::repeat(g.degree().unwrap_or(0)).take(*m as usize))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Largest absolute coefficient, as `f64` for reporting.
pub fn height(f: &IntPoly) -> f64 {
    f.coeffs().iter().map(|c| c.abs()).max().and_then(|c| c.to_f64()).unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipoly;

    #[test]
    fn difference_of_squares() {
        let fac = factor_over_z(&ipoly(&[-1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(ipoly(&[-1, 1]), 1), (ipoly(&[1, 1]), 1)]);
    }

    #[test]
    fn repeated_factor_recovered() {
        let f = &ipoly(&[-4, 1]) * &ipoly(&[1, 1]).pow(4);
        let fac = factor_over_z(&f).unwrap();
        assert_eq!(fac.factors, vec![(ipoly(&[-4, 1]), 1), (ipoly(&[1, 1]), 4)]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 + 1 is irreducible over Q but splits mod every prime.
        let f = ipoly(&[1, 0, 0, 0, 1]);
        let fac = factor_over_z(&f).unwrap();
        assert_eq!(fac.count(), 1);
        // A product of two such quartics needs size-2 recombination.
        let g = &f * &ipoly(&[1, 0, -10, 0, 1]);
        let fac = factor_over_z(&g).unwrap();
        assert_eq!(fac.count(), 2);
        assert_eq!(fac.expand(), g);
    }

    #[test]
    fn non_monic_and_content() {
        let f = (&ipoly(&[1, 2]) * &ipoly(&[-3, 0, 5])).scale(&BigInt::from(-6));
        let fac = factor_over_z(&f).unwrap();
        assert_eq!(fac.unit, BigInt::from(-6));
        assert_eq!(fac.factors, vec![(ipoly(&[1, 2]), 1), (ipoly(&[-3, 0, 5]), 1)]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn degree_cap() {
        let f = IntPoly::monomial(BigInt::one(), 13) + ipoly(&[1]);
        assert!(matches!(factor_over_z(&f), Err(ForgeError::DegreeTooLarge { degree: 13, cap: 12 })));
    }

    #[test]
    fn irreducibility_witnesses() {
        assert_eq!(
            is_irreducible_q(&ipoly(&[20, 50, 0, -35, 0, 1])).unwrap(),
            Irreducibility::Irreducible(IrreducibleBy::Eisenstein(5))
        );
        assert_eq!(
            is_irreducible_q(&ipoly(&[-1, 0, 1])).unwrap(),
            Irreducibility::Reducible { witness: ipoly(&[-1, 1]) }
        );
        assert!(is_irreducible_q(&ipoly(&[443629, 5860, -2605, -10, 0, 1])).unwrap().is_irreducible());
    }

    #[test]
    fn combinations_enumerate_all() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
    }
}
