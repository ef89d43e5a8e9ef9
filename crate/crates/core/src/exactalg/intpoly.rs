//! Integer polynomial helpers: content, gcd, squarefree parts, discriminants
//! and discriminants of parametric families in `Z[t][x]`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{BiPoly, ForgeError, IntPoly, RatPoly, Result};

/// Nonnegative gcd of the coefficients.
pub fn content(f: &IntPoly) -> BigInt {
    f.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `f / content(f)` with positive leading coefficient.
pub fn primitive_part(f: &IntPoly) -> IntPoly {
    let c = content(f);
    if c.is_zero() {
        return IntPoly::zero();
    }
    let c = if f.lc().unwrap().is_negative() { -c } else { c };
    f.map(|a| a / &c)
}

pub fn to_rat(f: &IntPoly) -> RatPoly {
    f.map(|c| BigRational::from_integer(c.clone()))
}

/// Clears denominators and returns the primitive integer polynomial.
pub fn from_rat_primitive(f: &RatPoly) -> IntPoly {
    let den = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive_part(&f.map(|c| (c * BigRational::from_integer(den.clone())).to_integer()))
}

/// Rational polynomial with integer coefficients, or `None`.
pub fn rat_to_int(f: &RatPoly) -> Option<IntPoly> {
    f.coeffs()
        .iter()
        .all(|c| c.is_integer())
        .then(|| f.map(|c| c.to_integer()))
}

/// Primitive gcd with positive leading coefficient.
pub fn gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    if f.is_zero() {
        return primitive_part(g);
    }
    if g.is_zero() {
        return primitive_part(f);
    }
    from_rat_primitive(&to_rat(f).gcd(&to_rat(g)))
}

/// Product of the distinct irreducible factors, primitive.
pub fn squarefree_part(f: &IntPoly) -> IntPoly {
    if f.is_constant() {
        return primitive_part(f);
    }
    let g = gcd(f, &f.derivative());
    primitive_part(&primitive_part(f).div_exact_poly(&g).expect("gcd divides f"))
}

pub fn is_squarefree(f: &IntPoly) -> bool {
    gcd(f, &f.derivative()).is_constant()
}

/// Yun's squarefree decomposition: pairs `(a_i, i)` of primitive squarefree
/// coprime factors with `f = c * prod a_i^i`.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    let fq = to_rat(f);
    let a0 = fq.gcd(&fq.derivative());
    let mut b = fq.divrem(&a0).expect("nonzero").0;
    let c = fq.derivative().divrem(&a0).expect("nonzero").0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((from_rat_primitive(&a), i));
        }
        b = b.divrem(&a).expect("nonzero").0;
        let c = d.divrem(&a).expect("nonzero").0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Resultant over `Z` with the convention `lc(f)^deg g * prod g(alpha)`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    f.resultant(g)
}

/// `(-1)^(n(n-1)/2) res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    f.discriminant()
}

/// Evaluate the `t`-coefficients of `f` at an integer.
pub fn eval_t(f: &BiPoly, t: &BigInt) -> IntPoly {
    f.map(|c| c.eval(t))
}

/// Maximum `t`-degree among the `x`-coefficients.
pub fn t_degree(f: &BiPoly) -> usize {
    f.coeffs().iter().filter_map(|c| c.degree()).max().unwrap_or(0)
}

/// Newton interpolation through integer nodes; `None` unless the
/// interpolant has integer coefficients.
pub fn interpolate(points: &[(BigInt, BigInt)]) -> Option<IntPoly> {
    let q = |a: &BigInt| BigRational::from_integer(a.clone());
    let n = points.len();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| q(y)).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = q(&(&points[i].0 - &points[i - level].0));
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    let mut acc = RatPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &RatPoly::linear_root(q(&points[i].0))) + &RatPoly::constant(dd[i].clone());
    }
    rat_to_int(&acc)
}

/// Interpolation nodes 0, 1, -1, 2, -2, ...
fn node(i: usize) -> i64 {
    let k = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        k
    } else {
        -k
    }
}

/// Discriminant with respect to `x` of `f in Z[t][x]`, as a polynomial in `t`.
///
/// Evaluates at `bound + 1` integers, where `bound = (2n - 1) * deg_t` covers
/// the resultant, interpolates exactly and confirms at three extra nodes.
pub fn disc_in_t(f: &BiPoly) -> Result<IntPoly> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(ForgeError::DegreeTooSmall { min: 1 }),
    };
    let lc = f.lc().unwrap().clone();
    let mut bound = (2 * n - 1) * t_degree(f);
    for attempt in 0..2 {
        let mut points = Vec::new();
        let mut extra = Vec::new();
        let mut i = 0;
        while points.len() + extra.len() < bound + 4 {
            let t = BigInt::from(node(i));
            i += 1;
            if lc.eval(&t).is_zero() {
                continue;
            }
            let d = eval_t(f, &t).discriminant()?;
            if points.len() <= bound {
                points.push((t, d));
            } else {
                extra.push((t, d));
            }
        }
        if let Some(p) = interpolate(&points) {
            match extra.iter().find(|(t, d)| p.eval(t) != *d) {
                None => return Ok(p),
                Some((t, _)) if attempt == 1 => {
                    return Err(ForgeError::InterpolationInconsistent(t.try_into().unwrap_or(i64::MAX)))
                }
                Some(_) => {}
            }
        }
        bound *= 2;
    }
    Err(ForgeError::InterpolationInconsistent(node(bound)))
}

/// Exact square root of a polynomial with integer coefficients, if it is a square.
pub fn poly_sqrt(f: &IntPoly) -> Option<IntPoly> {
    if f.is_zero() {
        return Some(IntPoly::zero());
    }
    let n = f.degree()?;
    if n % 2 == 1 {
        return None;
    }
    let m = n / 2;
    let lead = crate::exactalg::numtheory::exact_sqrt(f.lc()?)?;
    // Solve top-down for g with g^2 = f, g monic-up-to-lead.
    let mut g = vec![BigInt::zero(); m + 1];
    g[m] = lead.clone();
    let two_lead = &lead * 2;
    for k in (0..m).rev() {
        // coefficient of x^(m + k) in g^2
        let mut s = BigInt::zero();
        for i in (k + 1)..=m {
            let j = m + k - i;
            if j > k && j <= m {
                s += &g[i] * &g[j];
            }
        }
        let target = f.coeff(m + k) - s;
        let (q, r) = target.div_rem(&two_lead);
        if !r.is_zero() {
            return None;
        }
        g[k] = q;
    }
    let g = IntPoly::new(g);
    (&g * &g == *f).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{bipoly, ipoly};

    #[test]
    fn content_and_primitive() {
        let f = ipoly(&[-6, 0, -9]);
        assert_eq!(content(&f), BigInt::from(3));
        assert_eq!(primitive_part(&f), ipoly(&[2, 0, 3]));
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = &ipoly(&[-4, 1]) * &ipoly(&[1, 1]).pow(4);
        assert_eq!(gcd(&f, &f.derivative()), ipoly(&[1, 1]).pow(3));
        assert_eq!(squarefree_part(&f), &ipoly(&[-4, 1]) * &ipoly(&[1, 1]));
        let dec = squarefree_decomposition(&f);
        assert_eq!(dec, vec![(ipoly(&[-4, 1]), 1), (ipoly(&[1, 1]), 4)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = ipoly(&[7, -3, 0, 2]);
        let pts: Vec<_> = (0..4).map(|i| {
            let t = BigInt::from(node(i));
            let v = p.eval(&t);
            (t, v)
        }).collect();
        assert_eq!(interpolate(&pts), Some(p));
    }

    #[test]
    fn disc_in_t_quadratic() {
        let f = bipoly(&[&[1], &[0, -1], &[1]]);
        assert_eq!(disc_in_t(&f).unwrap(), ipoly(&[-4, 0, 1]));
    }

    #[test]
    fn disc_in_t_simplest_cubic_is_square() {
        // x^3 - t x^2 - (t + 3) x - 1
        let f = bipoly(&[&[-1], &[-3, -1], &[0, -1], &[1]]);
        let d = disc_in_t(&f).unwrap();
        let r = poly_sqrt(&d).expect("square discriminant");
        assert_eq!(r, ipoly(&[9, 3, 1]));
    }

    #[test]
    fn poly_sqrt_rejects_nonsquares() {
        assert_eq!(poly_sqrt(&ipoly(&[1, 2, 1])), Some(ipoly(&[1, 1])));
        assert_eq!(poly_sqrt(&ipoly(&[1, 2, 2])), None);
        assert_eq!(poly_sqrt(&ipoly(&[0, 1])), None);
    }
}
