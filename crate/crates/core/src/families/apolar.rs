use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::FamilySpec;
use crate::cyclotomic::CyclotomicField;
use crate::{BiPoly, CycloElt, ForgeError, Result};

/// Outcome of writing `f = p (x - w)^n + q (x - w')^n` with `w, w'` the two
/// primitive `n`-th roots of unity. `p` and `q` are polynomials in `t` with
/// coefficients in `Q(zeta_n)`, listed constant term first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Apolarity {
    Apolar { n: u32, p: Vec<CycloElt>, q: Vec<CycloElt> },
    NotApolar { n: u32, reason: String },
}

impl Apolarity {
    pub fn is_apolar(&self) -> bool {
        matches!(self, Apolarity::Apolar { .. })
    }
}

fn binomial(n: u32, k: u32) -> BigRational {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    BigRational::from_integer(c)
}

/// Coefficients of `(x - w)^n`, constant term first.
fn power_of_linear(w: &CycloElt, n: u32) -> Vec<CycloElt> {
    let minus_w = w.neg();
    (0..=n).map(|k| minus_w.pow(n - k).scale(&binomial(n, k))).collect()
}

/// Decompose `f` (over `Z[t]`; a constant-in-`t` polynomial is allowed).
/// The system is linear, so each power of `t` is solved separately.
pub fn apolarity_check(f: &BiPoly, n: u32) -> Result<Apolarity> {
    if ![3, 4, 6].contains(&n) {
        return Err(ForgeError::ApolarDegree(n as usize));
    }
    if f.degree() != Some(n as usize) {
        return Ok(Apolarity::NotApolar { n, reason: format!("degree {:?} differs from {n}", f.degree()) });
    }
    let field = CyclotomicField::new(n as u64);
    let w = CycloElt::zeta_pow(&field, 1);
    let w2 = CycloElt::zeta_pow(&field, n as i64 - 1);
    let e1 = power_of_linear(&w, n);
    let e2 = power_of_linear(&w2, n);
    let inv_diff = w.sub(&w2).inverse()?;
    let t_deg = f.coeffs().iter().map(|c| c.deg()).max().unwrap_or(0).max(0) as usize;
    let coeff = |k: usize, j: usize| CycloElt::from_rational(&field, BigRational::from_integer(f.coeff(k).coeff(j)));

    let (mut ps, mut qs) = (Vec::new(), Vec::new());
    for j in 0..=t_deg {
        // x^n: p + q = a;  x^(n-1): -n (p w + q w') = c
        let a = coeff(n as usize, j);
        let b = coeff(n as usize - 1, j).scale(&BigRational::new((-1).into(), (n as i64).into()));
        let p = b.sub(&a.mul(&w2)).mul(&inv_diff);
        let q = a.sub(&p);
        for k in 0..=n as usize {
            let lhs = p.mul(&e1[k]).add(&q.mul(&e2[k]));
            if lhs != coeff(k, j) {
                return Ok(Apolarity::NotApolar {
                    n,
                    reason: format!("coefficient of t^{j} x^{k} cannot be matched"),
                });
            }
        }
        ps.push(p);
        qs.push(q);
    }
    while ps.len() > 1 && ps.last().is_some_and(CycloElt::is_zero) && qs.last().is_some_and(CycloElt::is_zero) {
        ps.pop();
        qs.pop();
    }
    Ok(Apolarity::Apolar { n, p: ps, q: qs })
}

/// Apolarity of a family's main polynomial and of each auxiliary variant in
/// the same variable, as `(label, result)`.
pub fn apolarity_variants(spec: &FamilySpec) -> Result<Vec<(String, Apolarity)>> {
    let n = spec
        .apolar
        .ok_or_else(|| ForgeError::Precondition(format!("{} has no apolar degree", spec.id)))?;
    let mut out = vec![("main".to_string(), apolarity_check(&spec.main.coeffs, n)?)];
    for aux in spec.aux.iter().filter(|a| a.var == spec.main.var) {
        let label = aux.name.clone().unwrap_or_else(|| "aux".into());
        out.push((label, apolarity_check(&aux.coeffs, n)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{bipoly, ipoly, BiPoly, IntPoly};

    fn constant_in_t(f: &IntPoly) -> BiPoly {
        BiPoly::new(f.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect())
    }

    #[test]
    fn sum_of_two_cubes() {
        // w + w' = -1 and w^2 + w'^2 = -1, so the sum is 2x^3 + 3x^2 - 3x - 2
        let f = constant_in_t(&ipoly(&[-2, -3, 3, 2]));
        let Apolarity::Apolar { p, q, .. } = apolarity_check(&f, 3).unwrap() else { panic!() };
        assert_eq!(p[0].as_rational(), Some(BigRational::one()));
        assert_eq!(q[0].as_rational(), Some(BigRational::one()));
    }

    #[test]
    fn generic_cubic_is_not_apolar() {
        let f = constant_in_t(&ipoly(&[0, 1, 0, 1]));
        assert!(!apolarity_check(&f, 3).unwrap().is_apolar());
        assert!(matches!(apolarity_check(&f, 5), Err(ForgeError::ApolarDegree(5))));
    }

    #[test]
    fn cubic_family_is_apolar() {
        // x^3 - t x^2 - (t + 3) x - 1
        let f = bipoly(&[&[-1], &[-3, -1], &[0, -1], &[1]]);
        assert!(apolarity_check(&f, 3).unwrap().is_apolar());
    }
}
