//! Real root counting by Sturm sequences.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::intpoly::{primitive_part, squarefree_part};
use crate::IntPoly;

/// Sturm sequence of the squarefree part of `f`, each term made primitive
/// with signs preserved.
pub fn sturm_sequence(f: &IntPoly) -> Vec<IntPoly> {
    let f = squarefree_part(f);
    let mut seq = vec![f.clone(), primitive_part(&f.derivative())];
    if seq[1].is_zero() {
        seq.pop();
        return seq;
    }
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.is_constant() {
            break;
        }
        let delta = (a.deg() - b.deg() + 1) as u32;
        let mut r = a.prem(b).expect("nonzero");
        // prem multiplies by lc(b)^delta; undo a negative sign.
        if b.lc().unwrap().is_negative() && delta % 2 == 1 {
            r = -r;
        }
        if r.is_zero() {
            break;
        }
        let c = super::intpoly::content(&r);
        seq.push(-r.map(|x| x / &c));
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let nonzero: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign(b: &BigInt) -> i8 {
    if b.is_zero() {
        0
    } else if b.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of distinct real roots of `f`.
pub fn sturm_real_roots(f: &IntPoly) -> usize {
    if f.is_constant() {
        return 0;
    }
    let seq = sturm_sequence(f);
    let at_pos = sign_changes(seq.iter().map(|p| sign(p.lc().unwrap())));
    let at_neg = sign_changes(seq.iter().map(|p| {
        let s = sign(p.lc().unwrap());
        if p.deg() % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    at_neg - at_pos
}

/// Distinct real roots in the half-open interval `(a, b]`.
pub fn sturm_roots_in(f: &IntPoly, a: &BigInt, b: &BigInt) -> usize {
    if f.is_constant() {
        return 0;
    }
    let seq = sturm_sequence(f);
    let at = |x: &BigInt| sign_changes(seq.iter().map(|p| sign(&p.eval(x))));
    at(a).saturating_sub(at(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipoly;

    #[test]
    fn small_examples() {
        assert_eq!(sturm_real_roots(&ipoly(&[1, 0, 1])), 0);
        assert_eq!(sturm_real_roots(&ipoly(&[-2, 0, 1])), 2);
        assert_eq!(sturm_real_roots(&ipoly(&[0, -1, 0, 1])), 3);
        // (x - 1)^3 (x + 2): two distinct roots
        let f = &ipoly(&[-1, 1]).pow(3) * &ipoly(&[2, 1]);
        assert_eq!(sturm_real_roots(&f), 2);
        assert_eq!(sturm_real_roots(&ipoly(&[-1, 0, 0, 0, 0, -1])), 1);
    }

    #[test]
    fn interval_counts() {
        let f = ipoly(&[6, -5, 1]); // roots 2, 3
        assert_eq!(sturm_roots_in(&f, &BigInt::from(0), &BigInt::from(2)), 1);
        assert_eq!(sturm_roots_in(&f, &BigInt::from(2), &BigInt::from(10)), 1);
        assert_eq!(sturm_roots_in(&f, &BigInt::from(-10), &BigInt::from(10)), 2);
    }
}
