//! Monomial-basis polynomial helpers: evaluation, products, synthetic division.

use crate::real::Real;

/// Horner evaluation; `coeffs[i]` multiplies `x^i`.
pub(crate) fn eval<R: Real>(coeffs: &[R], x: R) -> R {
    let mut acc = R::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn mul<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == R::zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = out[i + j] + ai * bj;
        }
    }
    out
}

/// Divide by `(x - root)` in place; returns the remainder.
pub(crate) fn divide_by_root<R: Real>(coeffs: &mut Vec<R>, root: R) -> R {
    if coeffs.is_empty() {
        return R::zero();
    }
    let mut carry = R::zero();
    for c in coeffs.iter_mut().rev() {
        let next = *c + carry * root;
        *c = carry;
        carry = next;
    }
    // After the sweep the vector holds the quotient in its low slots and a
    // zero in the top slot; `carry` is the remainder.
    coeffs.pop();
    carry
}
