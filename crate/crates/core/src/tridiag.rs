//! Sturm-sequence bisection for symmetric tridiagonal eigenvalues.
//!
//! The LDLT pivot signs count eigenvalues below a shift; bisection inside
//! Gershgorin bounds then isolates each eigenvalue and refines it to a few
//! ulps. Robust, and itself a Sturm-theoretic method.

use crate::real::{real, Real};

/// Number of eigenvalues strictly less than `shift`.
pub(crate) fn count_below<R: Real>(diag: &[R], off: &[R], shift: R) -> usize {
    let n = diag.len();
    if n == 0 {
        return 0;
    }
    // Floor keeps the pivot recurrence from dividing by an exact zero.
    let guard = R::min_positive_value().sqrt();
    let mut count = 0;
    let mut q = diag[0] - shift;
    if q < R::zero() {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < guard {
            if q < R::zero() {
                -guard
            } else {
                guard
            }
        } else {
            q
        };
        q = (diag[i] - shift) - off[i - 1] * off[i - 1] / q_safe;
        if q < R::zero() {
            count += 1;
        }
    }
    count
}

/// All eigenvalues, ascending.
pub(crate) fn eigenvalues<R: Real>(diag: &[R], off: &[R]) -> Vec<R> {
    let n = diag.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![diag[0]];
    }
    debug_assert_eq!(off.len(), n - 1);

    let mut lo = R::infinity();
    let mut hi = R::neg_infinity();
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { R::zero() };
        let right = if i < n - 1 { off[i].abs() } else { R::zero() };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    let pad = (hi - lo).max(R::one()) * real(1e-3);
    lo = lo - pad;
    hi = hi + pad;

    let two = real::<R>(2.0);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut a = lo;
        let mut b = hi;
        for _ in 0..200 {
            let mid = (a + b) / two;
            let width_tol = R::epsilon() * mid.abs().max(R::one()) * two;
            if b - a < width_tol {
                break;
            }
            if count_below(diag, off, mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push((a + b) / two);
    }
    out
}
