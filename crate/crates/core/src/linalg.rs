//! Small dense linear algebra: LU determinants and solves with partial pivoting.
//!
//! Matrices here never exceed a few dozen rows (point subsets of the grid),
//! so plain elimination at working precision is accurate enough for the
//! relative thresholds used by the determinant sweeps.

use crate::real::Real;

/// Determinant by partially pivoted elimination. Consumes the matrix.
pub(crate) fn det<R: Real>(mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut sign = R::one();
    let mut result = R::one();
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        if a[pivot][col] == R::zero() {
            return R::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            sign = -sign;
        }
        let diag = a[col][col];
        result = result * diag;
        let (pivot_rows, rest) = a.split_at_mut(col + 1);
        let pivot_row = &pivot_rows[col];
        for row in rest {
            let factor = row[col] / diag;
            if factor != R::zero() {
                for (slot, &p) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                    *slot = *slot - factor * p;
                }
            }
        }
    }
    sign * result
}

/// Solve `A x = b`; `None` when a pivot degenerates to zero.
pub(crate) fn solve<R: Real>(mut a: Vec<Vec<R>>, mut b: Vec<R>) -> Option<Vec<R>> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        if a[pivot][col] == R::zero() {
            return None;
        }
        if pivot != col {
            a.swap(pivot, col);
            b.swap(pivot, col);
        }
        let diag = a[col][col];
        let (pivot_rows, rest) = a.split_at_mut(col + 1);
        let pivot_row = &pivot_rows[col];
        let b_pivot = b[col];
        for (offset, row) in rest.iter_mut().enumerate() {
            let factor = row[col] / diag;
            if factor != R::zero() {
                for (slot, &p) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                    *slot = *slot - factor * p;
                }
                b[col + 1 + offset] = b[col + 1 + offset] - factor * b_pivot;
            }
        }
    }
    let mut x = vec![R::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Numerical rank via row elimination with a relative pivot threshold.
pub(crate) fn rank<R: Real>(mut a: Vec<Vec<R>>, rel_tol: R) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let scale: Vec<R> = a
        .iter()
        .map(|row| row.iter().fold(R::zero(), |s, &v| s + v * v).sqrt())
        .collect();
    let norm_floor = scale
        .iter()
        .cloned()
        .fold(R::zero(), R::max)
        .max(R::min_positive_value());
    let mut rank = 0;
    let mut row_used = vec![false; rows];
    for col in 0..cols {
        let mut pivot = None;
        let mut best = rel_tol * norm_floor;
        for row in 0..rows {
            if !row_used[row] && a[row][col].abs() > best {
                best = a[row][col].abs();
                pivot = Some(row);
            }
        }
        let Some(p) = pivot else { continue };
        row_used[p] = true;
        rank += 1;
        let pivot_row = a[p].clone();
        for (row, used) in a.iter_mut().zip(&row_used) {
            if !used && row[col] != R::zero() {
                let factor = row[col] / pivot_row[col];
                for (slot, &pv) in row.iter_mut().zip(&pivot_row) {
                    *slot = *slot - factor * pv;
                }
            }
        }
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_identity_and_swap() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(det(id), 1.0);
        let swapped = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert_eq!(det(swapped), -1.0);
    }

    #[test]
    fn det_vandermonde_3x3() {
        // points 0, 1, 3 against 1, x, x^2 -> (1-0)(3-0)(3-1) = 6
        let v = vec![
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1.0, 1.0],
            vec![1.0, 3.0, 9.0],
        ];
        assert!((det(v) - 6.0f64).abs() < 1e-12);
    }

    #[test]
    fn solve_small() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve(a, vec![5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0f64).abs() < 1e-12);
        assert!((x[1] - 3.0f64).abs() < 1e-12);
    }

    #[test]
    fn rank_detects_dependence() {
        let a = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]];
        assert_eq!(rank(a, 1e-10), 1);
        let b = vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert_eq!(rank(b, 1e-10), 2);
    }
}
