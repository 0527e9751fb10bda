//! Closed-form oracles for the four Chebyshev-type Jacobi families and the
//! trigonometric corollaries of the gap expansion.
//!
//! The four cases map to normalized Jacobi exponents `(-1/2 + a, -1/2 + b)`
//! with `a, b` in `{0, 1}`; each has explicit cosine zeros and a product
//! formula for the bordered determinant over its eigenfunction rows.

use crate::chebsys::SystemTable;
use crate::error::{Error, Result};
use crate::gapfourier::gap_expand;
use crate::real::{real, real_usize, Real};
use crate::recurrence::Family;
use crate::spectrum::compute_spectrum;

/// The four Appendix families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppendixCase {
    /// `(0,0)`: Chebyshev polynomials of the first kind.
    I,
    /// `(0,1)`: weight shifted by `(1+t)^{1/2}`.
    II,
    /// `(1,1)`: Chebyshev polynomials of the second kind, normalized.
    III,
    /// `(1,0)`: weight shifted by `(1-t)^{1/2}`.
    IV,
}

impl AppendixCase {
    pub fn all() -> [AppendixCase; 4] {
        [
            AppendixCase::I,
            AppendixCase::II,
            AppendixCase::III,
            AppendixCase::IV,
        ]
    }

    /// The `(a, b)` label of the case, with Jacobi exponents `a - 1/2, b - 1/2`.
    pub fn label(&self) -> (u8, u8) {
        match self {
            AppendixCase::I => (0, 0),
            AppendixCase::II => (0, 1),
            AppendixCase::III => (1, 1),
            AppendixCase::IV => (1, 0),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            AppendixCase::I => Family::ChebyshevT,
            AppendixCase::II => Family::Jacobi {
                a: -0.5,
                b: 0.5,
                normalized: true,
            },
            AppendixCase::III => Family::Jacobi {
                a: 0.5,
                b: 0.5,
                normalized: true,
            },
            AppendixCase::IV => Family::Jacobi {
                a: 0.5,
                b: -0.5,
                normalized: true,
            },
        }
    }

    /// Zero `t_j` (1-based, descending in `j`) of the degree-`q+1` polynomial.
    pub fn zero<R: Real>(&self, q: usize, j: usize) -> R {
        let jf = j as f64;
        let qf = q as f64;
        let angle = match self {
            AppendixCase::I => std::f64::consts::PI * (2.0 * jf - 1.0) / (2.0 * qf + 2.0),
            AppendixCase::II => std::f64::consts::PI * (2.0 * jf - 1.0) / (2.0 * qf + 3.0),
            AppendixCase::III => std::f64::consts::PI * jf / (qf + 2.0),
            AppendixCase::IV => std::f64::consts::PI * jf / (qf + 1.5),
        };
        real(angle.cos())
    }

    /// Eigenfunction value `psi_j(nu) = U_nu(t_j)` in trigonometric form.
    fn psi<R: Real>(&self, q: usize, j: usize, nu: usize) -> R {
        let x: f64 = self.row_angle(q, nu);
        let jf = j as f64;
        match self {
            AppendixCase::I => real(((2.0 * jf - 1.0) * x).cos()),
            AppendixCase::II => {
                let half = self.column_half_angle(q, j);
                real(((2.0 * jf - 1.0) * x).cos() / half.cos())
            }
            AppendixCase::III => {
                let theta = std::f64::consts::PI * jf / (q as f64 + 2.0);
                real((jf * x).sin() / ((nu as f64 + 1.0) * theta.sin()))
            }
            AppendixCase::IV => {
                let half = self.column_half_angle(q, j);
                real((jf * x).sin() / ((2.0 * nu as f64 + 1.0) * half.sin()))
            }
        }
    }

    fn row_angle(&self, q: usize, nu: usize) -> f64 {
        let nuf = nu as f64;
        let qf = q as f64;
        match self {
            AppendixCase::I => std::f64::consts::PI * nuf / (2.0 * qf + 2.0),
            AppendixCase::II => std::f64::consts::PI * (nuf + 0.5) / (2.0 * qf + 3.0),
            AppendixCase::III => std::f64::consts::PI * (nuf + 1.0) / (qf + 2.0),
            AppendixCase::IV => std::f64::consts::PI * (nuf + 0.5) / (qf + 1.5),
        }
    }

    /// Half of `arccos t_j`; computed directly so the prefactors
    /// `sqrt((1 -+ t_j)/2)` avoid cancellation near `t_j ~ +-1`.
    fn column_half_angle(&self, q: usize, j: usize) -> f64 {
        let jf = j as f64;
        let qf = q as f64;
        match self {
            AppendixCase::II => std::f64::consts::PI * (2.0 * jf - 1.0) / (2.0 * (2.0 * qf + 3.0)),
            AppendixCase::IV => std::f64::consts::PI * jf / (2.0 * (qf + 1.5)),
            _ => unreachable!("only the half-integer cases carry prefactors"),
        }
    }

    /// Closed-form bordered determinant `D_{m+1}(nu, nu_1, ..., nu_m)` with
    /// rows running down the fixed points and finishing at `nu`, matching
    /// [`SystemTable::bordered_det`] over the eigenfunction rows.
    pub fn closed_form_det<R: Real>(&self, q: usize, nu: usize, fixed: &[usize]) -> Result<R> {
        let m = fixed.len();
        if fixed.windows(2).any(|w| w[0] >= w[1])
            || fixed.iter().any(|&p| p < 1 || p > q)
            || nu > q
        {
            return Err(Error::BadPointSet);
        }
        let mut points: Vec<usize> = fixed.iter().rev().copied().collect();
        points.push(nu);
        let angles: Vec<f64> = points.iter().map(|&p| self.row_angle(q, p)).collect();

        let mut value = R::one();
        match self {
            AppendixCase::I | AppendixCase::II => {
                // det(cos((2j-1) x_i)) = 2^{m(m+1)} prod cos x_i * vdm(cos^2 x_i)
                value = value * real(2f64.powi((m * (m + 1)) as i32));
                for &x in &angles {
                    value = value * real(x.cos());
                }
                let squares: Vec<R> = angles.iter().map(|&x| real(x.cos() * x.cos())).collect();
                value = value * vandermonde(&squares);
                if *self == AppendixCase::II {
                    for j in 1..=m + 1 {
                        value = value / real(self.column_half_angle(q, j).cos());
                    }
                }
            }
            AppendixCase::III | AppendixCase::IV => {
                // det(sin(j x_i)) = 2^{m(m+1)/2} prod sin x_i * vdm(cos x_i)
                value = value * real(2f64.powi((m * (m + 1) / 2) as i32));
                for (&x, &p) in angles.iter().zip(&points) {
                    let row_factor = match self {
                        AppendixCase::III => x.sin() / (p as f64 + 1.0),
                        AppendixCase::IV => x.sin() / (2.0 * p as f64 + 1.0),
                        _ => unreachable!(),
                    };
                    value = value * real(row_factor);
                }
                for j in 1..=m + 1 {
                    let col_factor = match self {
                        AppendixCase::III => {
                            (std::f64::consts::PI * j as f64 / (q as f64 + 2.0)).sin()
                        }
                        AppendixCase::IV => self.column_half_angle(q, j).sin(),
                        _ => unreachable!(),
                    };
                    value = value / real(col_factor);
                }
                let cosines: Vec<R> = angles.iter().map(|&x| real(x.cos())).collect();
                value = value * vandermonde(&cosines);
            }
        }
        Ok(value)
    }

    /// The eigenfunction rows `psi_1 .. psi_{m+1}` as a system table, built
    /// from the closed trigonometric form.
    pub fn psi_table<R: Real>(&self, q: usize, m: usize) -> Result<SystemTable<R>> {
        let rows: Vec<Vec<R>> = (1..=m + 1)
            .map(|j| (0..=q).map(|nu| self.psi(q, j, nu)).collect())
            .collect();
        SystemTable::new(rows)
    }

    /// Same rows computed numerically from the spectrum of the recurrence.
    pub fn numeric_psi_table<R: Real>(&self, q: usize, m: usize) -> Result<SystemTable<R>> {
        let sys = self.family().system::<R>(q, R::zero())?;
        let spectrum = compute_spectrum(&sys)?;
        let rows: Vec<Vec<R>> = spectrum.eigenfunctions()[..=m].to_vec();
        SystemTable::new(rows)
    }
}

fn vandermonde<R: Real>(values: &[R]) -> R {
    let mut acc = R::one();
    for l in 1..values.len() {
        for k in 0..l {
            acc = acc * (values[l] - values[k]);
        }
    }
    acc
}

/// Coefficients `a_{0,m} .. a_{q-m,m}` of the cosine expansion
/// `cos((q+1)x) / prod_{j=0}^{m} (cos x - cos(pi(2j+1)/(2q+2)))
///  = a_0/2 + sum a_nu cos(nu x)`,
/// computed through the gap expansion of the first-kind family.
pub fn trig_cos_coeffs<R: Real>(q: usize, m: usize) -> Result<Vec<R>> {
    if m > q {
        return Err(Error::OutOfRange {
            value: m,
            min: 0,
            max: q,
        });
    }
    let sys = Family::ChebyshevT.system::<R>(q, R::zero())?;
    let spectrum = compute_spectrum(&sys)?;
    let expansion = gap_expand(&sys, &spectrum, m, R::one())?;
    // sum d_l a_l T_l = a_0 + sum 2 a_nu cos(nu x); the printed convention
    // halves the constant term, so every slot doubles.
    Ok(expansion
        .coefficients
        .iter()
        .map(|&a| a * real(2.0))
        .collect())
}

/// Same coefficients by synthetic division in the Chebyshev basis.
pub fn trig_cos_coeffs_division<R: Real>(q: usize, m: usize) -> Result<Vec<R>> {
    if m > q {
        return Err(Error::OutOfRange {
            value: m,
            min: 0,
            max: q,
        });
    }
    let mut coeffs = vec![R::zero(); q + 2];
    coeffs[q + 1] = R::one(); // T_{q+1}
    for j in 1..=m + 1 {
        let root = AppendixCase::I.zero::<R>(q, j);
        coeffs = chebyshev_divide(&coeffs, root);
    }
    // Full T-coefficients -> printed convention (constant slot doubled).
    coeffs[0] = coeffs[0] * real(2.0);
    Ok(coeffs)
}

/// Coefficients `b_{1,m} .. b_{q-m+1,m}` of the sine expansion
/// `sin((q+1)x) / prod_{j=1}^{m} (cos x - cos(pi j/(q+1)))
///  = sum nu b_nu sin(nu x)`,
/// through the gap expansion of the normalized second-kind family.
pub fn trig_sin_coeffs<R: Real>(q: usize, m: usize) -> Result<Vec<R>> {
    if m < 1 || m > q {
        return Err(Error::OutOfRange {
            value: m,
            min: 1,
            max: q,
        });
    }
    // sin((q+1)x)/sin x is the degree-q second-kind polynomial; its table at
    // grid size q-1 makes it the perturbed top polynomial with eta = 0.
    let sys = AppendixCase::III.family().system::<R>(q - 1, R::zero())?;
    let spectrum = compute_spectrum(&sys)?;
    let expansion = gap_expand(&sys, &spectrum, m - 1, R::one())?;
    // The normalized family scales the dividend by q + 1.
    let scale: R = real_usize(q + 1);
    Ok(expansion.coefficients.iter().map(|&a| a * scale).collect())
}

/// Same coefficients by synthetic division in the second-kind basis.
pub fn trig_sin_coeffs_division<R: Real>(q: usize, m: usize) -> Result<Vec<R>> {
    if m < 1 || m > q {
        return Err(Error::OutOfRange {
            value: m,
            min: 1,
            max: q,
        });
    }
    let mut coeffs = vec![R::zero(); q + 1];
    coeffs[q] = R::one(); // U_q
    for j in 1..=m {
        let angle = std::f64::consts::PI * j as f64 / (q as f64 + 1.0);
        coeffs = second_kind_divide(&coeffs, real(angle.cos()));
    }
    Ok(coeffs
        .iter()
        .enumerate()
        .map(|(l, &h)| h / real_usize::<R>(l + 1))
        .collect())
}

/// Quotient of `sum a_k T_k` by `(t - c)` (the root is assumed exact; the
/// remainder is dropped).
fn chebyshev_divide<R: Real>(a: &[R], c: R) -> Vec<R> {
    let n = a.len() - 1;
    debug_assert!(n >= 1);
    let two = real::<R>(2.0);
    let mut h = vec![R::zero(); n];
    if n == 1 {
        h[0] = a[1];
        return h;
    }
    h[n - 1] = two * a[n];
    for j in (2..n).rev() {
        let above = if j + 1 < n { h[j + 1] } else { R::zero() };
        h[j - 1] = two * (a[j] + c * h[j]) - above;
    }
    let above = if n > 2 { h[2] } else { R::zero() };
    h[0] = a[1] + c * h[1] - above / two;
    h
}

/// Quotient of `sum a_k U_k` by `(t - c)`.
fn second_kind_divide<R: Real>(a: &[R], c: R) -> Vec<R> {
    let n = a.len() - 1;
    debug_assert!(n >= 1);
    let two = real::<R>(2.0);
    let mut h = vec![R::zero(); n];
    h[n - 1] = two * a[n];
    for j in (1..n).rev() {
        let above = if j + 1 < n { h[j + 1] } else { R::zero() };
        h[j - 1] = two * (a[j] + c * h[j]) - above;
    }
    h
}

/// Strict decrease with a positive tail, the shape the corollaries assert.
pub fn strictly_decreasing_positive<R: Real>(values: &[R]) -> bool {
    values.windows(2).all(|w| w[0] > w[1]) && values.last().map(|&v| v > R::zero()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn zeros_match_spectra() {
        for case in AppendixCase::all() {
            for q in [2usize, 5, 9] {
                let sys = case.family().system::<f64>(q, 0.0).unwrap();
                let spectrum = compute_spectrum(&sys).unwrap();
                for j in 1..=q + 1 {
                    let closed: f64 = case.zero(q, j);
                    let numeric = spectrum.eigenvalues()[j - 1];
                    assert!(
                        (closed - numeric).abs() < 1e-10,
                        "{case:?} q={q} j={j}: {closed} vs {numeric}"
                    );
                }
            }
        }
    }

    #[test]
    fn psi_closed_form_matches_recurrence() {
        for case in AppendixCase::all() {
            let q = 6;
            let closed = case.psi_table::<f64>(q, 3).unwrap();
            let numeric = case.numeric_psi_table::<f64>(q, 3).unwrap();
            for (c_row, n_row) in closed.rows().iter().zip(numeric.rows()) {
                for (c, n) in c_row.iter().zip(n_row) {
                    assert!((c - n).abs() < 1e-10, "{case:?}: {c} vs {n}");
                }
            }
        }
    }

    #[test]
    fn repeated_point_gives_zero() {
        for case in AppendixCase::all() {
            let det: f64 = case.closed_form_det(6, 3, &[3, 5]).unwrap();
            assert!(det.abs() < 1e-12, "{case:?}");
        }
    }

    #[test]
    fn sign_law_case_i() {
        let q = 8;
        let fixed = [2usize, 5, 7];
        for nu in 0..=q {
            let det: f64 = AppendixCase::I.closed_form_det(q, nu, &fixed).unwrap();
            let r: f64 = fixed.iter().map(|&p| p as f64 - nu as f64).product();
            if fixed.contains(&nu) {
                assert!(det.abs() < 1e-12);
            } else {
                assert_eq!(det.signum(), r.signum(), "nu={nu}");
            }
        }
    }

    #[test]
    fn closed_form_matches_numeric_determinant() {
        let mut rng = StdRng::seed_from_u64(97);
        for case in AppendixCase::all() {
            for &(q, m) in &[(4usize, 1usize), (7, 2), (10, 3)] {
                let numeric_table = case.numeric_psi_table::<f64>(q, m).unwrap();
                for _ in 0..25 {
                    let mut fixed: Vec<usize> = (1..=q).collect();
                    use rand::seq::SliceRandom;
                    fixed.shuffle(&mut rng);
                    let mut fixed: Vec<usize> = fixed[..m].to_vec();
                    fixed.sort_unstable();
                    let nu = rng.gen_range(0..=q);
                    let closed: f64 = case.closed_form_det(q, nu, &fixed).unwrap();
                    let numeric = numeric_table.bordered_det(nu, &fixed).unwrap();
                    if closed.abs() < 1e-12 && numeric.abs() < 1e-12 {
                        continue;
                    }
                    assert!(
                        (closed - numeric).abs() <= 1e-8 * closed.abs(),
                        "{case:?} q={q} m={m} nu={nu} fixed={fixed:?}: {closed} vs {numeric}"
                    );
                }
            }
        }
    }

    #[test]
    fn cosine_expansion_small_case() {
        // q = 1, m = 0: cos 2x / (cos x - cos(pi/4)) = 2 cos x + sqrt(2),
        // printed as a_0/2 + a_1 cos x with a_0 = 2 sqrt(2), a_1 = 2.
        let a = trig_cos_coeffs::<f64>(1, 0).unwrap();
        assert!((a[0] - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((a[1] - 2.0).abs() < 1e-12);
        let b = trig_cos_coeffs_division::<f64>(1, 0).unwrap();
        assert!((b[0] - a[0]).abs() < 1e-12);
        assert!((b[1] - a[1]).abs() < 1e-12);
    }

    #[test]
    fn cosine_routes_agree_and_decrease() {
        for q in 1..=12usize {
            for m in 0..=q {
                let by_gap = trig_cos_coeffs::<f64>(q, m).unwrap();
                let by_division = trig_cos_coeffs_division::<f64>(q, m).unwrap();
                assert_eq!(by_gap.len(), q - m + 1);
                let scale = by_gap.iter().cloned().fold(0.0f64, f64::max);
                for (x, y) in by_gap.iter().zip(&by_division) {
                    assert!((x - y).abs() <= 1e-9 * scale, "q={q} m={m}: {x} vs {y}");
                }
                assert!(
                    strictly_decreasing_positive(&by_gap),
                    "q={q} m={m}: {by_gap:?}"
                );
            }
        }
    }

    #[test]
    fn full_removal_leaves_single_constant() {
        let a = trig_cos_coeffs::<f64>(5, 5).unwrap();
        assert_eq!(a.len(), 1);
        assert!(a[0] > 0.0);
        let b = trig_sin_coeffs::<f64>(1, 1).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0] > 0.0);
    }

    #[test]
    fn sine_expansion_small_case() {
        // q = 2, m = 1: sin 3x / (cos x - 1/2) -> b = (2, 1).
        let b = trig_sin_coeffs::<f64>(2, 1).unwrap();
        assert!((b[0] - 2.0).abs() < 1e-12);
        assert!((b[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sine_routes_agree_and_decrease() {
        for q in 1..=12usize {
            for m in 1..=q {
                let by_gap = trig_sin_coeffs::<f64>(q, m).unwrap();
                let by_division = trig_sin_coeffs_division::<f64>(q, m).unwrap();
                assert_eq!(by_gap.len(), q - m + 1);
                let scale = by_gap.iter().cloned().fold(0.0f64, f64::max);
                for (x, y) in by_gap.iter().zip(&by_division) {
                    assert!((x - y).abs() <= 1e-9 * scale, "q={q} m={m}: {x} vs {y}");
                }
                assert!(
                    strictly_decreasing_positive(&by_gap),
                    "q={q} m={m}: {by_gap:?}"
                );
            }
        }
    }

    #[test]
    fn division_helpers_against_values() {
        // Divide T_4 by (t - cos(pi/8)) and compare values on a grid.
        let root: f64 = (std::f64::consts::PI / 8.0).cos();
        let mut coeffs = vec![0.0f64; 5];
        coeffs[4] = 1.0;
        let h = chebyshev_divide(&coeffs, root);
        for &t in &[-0.9f64, -0.4, 0.1, 0.6, 0.95] {
            let theta: f64 = t.acos();
            let t4 = (4.0 * theta).cos();
            let mut quotient = 0.0;
            for (k, &hk) in h.iter().enumerate() {
                quotient += hk * (k as f64 * theta).cos();
            }
            assert!(
                (quotient * (t - root) - t4).abs() < 1e-12,
                "t={t}: {quotient}"
            );
        }
    }
}
