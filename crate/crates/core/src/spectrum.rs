//! The discrete Sturm-Liouville eigenproblem.
//!
//! The zeros of the perturbed polynomial `Ptilde_{q+1}` are the eigenvalues of
//! the boundary-modified Jacobi matrix `J_{q+1} psi = lambda rho psi`. We
//! symmetrize, bisect on the Sturm count, and tabulate the eigenfunctions
//! `psi_k(nu) = P_nu(lambda_k)` with the normalization `psi_k(0) = 1`.

use crate::error::{Error, Result};
use crate::real::{real, Real};
use crate::recurrence::RecurrenceSystem;
use crate::tolerances as tol;
use crate::tridiag;

/// Eigenvalues (descending) and the eigenfunction table of a system.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<R> {
    eigenvalues: Vec<R>,
    /// `eigenfunctions[k][nu] = P_nu(lambda_{k+1})`; rows are unnormalized
    /// beyond the built-in `psi(0) = 1`.
    eigenfunctions: Vec<Vec<R>>,
    /// `|Ptilde_{q+1}(lambda_k)|` per eigenvalue.
    residuals: Vec<R>,
    /// `max_nu |psi_k(nu)|` per row, recorded for residual tests.
    row_scale: Vec<R>,
    /// `max |Ptilde_{q+1}|` sampled over the eigenvalue range.
    ptilde_scale: R,
}

impl<R: Real> Spectrum<R> {
    /// Eigenvalues in the descending order `lambda_1 > ... > lambda_{q+1}`.
    pub fn eigenvalues(&self) -> &[R] {
        &self.eigenvalues
    }

    /// Row `k` (0-based) holds `psi_{k+1}(0..q)`.
    pub fn eigenfunctions(&self) -> &[Vec<R>] {
        &self.eigenfunctions
    }

    pub fn residuals(&self) -> &[R] {
        &self.residuals
    }

    pub fn row_scale(&self) -> &[R] {
        &self.row_scale
    }

    pub fn ptilde_scale(&self) -> R {
        self.ptilde_scale
    }

    /// Grid size `q` (rows have `q + 1` entries).
    pub fn q(&self) -> usize {
        self.eigenvalues.len() - 1
    }
}

/// Solve the eigenproblem of `sys`: bisection on the symmetrized tridiagonal
/// matrix, eigenfunctions by the forward recurrence at each eigenvalue.
pub fn compute_spectrum<R: Real>(sys: &RecurrenceSystem<R>) -> Result<Spectrum<R>> {
    let q = sys.q();
    let (diag, off) = sys.symmetric_tridiagonal(q + 1, Some(sys.eta()));
    let mut eigenvalues = tridiag::eigenvalues(&diag, &off);
    eigenvalues.reverse(); // paper order: descending

    let mut eigenfunctions = Vec::with_capacity(q + 1);
    let mut residuals = Vec::with_capacity(q + 1);
    let mut row_scale = Vec::with_capacity(q + 1);
    for &lambda in &eigenvalues {
        let row = sys.eval_polys(q, lambda)?;
        let scale = row.iter().map(|v| v.abs()).fold(R::zero(), R::max);
        residuals.push(sys.eval_ptilde(lambda).abs());
        row_scale.push(scale);
        eigenfunctions.push(row);
    }

    let ptilde_scale = sample_ptilde_scale(sys, &eigenvalues);
    let bound = real::<R>(tol::PTILDE_RESIDUAL) * ptilde_scale;
    let worst = residuals.iter().cloned().fold(R::zero(), R::max);
    if !(worst <= bound) {
        return Err(Error::EigenResidual {
            worst: worst.to_f64().unwrap_or(f64::NAN),
            bound: bound.to_f64().unwrap_or(f64::NAN),
        });
    }

    Ok(Spectrum {
        eigenvalues,
        eigenfunctions,
        residuals,
        row_scale,
        ptilde_scale,
    })
}

/// `max |Ptilde|` over a padded sample of the eigenvalue range.
fn sample_ptilde_scale<R: Real>(sys: &RecurrenceSystem<R>, eigenvalues: &[R]) -> R {
    let hi = eigenvalues[0];
    let lo = eigenvalues[eigenvalues.len() - 1];
    let span = (hi - lo).max(R::one());
    let pad = span * real(0.05);
    let a = lo - pad;
    let b = hi + pad;
    let steps = 200;
    let mut scale = R::zero();
    for i in 0..=steps {
        let t = real::<R>(i as f64 / steps as f64);
        let x = a + (b - a) * t;
        scale = scale.max(sys.eval_ptilde(x).abs());
    }
    scale.max(R::min_positive_value())
}

/// One violated inequality in the interlacing chains.
#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingViolation {
    /// Degree of the outer polynomial (`q + 1` means the perturbed one).
    pub degree: usize,
    /// Index of the inequality inside the chain.
    pub index: usize,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingReport {
    pub pass: bool,
    pub violation: Option<InterlacingViolation>,
}

/// Verify both interlacing chains: zeros of `P_{l-1}` inside zeros of `P_l`
/// for `l = 2..q`, and zeros of `P_q` inside zeros of `Ptilde_{q+1}`.
pub fn interlacing_check<R: Real>(sys: &RecurrenceSystem<R>) -> Result<InterlacingReport> {
    let q = sys.q();
    let fail = |degree, index, left: R, right: R| InterlacingReport {
        pass: false,
        violation: Some(InterlacingViolation {
            degree,
            index,
            left: left.to_f64().unwrap_or(f64::NAN),
            right: right.to_f64().unwrap_or(f64::NAN),
        }),
    };

    let mut prev = if q >= 1 { sys.poly_zeros(1)? } else { Vec::new() };
    for l in 2..=q {
        let cur = sys.poly_zeros(l)?;
        for i in 0..l - 1 {
            if !(cur[i] < prev[i]) {
                return Ok(fail(l, 2 * i, cur[i], prev[i]));
            }
            if !(prev[i] < cur[i + 1]) {
                return Ok(fail(l, 2 * i + 1, prev[i], cur[i + 1]));
            }
        }
        prev = cur;
    }

    if q >= 1 {
        let inner = sys.poly_zeros(q)?; // zeros of P_q, ascending
        let spectrum = compute_spectrum(sys)?;
        let mut outer = spectrum.eigenvalues().to_vec();
        outer.reverse(); // ascending
        for i in 0..q {
            if !(outer[i] < inner[i]) {
                return Ok(fail(q + 1, 2 * i, outer[i], inner[i]));
            }
            if !(inner[i] < outer[i + 1]) {
                return Ok(fail(q + 1, 2 * i + 1, inner[i], outer[i + 1]));
            }
        }
    }

    Ok(InterlacingReport {
        pass: true,
        violation: None,
    })
}

/// Largest normalized off-diagonal Gram entry of the eigenfunction rows under
/// the `d`-weighted inner product. Zero when there are no pairs.
pub fn discrete_orthogonality_check<R: Real>(
    sys: &RecurrenceSystem<R>,
    spectrum: &Spectrum<R>,
) -> Result<R> {
    let q = sys.q();
    let d = sys.derive_weights()?.d;
    let rows = spectrum.eigenfunctions();
    let norms: Vec<R> = rows
        .iter()
        .map(|row| {
            row.iter()
                .zip(&d)
                .fold(R::zero(), |acc, (&v, &dv)| acc + dv * v * v)
                .sqrt()
        })
        .collect();
    let mut worst = R::zero();
    for k in 0..=q {
        for s in k + 1..=q {
            let mut dot = R::zero();
            for nu in 0..=q {
                dot = dot + d[nu] * rows[k][nu] * rows[s][nu];
            }
            worst = worst.max(dot.abs() / (norms[k] * norms[s]));
        }
    }
    Ok(worst)
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::Spectrum;
    use crate::real::Real;

    /// Fault-injection helper: replace the eigenvalues of a spectrum.
    pub(crate) fn with_eigenvalues<R: Real>(mut s: Spectrum<R>, eigenvalues: Vec<R>) -> Spectrum<R> {
        s.eigenvalues = eigenvalues;
        s
    }
}
