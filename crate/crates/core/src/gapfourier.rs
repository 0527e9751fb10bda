//! Expansions of the perturbed polynomial with its largest zeros removed.
//!
//! Dividing `Ptilde_{q+1}` by its `m + 1` largest zeros leaves a polynomial of
//! degree `q - m`; its coefficients in the `P`-basis are computed by two
//! independent routes (a partial-fraction formula over the removed zeros, and
//! quadrature against the explicit quotient) and classified by the
//! monotonicity trichotomy in `eta` relative to `eta_b = P_{q+1}(b)/P_q(b)`.

use crate::chebsys::SystemTable;
use crate::error::{Error, Result};
use crate::poly;
use crate::real::{real, Real};
use crate::recurrence::RecurrenceSystem;
use crate::spectrum::Spectrum;
use crate::tolerances as tol;

/// Monotonicity pattern observed in the ratios `a_l / P_l(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneVerdict {
    StrictlyDecreasing,
    AllEqual,
    StrictlyIncreasing,
    Mixed,
}

/// The expansion data: removed zeros, coefficients, and ratio diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct GapExpansion<R> {
    /// Number of removed zeros minus one.
    pub m: usize,
    /// The removed (largest) zeros, descending.
    pub removed: Vec<R>,
    /// Coefficients `a_0 .. a_{q-m}` of the `d_l a_l P_l` expansion.
    pub coefficients: Vec<R>,
    /// Evaluation point for the ratio chain.
    pub b: R,
    /// `a_l / P_l(b)`.
    pub ratios: Vec<R>,
    pub verdict: MonotoneVerdict,
    /// Relative gap between the partial-fraction and quadrature routes.
    pub route_gap: R,
    /// Relative residual of the quotient-times-factors reconstruction.
    pub reconstruction_residual: R,
}

/// `eta_b = P_{q+1}(b) / P_q(b)`, defined when `b` lies strictly right of
/// every zero of `P_q`.
pub fn eta_b<R: Real>(sys: &RecurrenceSystem<R>, b: R) -> Result<R> {
    check_b(sys, b)?;
    let p = sys.eval_polys(sys.q() + 1, b)?;
    Ok(p[sys.q() + 1] / p[sys.q()])
}

fn check_b<R: Real>(sys: &RecurrenceSystem<R>, b: R) -> Result<()> {
    if sys.q() == 0 {
        return Ok(()); // P_0 = 1 has no zeros
    }
    let zeros = sys.poly_zeros(sys.q())?;
    let largest = zeros[zeros.len() - 1];
    if b > largest {
        Ok(())
    } else {
        Err(Error::PointInsideZeroRange {
            b: b.to_f64().unwrap_or(f64::NAN),
            zero: largest.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Expand `Ptilde_{q+1} / prod_{j<=m+1} (lambda - lambda_j)` in the `P`-basis.
///
/// The primary route is the partial-fraction sum over the removed zeros; the
/// quadrature of the synthetic-division quotient must agree to
/// [`tol::GAP_ROUTE_REL`], and the expansion must reproduce the perturbed
/// polynomial at spread sample points.
pub fn gap_expand<R: Real>(
    sys: &RecurrenceSystem<R>,
    spectrum: &Spectrum<R>,
    m: usize,
    b: R,
) -> Result<GapExpansion<R>> {
    let q = sys.q();
    if m > q {
        return Err(Error::OutOfRange {
            value: m,
            min: 0,
            max: q,
        });
    }
    check_b(sys, b)?;
    let removed: Vec<R> = spectrum.eigenvalues()[..=m].to_vec();
    let weights = sys.derive_weights()?;
    let w_q = weights.w[q];

    // Partial fractions: a_nu = (1/w_q) sum_i P_nu(lambda_i) / (omega'(lambda_i) P_q(lambda_i)).
    let mut coefficients = vec![R::zero(); q - m + 1];
    for (i, &lam_i) in removed.iter().enumerate() {
        let mut omega_prime = R::one();
        for (j, &lam_j) in removed.iter().enumerate() {
            if j != i {
                omega_prime = omega_prime * (lam_i - lam_j);
            }
        }
        let row = &spectrum.eigenfunctions()[i];
        let p_q = row[q];
        let denom = omega_prime * p_q * w_q;
        for (nu, slot) in coefficients.iter_mut().enumerate() {
            *slot = *slot + row[nu] / denom;
        }
    }

    // Quadrature route: synthetic division in the monomial basis, then
    // projections onto P_nu under the Favard measure.
    let mut quotient = sys.ptilde_monomial();
    for &root in &removed {
        poly::divide_by_root(&mut quotient, root);
    }
    let rule = sys.gauss_quadrature(q + 1)?;
    let mut by_quadrature = vec![R::zero(); q - m + 1];
    for (&x, &wt) in rule.nodes().iter().zip(rule.weights()) {
        let qx = poly::eval(&quotient, x);
        let p = sys.eval_polys(q - m, x)?;
        for (nu, slot) in by_quadrature.iter_mut().enumerate() {
            *slot = *slot + wt * qx * p[nu];
        }
    }

    let scale = coefficients
        .iter()
        .map(|a| a.abs())
        .fold(R::zero(), R::max)
        .max(R::min_positive_value());
    let route_gap = coefficients
        .iter()
        .zip(&by_quadrature)
        .map(|(&a, &b)| (a - b).abs())
        .fold(R::zero(), R::max)
        / scale;
    if !(route_gap <= real(tol::GAP_ROUTE_REL)) {
        return Err(Error::RouteDisagreement {
            gap: route_gap.to_f64().unwrap_or(f64::NAN),
            bound: tol::GAP_ROUTE_REL,
        });
    }

    let reconstruction_residual = reconstruction_residual(sys, spectrum, &removed, &coefficients)?;
    if !(reconstruction_residual <= real(tol::GAP_RECONSTRUCT_REL)) {
        return Err(Error::ReconstructionFailed {
            residual: reconstruction_residual.to_f64().unwrap_or(f64::NAN),
        });
    }

    let pb = sys.eval_polys(q - m, b)?;
    let ratios: Vec<R> = coefficients
        .iter()
        .zip(&pb)
        .map(|(&a, &p)| a / p)
        .collect();
    let verdict = classify_ratios(&ratios);

    Ok(GapExpansion {
        m,
        removed,
        coefficients,
        b,
        ratios,
        verdict,
        route_gap,
        reconstruction_residual,
    })
}

/// Check `sum d_l a_l P_l(x) * prod (x - lambda_j) = Ptilde(x)` at `q + 2`
/// spread sample points; returns the relative residual.
fn reconstruction_residual<R: Real>(
    sys: &RecurrenceSystem<R>,
    spectrum: &Spectrum<R>,
    removed: &[R],
    coefficients: &[R],
) -> Result<R> {
    let q = sys.q();
    let d = &sys.derive_weights()?.d;
    let eigenvalues = spectrum.eigenvalues();
    let hi = eigenvalues[0];
    let lo = eigenvalues[eigenvalues.len() - 1];
    let mid = (hi + lo) / real(2.0);
    let half = ((hi - lo) / real(2.0)).max(real(0.5)) * real(1.1);

    let samples = q + 2;
    let mut worst = R::zero();
    for s in 0..samples {
        // Chebyshev-spread points over the padded zero range.
        let angle = std::f64::consts::PI * (s as f64 + 0.5) / samples as f64;
        let x = mid + half * real(angle.cos());
        let p = sys.eval_polys(q + 1 - removed.len(), x)?;
        let mut sum = R::zero();
        let mut magnitude = R::zero();
        for (l, &a) in coefficients.iter().enumerate() {
            let term = d[l] * a * p[l];
            sum = sum + term;
            magnitude = magnitude + term.abs();
        }
        let mut factors = R::one();
        for &root in removed {
            factors = factors * (x - root);
        }
        let target = sys.eval_ptilde(x);
        // Residual relative to the magnitudes actually combined; the
        // expansion terms can cancel by many digits where the quotient is
        // small, so the target alone is not a fair scale.
        let scale = target
            .abs()
            .max(magnitude * factors.abs())
            .max(R::min_positive_value());
        worst = worst.max((sum * factors - target).abs() / scale);
    }
    Ok(worst)
}

fn classify_ratios<R: Real>(ratios: &[R]) -> MonotoneVerdict {
    if ratios.len() <= 1 {
        return MonotoneVerdict::AllEqual;
    }
    let max = ratios
        .iter()
        .map(|r| r.abs())
        .fold(R::zero(), R::max)
        .max(R::min_positive_value());
    let spread = ratios
        .iter()
        .fold(R::neg_infinity(), |acc, &r| acc.max(r))
        - ratios.iter().fold(R::infinity(), |acc, &r| acc.min(r));
    if spread <= real::<R>(tol::RATIO_EQUAL_SPREAD) * max {
        return MonotoneVerdict::AllEqual;
    }
    let margin = real::<R>(tol::RATIO_STRICT_MARGIN) * max;
    if ratios.windows(2).all(|w| w[0] - w[1] > margin) {
        return MonotoneVerdict::StrictlyDecreasing;
    }
    if ratios.windows(2).all(|w| w[1] - w[0] > margin) {
        return MonotoneVerdict::StrictlyIncreasing;
    }
    MonotoneVerdict::Mixed
}

/// Which branch of the trichotomy `(m, eta vs eta_b)` selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaCase {
    /// `m >= 1`, or `m = 0` with `eta < eta_b`: strictly decreasing ratios.
    A,
    /// `m = 0` and `eta = eta_b`: all ratios equal.
    B,
    /// `m = 0` and `eta > eta_b`: strictly increasing ratios.
    C,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EtaClassification<R> {
    pub eta_b: R,
    pub case: EtaCase,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyReport<R> {
    pub classification: EtaClassification<R>,
    pub expected: MonotoneVerdict,
    pub observed: MonotoneVerdict,
    /// All ratios strictly positive (within the strictness margin).
    pub positive: bool,
    /// Smallest consecutive gap (monotone cases) or the spread (equal case).
    pub margin: R,
    pub pass: bool,
}

/// Classify the expansion against the predicted trichotomy branch.
pub fn classify_and_verify<R: Real>(
    sys: &RecurrenceSystem<R>,
    expansion: &GapExpansion<R>,
) -> Result<ClassifyReport<R>> {
    let eb = eta_b(sys, expansion.b)?;
    let eta = sys.eta();
    let eq_tol = real::<R>(tol::ETA_CASE_EQ) * (R::one() + eb.abs());
    let case = if expansion.m >= 1 {
        EtaCase::A
    } else if (eta - eb).abs() <= eq_tol {
        EtaCase::B
    } else if eta < eb {
        EtaCase::A
    } else {
        EtaCase::C
    };
    let expected = match case {
        EtaCase::A => MonotoneVerdict::StrictlyDecreasing,
        EtaCase::B => MonotoneVerdict::AllEqual,
        EtaCase::C => MonotoneVerdict::StrictlyIncreasing,
    };
    let ratios = &expansion.ratios;
    let max = ratios
        .iter()
        .map(|r| r.abs())
        .fold(R::zero(), R::max)
        .max(R::min_positive_value());
    let positive = ratios
        .iter()
        .all(|&r| r > -real::<R>(tol::RATIO_STRICT_MARGIN) * max);
    let margin = match expansion.verdict {
        MonotoneVerdict::AllEqual => {
            ratios.iter().fold(R::neg_infinity(), |a, &r| a.max(r))
                - ratios.iter().fold(R::infinity(), |a, &r| a.min(r))
        }
        _ => ratios
            .windows(2)
            .map(|w| (w[0] - w[1]).abs())
            .fold(R::infinity(), R::min),
    };
    let observed = expansion.verdict;
    let pass = observed == expected && positive;
    Ok(ClassifyReport {
        classification: EtaClassification { eta_b: eb, case },
        expected,
        observed,
        positive,
        margin,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport<R> {
    /// Mean of `a_nu / D_{m+1}(nu, q-m+1, ..., q)`.
    pub ratio: R,
    /// Relative spread of the ratio over `nu`.
    pub spread: R,
    pub positive: bool,
    pub pass: bool,
}

/// Verify that the expansion coefficients are a constant positive multiple of
/// the bordered determinants over the eigenfunction rows.
pub fn determinant_crosscheck<R: Real>(
    sys: &RecurrenceSystem<R>,
    spectrum: &Spectrum<R>,
    m: usize,
) -> Result<CrosscheckReport<R>> {
    let q = sys.q();
    if m < 1 || m > q {
        return Err(Error::OutOfRange {
            value: m,
            min: 1,
            max: q,
        });
    }
    // b only parameterizes the ratio diagnostics; any admissible point works.
    let b = right_endpoint(sys, spectrum);
    let expansion = gap_expand(sys, spectrum, m, b)?;

    let rows: Vec<Vec<R>> = spectrum.eigenfunctions()[..=m].to_vec();
    let table = SystemTable::new(rows)?;
    let fixed: Vec<usize> = (q - m + 1..=q).collect();
    let mut ratios = Vec::with_capacity(q - m + 1);
    for (nu, &a) in expansion.coefficients.iter().enumerate() {
        let det = table.bordered_det(nu, &fixed)?;
        if det.abs() <= table.bordered_det_tol() {
            return Err(Error::VanishingDeterminant { nu });
        }
        ratios.push(a / det);
    }
    let mean = ratios.iter().fold(R::zero(), |acc, &r| acc + r)
        / R::from_usize(ratios.len()).expect("small count");
    let spread = ratios
        .iter()
        .map(|&r| (r - mean).abs())
        .fold(R::zero(), R::max)
        / mean.abs().max(R::min_positive_value());
    let positive = mean > R::zero();
    let pass = spread <= real(tol::CROSSCHECK_SPREAD) && positive;
    Ok(CrosscheckReport {
        ratio: mean,
        spread,
        positive,
        pass,
    })
}

/// A point strictly right of every zero of `P_q`: one for the usual
/// normalized families, otherwise just past the largest eigenvalue.
pub fn right_endpoint<R: Real>(sys: &RecurrenceSystem<R>, spectrum: &Spectrum<R>) -> R {
    let one = R::one();
    if sys.family().is_some() {
        // Built-in families live on [-1, 1]; eta may push lambda_1 past it.
        return one.max(spectrum.eigenvalues()[0] + real(0.5));
    }
    spectrum.eigenvalues()[0].max(
        sys.poly_zeros(sys.q().max(1))
            .map(|z| z[z.len() - 1])
            .unwrap_or(R::zero()),
    ) + one
}
