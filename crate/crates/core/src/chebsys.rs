//! T_0 / T_Z certification by determinant sweeps, the cofactor dual
//! functional, and bordered determinants with their sign law.

use crate::error::{Error, Result};
use crate::linalg;
use crate::real::{real, Real};
use crate::tolerances as tol;

/// A table of `n` linearly independent discrete functions on `[0, q]`;
/// row `k` holds `phi_{k+1}(0..q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemTable<R> {
    rows: Vec<Vec<R>>,
    sign_tol: R,
    /// Product of the full-grid function-row norms; the determinant
    /// singularity threshold is relative to this Hadamard-style scale.
    det_scale: R,
}

impl<R: Real> SystemTable<R> {
    pub fn new(rows: Vec<Vec<R>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Input("system table needs at least one row".into()));
        }
        let cols = rows[0].len();
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("system table rows must share a length".into()));
        }
        let n = rows.len();
        if n > cols {
            return Err(Error::Input(format!(
                "{n} functions on {cols} points cannot be independent"
            )));
        }
        let rank = linalg::rank(rows.clone(), real(tol::DET_TOL_FACTOR));
        if rank < n {
            return Err(Error::DependentRows { rank, n });
        }
        let det_scale = rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(R::zero(), |acc, &v| acc + v * v)
                    .sqrt()
            })
            .fold(R::one(), |acc, norm| acc * norm)
            .max(R::min_positive_value());
        Ok(Self {
            rows,
            sign_tol: real(tol::SIGN_TOL_DEFAULT),
            det_scale,
        })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Grid size `q`.
    pub fn q(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn rows(&self) -> &[Vec<R>] {
        &self.rows
    }

    /// Matrix `(phi_j(nu_i))` with rows indexed by `points` in the given
    /// order and columns by the functions.
    fn matrix_at(&self, points: &[usize]) -> Vec<Vec<R>> {
        points
            .iter()
            .map(|&p| self.rows.iter().map(|row| row[p]).collect())
            .collect()
    }

    /// Singularity threshold: `DET_TOL_FACTOR` times the product of the
    /// function-row norms over the whole grid (an upper bound on every
    /// subset determinant, so the threshold is relative and fixed).
    pub fn det_tol(&self) -> R {
        real::<R>(tol::DET_TOL_FACTOR) * self.det_scale
    }

    /// Determinant over an increasing point subset of size `n`.
    pub fn gram_det(&self, points: &[usize]) -> Result<R> {
        self.check_points(points, self.n())?;
        Ok(linalg::det(self.matrix_at(points)))
    }

    fn check_points(&self, points: &[usize], expected: usize) -> Result<()> {
        if points.len() != expected
            || points.windows(2).any(|w| w[0] >= w[1])
            || points.iter().any(|&p| p > self.q())
        {
            return Err(Error::BadPointSet);
        }
        Ok(())
    }

    /// Sweep all `n`-point subsets and classify the system.
    pub fn certify(&self, budget: usize) -> Result<TSystemCertificate<R>> {
        let n = self.n();
        let q = self.q();
        let needed = binomial(q + 1, n);
        if needed > budget {
            return Err(Error::SubsetBudget { needed, budget });
        }
        let mut subset: Vec<usize> = (0..n).collect();
        let mut min_abs = R::infinity();
        let mut common_sign = 0i8;
        let mut mixed_witness: Option<Vec<usize>> = None;
        let mut checked = 0usize;
        loop {
            checked += 1;
            let det = linalg::det(self.matrix_at(&subset));
            let cut = self.det_tol();
            min_abs = min_abs.min(det.abs());
            if det.abs() <= cut {
                // A vanishing determinant settles the classification.
                return Ok(TSystemCertificate {
                    kind: TSystemKind::Neither,
                    common_sign: None,
                    witness: Some(subset),
                    min_abs_det: min_abs,
                    subsets_checked: checked,
                });
            }
            let sign = if det > R::zero() { 1 } else { -1 };
            if common_sign == 0 {
                common_sign = sign;
            } else if sign != common_sign && mixed_witness.is_none() {
                mixed_witness = Some(subset.clone());
            }
            if !next_subset_colex(&mut subset, q) {
                break;
            }
        }
        Ok(match mixed_witness {
            Some(witness) => TSystemCertificate {
                kind: TSystemKind::T0Only,
                common_sign: None,
                witness: Some(witness),
                min_abs_det: min_abs,
                subsets_checked: checked,
            },
            None => TSystemCertificate {
                kind: TSystemKind::TZ,
                common_sign: Some(common_sign),
                witness: None,
                min_abs_det: min_abs,
                subsets_checked: checked,
            },
        })
    }

    /// Random-subset probe for tables too large to sweep. Can refute the
    /// T_Z property (zero or mixed-sign determinant) but never certify it.
    pub fn certify_sampled(&self, trials: usize, seed: u64) -> SampledCertificate<R> {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = self.n();
        let q = self.q();
        let mut pool: Vec<usize> = (0..=q).collect();
        let mut min_abs = R::infinity();
        let mut sign_seen = 0i8;
        for checked in 1..=trials {
            pool.shuffle(&mut rng);
            let mut subset: Vec<usize> = pool[..n].to_vec();
            subset.sort_unstable();
            let det = linalg::det(self.matrix_at(&subset));
            min_abs = min_abs.min(det.abs());
            if det.abs() <= self.det_tol() {
                return SampledCertificate {
                    refutation: Some((TSystemKind::Neither, subset)),
                    checked,
                    min_abs_det: min_abs,
                };
            }
            let sign = if det > R::zero() { 1 } else { -1 };
            if sign_seen == 0 {
                sign_seen = sign;
            } else if sign != sign_seen {
                return SampledCertificate {
                    refutation: Some((TSystemKind::T0Only, subset)),
                    checked,
                    min_abs_det: min_abs,
                };
            }
        }
        SampledCertificate {
            refutation: None,
            checked: trials,
            min_abs_det: min_abs,
        }
    }

    /// Signed cofactor weights of the annihilating functional on `n + 1`
    /// points, normalized to `max |lambda_i| = 1`.
    ///
    /// The functional `sum lambda_i p(nu_i)` vanishes on the span of the
    /// table; for a T_Z system its signs strictly alternate.
    pub fn dual_functional(&self, points: &[usize]) -> Result<Vec<R>> {
        let n = self.n();
        self.check_points(points, n + 1)?;
        let mut weights = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let reduced: Vec<usize> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &p)| p)
                .collect();
            let cof = linalg::det(self.matrix_at(&reduced));
            let sign = if i % 2 == 0 { R::one() } else { -R::one() };
            weights.push(sign * cof);
        }
        let scale = weights.iter().map(|w| w.abs()).fold(R::zero(), R::max);
        if scale <= R::min_positive_value() {
            return Err(Error::DegenerateDual);
        }
        Ok(weights.into_iter().map(|w| w / scale).collect())
    }

    /// Residual of the dual functional against every row, relative to row norms.
    pub fn dual_residual(&self, points: &[usize], weights: &[R]) -> R {
        let mut worst = R::zero();
        for row in &self.rows {
            let mut acc = R::zero();
            let mut norm = R::zero();
            for (&p, &w) in points.iter().zip(weights) {
                acc = acc + w * row[p];
                norm = norm + row[p] * row[p];
            }
            let norm = norm.sqrt().max(R::min_positive_value());
            worst = worst.max(acc.abs() / norm);
        }
        worst
    }

    /// Bordered determinant `D_{m+1}(nu, nu_1, ..., nu_m)` over a table of
    /// `m + 1` functions: rows run down the fixed points in descending order
    /// and finish with `nu`.
    pub fn bordered_det(&self, nu: usize, fixed: &[usize]) -> Result<R> {
        let m = self.n() - 1;
        if fixed.len() != m
            || fixed.windows(2).any(|w| w[0] >= w[1])
            || fixed.iter().any(|&p| p < 1 || p > self.q())
            || nu > self.q()
        {
            return Err(Error::BadPointSet);
        }
        let mut order: Vec<usize> = fixed.iter().rev().copied().collect();
        order.push(nu);
        Ok(linalg::det(self.matrix_at(&order)))
    }

    pub(crate) fn bordered_det_tol(&self) -> R {
        self.det_tol()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TSystemKind {
    /// All subset determinants nonzero with one common sign.
    TZ,
    /// All nonzero but with mixed signs.
    T0Only,
    /// Some subset determinant vanishes.
    Neither,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TSystemCertificate<R> {
    pub kind: TSystemKind,
    /// Common determinant sign, present exactly for `TZ`.
    pub common_sign: Option<i8>,
    /// A violating subset, present exactly for the non-`TZ` kinds.
    pub witness: Option<Vec<usize>>,
    /// Smallest `|det|` seen, so callers can judge the margin.
    pub min_abs_det: R,
    pub subsets_checked: usize,
}

/// Outcome of the sampling probe (refutation-only).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCertificate<R> {
    pub refutation: Option<(TSystemKind, Vec<usize>)>,
    pub checked: usize,
    pub min_abs_det: R,
}

/// Colex successor of an increasing subset of `[0, max]`; false when done.
fn next_subset_colex(subset: &mut [usize], max: usize) -> bool {
    let n = subset.len();
    for i in 0..n {
        let limit = if i + 1 < n { subset[i + 1] - 1 } else { max };
        if subset[i] < limit {
            subset[i] += 1;
            for (j, slot) in subset.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Sign-law check for bordered determinants of a certified T_Z table:
/// `sign D(nu) = sign D(0, q-m+1, ..., q) * sign prod (nu_j - nu)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignLawReport {
    pub pass: bool,
    pub trials: usize,
    pub violations: Vec<SignLawViolation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignLawViolation {
    pub nu: usize,
    pub fixed: Vec<usize>,
    pub det: f64,
    pub expected_sign: i8,
}

pub fn sign_law_check<R: Real>(
    table: &SystemTable<R>,
    trials: usize,
    seed: u64,
) -> Result<SignLawReport> {
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rand::SeedableRng;
    let m = table.n() - 1;
    let q = table.q();
    if m < 1 || m > q {
        return Err(Error::OutOfRange {
            value: m,
            min: 1,
            max: q,
        });
    }
    let reference: Vec<usize> = (q - m + 1..=q).collect();
    let base = table.bordered_det(0, &reference)?;
    let base_sign = if base > R::zero() { 1i8 } else { -1i8 };

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = (1..=q).collect();
    let mut violations = Vec::new();
    for _ in 0..trials {
        pool.shuffle(&mut rng);
        let mut fixed: Vec<usize> = pool[..m].to_vec();
        fixed.sort_unstable();
        let nu = rng.gen_range(0..=q);
        let det = table.bordered_det(nu, &fixed)?;
        let cut = table.bordered_det_tol();
        let coincident = fixed.contains(&nu);
        if det.abs() <= cut {
            if !coincident {
                violations.push(SignLawViolation {
                    nu,
                    fixed: fixed.clone(),
                    det: det.to_f64().unwrap_or(f64::NAN),
                    expected_sign: 0,
                });
            }
            continue;
        }
        // R_m(nu) = prod (nu_j - nu): each fixed point below nu flips the sign.
        let flips = fixed.iter().filter(|&&p| p < nu).count();
        let r_sign = if flips % 2 == 0 { 1i8 } else { -1i8 };
        let expected = base_sign * r_sign;
        let got = if det > R::zero() { 1i8 } else { -1i8 };
        if coincident || got != expected {
            violations.push(SignLawViolation {
                nu,
                fixed: fixed.clone(),
                det: det.to_f64().unwrap_or(f64::NAN),
                expected_sign: if coincident { 0 } else { expected },
            });
        }
    }
    Ok(SignLawReport {
        pass: violations.is_empty(),
        trials,
        violations,
    })
}

/// Monomial rows `1, nu, nu^2, ...` on `[0, q]` -- the canonical T_Z example.
pub fn monomial_table<R: Real>(n: usize, q: usize) -> Result<SystemTable<R>> {
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let row: Vec<R> = (0..=q)
            .map(|nu| {
                let x: R = real(nu as f64);
                let mut acc = R::one();
                for _ in 0..k {
                    acc = acc * x;
                }
                acc
            })
            .collect();
        rows.push(row);
    }
    SystemTable::new(rows)
}
