//! Discrete best uniform approximation on the grid.
//!
//! The exchange algorithm produces Chebyshev alternance certificates for T_Z
//! bases. An exhaustive de la Vallee-Poussin style oracle covers small
//! problems of any kind: on every `(n+1)`-point subset the annihilating
//! functional yields the levelled error, and the best subset whose levelled
//! polynomial attains its level globally is optimal.

use crate::chebsys::{binomial, SystemTable, TSystemCertificate, TSystemKind};
use crate::error::{Error, Result};
use crate::linalg;
use crate::oscillation::DiscreteFunction;
use crate::real::{real, real_usize, Real};
use crate::tolerances as tol;

/// `n + 1` grid points where the error equioscillates.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternanceCertificate<R> {
    pub points: Vec<usize>,
    /// `orientation * (-1)^i * e(points[i]) = level` (0-based `i`).
    pub orientation: i8,
    pub level: R,
}

/// Dual optimality certificate: the error attains its norm with signs
/// `signs[i]` at `points[i]`, and the positive weights annihilate the span.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate<R> {
    pub points: Vec<usize>,
    pub signs: Vec<i8>,
    pub weights: Vec<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<R> {
    Alternance(AlternanceCertificate<R>),
    Dual(DualCertificate<R>),
    /// `f` lies in the span; the level is zero.
    Exact { point: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult<R> {
    pub coefficients: Vec<R>,
    pub level: R,
    pub certificate: Certificate<R>,
    pub iterations: usize,
}

impl<R: Real> ApproxResult<R> {
    /// Error `p - f` on the whole grid.
    pub fn error_on_grid(&self, f: &DiscreteFunction<R>, table: &SystemTable<R>) -> Vec<R> {
        let q = table.q();
        (0..=q)
            .map(|nu| {
                let mut p = R::zero();
                for (row, &a) in table.rows().iter().zip(&self.coefficients) {
                    p = p + a * row[nu];
                }
                p - f.values()[nu]
            })
            .collect()
    }
}

/// Coefficients interpolating `values` at `points` (unique when the point
/// set is nonsingular for the table).
pub fn interpolate<R: Real>(
    table: &SystemTable<R>,
    points: &[usize],
    values: &[R],
) -> Result<Vec<R>> {
    let n = table.n();
    if points.len() != n || values.len() != n {
        return Err(Error::BadPointSet);
    }
    let matrix: Vec<Vec<R>> = points
        .iter()
        .map(|&p| table.rows().iter().map(|row| row[p]).collect())
        .collect();
    linalg::solve(matrix, values.to_vec()).ok_or(Error::Singular)
}

fn function_scale<R: Real>(f: &DiscreteFunction<R>) -> R {
    f.values()
        .iter()
        .map(|v| v.abs())
        .fold(R::zero(), R::max)
        .max(R::one())
}

/// Best uniform approximation by single-point Remez exchange.
///
/// Requires a T_Z certificate; non-Chebyshev tables are refused and should go
/// through [`best_approx_oracle`]. A singular levelled system mid-run is
/// itself a non-T_Z witness and is reported as an error.
pub fn best_approx<R: Real>(
    f: &DiscreteFunction<R>,
    table: &SystemTable<R>,
    cert: &TSystemCertificate<R>,
) -> Result<ApproxResult<R>> {
    if cert.kind != TSystemKind::TZ {
        return Err(Error::NotChebyshev {
            witness: cert.witness.clone(),
        });
    }
    let n = table.n();
    let q = table.q();
    if f.values().len() != q + 1 {
        return Err(Error::LengthMismatch {
            name: "f",
            got: f.values().len(),
            expected: q + 1,
        });
    }
    if n == q + 1 {
        return exact_representation(f, table);
    }

    // Evenly spread initial reference, forced strictly increasing.
    let mut reference: Vec<usize> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let raw = (i as f64 * q as f64 / n as f64).round() as usize;
        let lo = reference.last().map_or(0, |&p| p + 1);
        reference.push(raw.max(lo).min(q));
    }

    let scale = function_scale(f);
    let degenerate = real::<R>(tol::DEGENERATE_LEVEL) * scale;
    let mut previous_level = -R::one();
    let max_iterations = binomial(q + 1, n + 1).clamp(16, 10_000);

    for iteration in 1..=max_iterations {
        let (coefficients, signed_level) = solve_levelled(table, f, &reference)?;
        let level = signed_level.abs();
        let result = ApproxResult {
            coefficients,
            level,
            certificate: Certificate::Exact { point: 0 },
            iterations: iteration,
        };
        let errors = result.error_on_grid(f, table);

        let mut worst = 0usize;
        for nu in 1..=q {
            if errors[nu].abs() > errors[worst].abs() {
                worst = nu;
            }
        }
        let attained = errors[worst].abs();

        if attained <= degenerate && level <= degenerate {
            return Ok(ApproxResult {
                certificate: Certificate::Exact { point: worst },
                level: R::zero(),
                ..result
            });
        }
        if attained <= level * (R::one() + real(tol::ALTERNANCE_LEVEL)) + degenerate {
            let orientation = if signed_level >= R::zero() { 1 } else { -1 };
            return Ok(ApproxResult {
                certificate: Certificate::Alternance(AlternanceCertificate {
                    points: reference,
                    orientation,
                    level,
                }),
                ..result
            });
        }
        // Reference levels must strictly improve on a finite grid.
        if level <= previous_level {
            return Err(Error::ExchangeStalled {
                level: level.to_f64().unwrap_or(f64::NAN),
            });
        }
        previous_level = level;
        exchange_point(&mut reference, &errors, worst);
    }
    Err(Error::ExchangeStalled {
        level: previous_level.to_f64().unwrap_or(f64::NAN),
    })
}

fn exact_representation<R: Real>(
    f: &DiscreteFunction<R>,
    table: &SystemTable<R>,
) -> Result<ApproxResult<R>> {
    let points: Vec<usize> = (0..table.n()).collect();
    let values: Vec<R> = points.iter().map(|&p| f.values()[p]).collect();
    let coefficients = interpolate(table, &points, &values)?;
    Ok(ApproxResult {
        coefficients,
        level: R::zero(),
        certificate: Certificate::Exact { point: 0 },
        iterations: 0,
    })
}

/// Solve `p(nu_i) - (-1)^i E = f(nu_i)` for the coefficients and signed level.
fn solve_levelled<R: Real>(
    table: &SystemTable<R>,
    f: &DiscreteFunction<R>,
    reference: &[usize],
) -> Result<(Vec<R>, R)> {
    let n = table.n();
    let mut matrix = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for (i, &p) in reference.iter().enumerate() {
        let mut row: Vec<R> = table.rows().iter().map(|r| r[p]).collect();
        let sign = if i % 2 == 0 { R::one() } else { -R::one() };
        row.push(-sign);
        matrix.push(row);
        rhs.push(f.values()[p]);
    }
    let mut solution = linalg::solve(matrix, rhs).ok_or(Error::SingularReference {
        points: reference.to_vec(),
    })?;
    let level = solution.pop().expect("system has n + 1 unknowns");
    Ok((solution, level))
}

/// Swap the worst grid point into the reference, preserving the alternation
/// of error signs. Ties in the caller's argmax go to the smallest index.
fn exchange_point<R: Real>(reference: &mut [usize], errors: &[R], worst: usize) {
    let n = reference.len() - 1;
    let sign_at = |p: usize| errors[p] >= R::zero();
    let s_new = sign_at(worst);
    if worst < reference[0] {
        if s_new == sign_at(reference[0]) {
            reference[0] = worst;
        } else {
            for i in (1..=n).rev() {
                reference[i] = reference[i - 1];
            }
            reference[0] = worst;
        }
        return;
    }
    if worst > reference[n] {
        if s_new == sign_at(reference[n]) {
            reference[n] = worst;
        } else {
            for i in 0..n {
                reference[i] = reference[i + 1];
            }
            reference[n] = worst;
        }
        return;
    }
    let j = reference.partition_point(|&p| p < worst);
    // reference[j-1] < worst < reference[j]; worst cannot already be a
    // reference point because its error strictly exceeds the level there.
    if j > 0 && s_new == sign_at(reference[j - 1]) {
        reference[j - 1] = worst;
    } else {
        reference[j] = worst;
    }
}

/// Exhaustive reference oracle over every `(n+1)`-point subset.
///
/// Each subset with a nondegenerate annihilating functional yields the
/// levelled error `|l(f)| / sum |lambda_i|`; the largest level whose levelled
/// polynomial attains it on the whole grid is the best approximation.
pub fn best_approx_oracle<R: Real>(
    f: &DiscreteFunction<R>,
    table: &SystemTable<R>,
    budget: usize,
) -> Result<ApproxResult<R>> {
    let n = table.n();
    let q = table.q();
    if f.values().len() != q + 1 {
        return Err(Error::LengthMismatch {
            name: "f",
            got: f.values().len(),
            expected: q + 1,
        });
    }
    if n == q + 1 {
        return exact_representation(f, table);
    }
    let needed = binomial(q + 1, n + 1);
    if needed > budget {
        return Err(Error::SubsetBudget { needed, budget });
    }

    let scale = function_scale(f);
    let floor = real::<R>(tol::DEGENERATE_LEVEL) * scale;

    let mut candidates: Vec<(R, Vec<usize>, Vec<R>)> = Vec::new();
    let mut subset: Vec<usize> = (0..=n).collect();
    loop {
        if let Ok(lambda) = table.dual_functional(&subset) {
            if lambda.iter().all(|l| l.abs() > real(1e-9)) {
                let denom = lambda.iter().fold(R::zero(), |acc, l| acc + l.abs());
                let lf = subset
                    .iter()
                    .zip(&lambda)
                    .fold(R::zero(), |acc, (&p, &l)| acc + l * f.values()[p]);
                candidates.push((lf.abs() / denom, subset.clone(), lambda));
            }
        }
        if !next_subset(&mut subset, q) {
            break;
        }
    }
    candidates.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));

    for (level, points, lambda) in &candidates {
        if *level <= floor {
            break;
        }
        let denom = lambda.iter().fold(R::zero(), |acc, l| acc + l.abs());
        let lf = points
            .iter()
            .zip(lambda)
            .fold(R::zero(), |acc, (&p, &l)| acc + l * f.values()[p]);
        let shift = -lf / denom;
        let levelled: Vec<R> = points
            .iter()
            .zip(lambda)
            .map(|(&p, &l)| f.values()[p] + shift * l.signum())
            .collect();
        // Interpolate on the subset minus one point (any cofactor is nonzero).
        let reduced: Vec<usize> = points[..n].to_vec();
        let reduced_vals: Vec<R> = levelled[..n].to_vec();
        let Ok(coefficients) = interpolate(table, &reduced, &reduced_vals) else {
            continue;
        };
        let result = ApproxResult {
            coefficients,
            level: *level,
            certificate: Certificate::Exact { point: 0 },
            iterations: candidates.len(),
        };
        let errors = result.error_on_grid(f, table);
        let attained = errors.iter().map(|e| e.abs()).fold(R::zero(), R::max);
        if attained <= *level * (R::one() + real(tol::ORACLE_LEVEL_AGREE)) + floor {
            let signs: Vec<i8> = points
                .iter()
                .map(|&p| if errors[p] >= R::zero() { 1 } else { -1 })
                .collect();
            let weights: Vec<R> = lambda.iter().map(|l| l.abs()).collect();
            return Ok(ApproxResult {
                certificate: Certificate::Dual(DualCertificate {
                    points: points.clone(),
                    signs,
                    weights,
                }),
                ..result
            });
        }
    }

    // Every level collapsed to zero: f is in the span.
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let det = table.gram_det(&subset)?;
        if det.abs() > R::min_positive_value() {
            let values: Vec<R> = subset.iter().map(|&p| f.values()[p]).collect();
            let coefficients = interpolate(table, &subset, &values)?;
            return Ok(ApproxResult {
                coefficients,
                level: R::zero(),
                certificate: Certificate::Exact { point: 0 },
                iterations: 0,
            });
        }
        if !next_subset(&mut subset, q) {
            return Err(Error::Singular);
        }
    }
}

fn next_subset(subset: &mut [usize], max: usize) -> bool {
    let n = subset.len();
    for i in (0..n).rev() {
        let cap = max - (n - 1 - i);
        if subset[i] < cap {
            subset[i] += 1;
            for j in i + 1..n {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityReport {
    pub pass: bool,
    /// Worst deviation of the certificate points from the level.
    pub level_residual: f64,
    /// How far the grid error exceeds the level (positive means violation).
    pub norm_excess: f64,
    /// Dual functional signs match the certificate with positive weights.
    pub dual_consistent: bool,
}

/// Verify a candidate result against the dual characterization: the error
/// attains its norm with the certified signs, and the cofactor functional on
/// those points carries matching signs with positive weights.
pub fn verify_optimality<R: Real>(
    f: &DiscreteFunction<R>,
    table: &SystemTable<R>,
    result: &ApproxResult<R>,
) -> Result<OptimalityReport> {
    let errors = result.error_on_grid(f, table);
    let scale = function_scale(f);
    let slack = real::<R>(tol::ALTERNANCE_LEVEL);
    let floor = real::<R>(tol::DEGENERATE_LEVEL) * scale;
    let norm = errors.iter().map(|e| e.abs()).fold(R::zero(), R::max);

    let (points, signs): (Vec<usize>, Vec<i8>) = match &result.certificate {
        Certificate::Exact { .. } => {
            let pass = result.level <= floor && norm <= floor;
            return Ok(OptimalityReport {
                pass,
                level_residual: norm.to_f64().unwrap_or(f64::NAN),
                norm_excess: 0.0,
                dual_consistent: pass,
            });
        }
        Certificate::Alternance(cert) => {
            let signs = (0..cert.points.len())
                .map(|i| {
                    let flip = if i % 2 == 0 { 1 } else { -1 };
                    cert.orientation * flip
                })
                .collect();
            (cert.points.clone(), signs)
        }
        Certificate::Dual(cert) => (cert.points.clone(), cert.signs.clone()),
    };

    let mut level_residual = R::zero();
    for (&p, &s) in points.iter().zip(&signs) {
        let signed = if s >= 0 { errors[p] } else { -errors[p] };
        level_residual = level_residual.max((signed - result.level).abs());
    }
    let level_ok = level_residual <= slack * (R::one() + result.level) + floor;
    let norm_excess = norm - result.level;
    let norm_ok = norm <= result.level * (R::one() + slack) + floor;

    let dual_consistent = match table.dual_functional(&points) {
        Ok(lambda) => {
            let zero_floor = real::<R>(1e-9);
            let nondegenerate = lambda.iter().all(|l| l.abs() > zero_floor);
            let direct = lambda
                .iter()
                .zip(&signs)
                .all(|(&l, &s)| (l > R::zero()) == (s > 0));
            let flipped = lambda
                .iter()
                .zip(&signs)
                .all(|(&l, &s)| (l > R::zero()) == (s < 0));
            nondegenerate && (direct || flipped)
        }
        Err(_) => false,
    };

    Ok(OptimalityReport {
        pass: level_ok && norm_ok && dual_consistent,
        level_residual: level_residual.to_f64().unwrap_or(f64::NAN),
        norm_excess: norm_excess.to_f64().unwrap_or(f64::NAN),
        dual_consistent,
    })
}

/// Does `e` admit an alternance set of the given length at `level`?
///
/// Exhaustive in effect: among the points where `|e|` attains the level, the
/// longest alternating subsequence is counted greedily.
pub fn has_alternance_set<R: Real>(errors: &[R], length: usize, level: R) -> bool {
    let slack = real::<R>(tol::ALTERNANCE_LEVEL) * (R::one() + level);
    let mut best = 0usize;
    let mut last_sign = 0i8;
    for &e in errors {
        if (e.abs() - level).abs() > slack {
            continue;
        }
        let s = if e >= R::zero() { 1i8 } else { -1i8 };
        if s != last_sign {
            best += 1;
            last_sign = s;
        }
    }
    best >= length
}

/// The explicit T_0-but-not-T_Z table: for `k < q` the function is the
/// indicator of `{k-1, q}`; the last one is `+1` at `q-1` and `-1` at `q`.
pub fn t0_counterexample_table<R: Real>(q: usize) -> Result<SystemTable<R>> {
    if q < 2 {
        return Err(Error::GridTooSmall { q, min: 2 });
    }
    let mut rows = Vec::with_capacity(q);
    for k in 1..q {
        let mut row = vec![R::zero(); q + 1];
        row[k - 1] = R::one();
        row[q] = R::one();
        rows.push(row);
    }
    let mut last = vec![R::zero(); q + 1];
    last[q - 1] = R::one();
    last[q] = -R::one();
    rows.push(last);
    SystemTable::new(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleProjection<R> {
    pub coefficients: Vec<R>,
    pub lambda: R,
    pub level: R,
}

/// Closed-form metric projection onto the Example-2.7 span: the defect
/// `lambda` is a mean with flipped tail signs, and the error level is
/// `|lambda|`.
pub fn t0_counterexample_projection<R: Real>(f: &DiscreteFunction<R>) -> Result<CounterexampleProjection<R>> {
    let q = f.q();
    if q < 2 {
        return Err(Error::GridTooSmall { q, min: 2 });
    }
    let values = f.values();
    let mut acc = values[..=q - 2].iter().fold(R::zero(), |s, &v| s + v);
    acc = acc - values[q - 1] - values[q];
    let lambda = -acc / real_usize::<R>(q + 1);
    let mut coefficients = Vec::with_capacity(q);
    for k in 1..q {
        coefficients.push(values[k - 1] + lambda);
    }
    coefficients.push(values[q - 1] - lambda);
    Ok(CounterexampleProjection {
        coefficients,
        lambda,
        level: lambda.abs(),
    })
}
