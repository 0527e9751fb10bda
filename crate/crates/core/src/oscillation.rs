//! Generalized zeros and sign-change counts of discrete functions.
//!
//! A grid point is a zero of the first type when the value vanishes (within
//! the sign tolerance) and of the second type when adjacent values have
//! opposite signs. `S-` and `S+` are the least and largest numbers of sign
//! changes over all nonzero replacements of the zero values.

use crate::error::{Error, Result};
use crate::real::{real, Real};
use crate::spectrum::Spectrum;
use crate::tolerances as tol;

/// Real values on the integer grid `[0, q]` with a sign-decision tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteFunction<R> {
    values: Vec<R>,
    sign_tol: R,
}

impl<R: Real> DiscreteFunction<R> {
    /// Wrap values with the default sign tolerance.
    pub fn new(values: Vec<R>) -> Result<Self> {
        Self::with_tol(values, real(tol::SIGN_TOL_DEFAULT))
    }

    /// Wrap values; entries within `sign_tol * max|f|` count as exact zeros.
    pub fn with_tol(values: Vec<R>, sign_tol: R) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyFunction);
        }
        if !(sign_tol >= R::zero()) {
            return Err(Error::NegativeTolerance);
        }
        Ok(Self { values, sign_tol })
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn sign_tol(&self) -> R {
        self.sign_tol
    }

    /// Grid size `q` (one less than the number of values).
    pub fn q(&self) -> usize {
        self.values.len() - 1
    }

    /// Tolerance-resolved signs: `-1`, `0`, `+1` per grid point.
    pub fn signs(&self) -> Vec<i8> {
        let scale = self
            .values
            .iter()
            .map(|v| v.abs())
            .fold(R::zero(), R::max);
        let cut = self.sign_tol * scale;
        self.values
            .iter()
            .map(|&v| {
                if v.abs() <= cut {
                    0
                } else if v > R::zero() {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroType {
    /// The value itself vanishes.
    First,
    /// Adjacent values straddle zero: `f(nu-1) f(nu) < 0`.
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroRecord {
    pub position: usize,
    pub kind: ZeroType,
}

/// Interval classes from the sign-change case analysis.
///
/// `First` is a maximal segment of consecutive sign changes. `Second` and
/// `Third` are interior zero runs whose parity lets zero replacements raise
/// the count; `Fourth` runs (boundary or mismatched parity) cannot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    First,
    Second,
    Third,
    Fourth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunInterval {
    pub start: usize,
    pub end: usize,
    pub kind: IntervalKind,
}

/// Zero counts, extremal sign-change counts, and run classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscillationReport {
    /// Zeros of both types.
    pub zeros_total: usize,
    /// Zeros of the first type only.
    pub zeros_first_type: usize,
    pub min_sign_changes: usize,
    pub max_sign_changes: usize,
    pub zeros: Vec<ZeroRecord>,
    pub runs: Vec<RunInterval>,
}

/// Count zeros and extremal sign changes of `f`.
///
/// The identically-zero function is assigned `N = q + 1`, `S- = 0`,
/// `S+ = q`, consistent with the limiting behavior of the definitions.
pub fn oscillation_report<R: Real>(f: &DiscreteFunction<R>) -> OscillationReport {
    let signs = f.signs();
    report_from_signs(&signs)
}

fn report_from_signs(signs: &[i8]) -> OscillationReport {
    let mut zeros = Vec::new();
    let mut first = 0usize;
    for (nu, &s) in signs.iter().enumerate() {
        if s == 0 {
            first += 1;
            zeros.push(ZeroRecord {
                position: nu,
                kind: ZeroType::First,
            });
        } else if nu > 0 && signs[nu - 1] * s == -1 {
            zeros.push(ZeroRecord {
                position: nu,
                kind: ZeroType::Second,
            });
        }
    }
    zeros.sort_by_key(|z| z.position);
    let total = zeros.len();

    let nonzero: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    let s_minus = nonzero.windows(2).filter(|w| w[0] != w[1]).count();
    let s_plus = max_sign_changes(signs);
    let runs = classify_runs(signs);

    OscillationReport {
        zeros_total: total,
        zeros_first_type: first,
        min_sign_changes: s_minus,
        max_sign_changes: s_plus,
        zeros,
        runs,
    }
}

/// The run rule for `S+`.
///
/// A maximal run of `z` zeros with one free end contributes `z`; a run of
/// `z` zeros strictly between signs `a`, `b` contributes `z + 1` exactly when
/// full alternation is parity-consistent (`a != b` iff `z + 1` is odd), else
/// `z`. Adjacent nonzero pairs fall out of the same formula with `z = 0`.
fn max_sign_changes(signs: &[i8]) -> usize {
    let len = signs.len();
    let nonzero_pos: Vec<usize> = (0..len).filter(|&i| signs[i] != 0).collect();
    if nonzero_pos.is_empty() {
        return len - 1;
    }
    let mut total = nonzero_pos[0]; // leading zeros
    total += len - 1 - nonzero_pos[nonzero_pos.len() - 1]; // trailing zeros
    for w in nonzero_pos.windows(2) {
        let z = w[1] - w[0] - 1;
        let differ = signs[w[0]] != signs[w[1]];
        let full_alternation_possible = differ == ((z + 1) % 2 == 1);
        total += if full_alternation_possible { z + 1 } else { z };
    }
    total
}

fn classify_runs(signs: &[i8]) -> Vec<RunInterval> {
    let len = signs.len();
    let mut runs = Vec::new();

    // Maximal alternation segments among nonzero values (first type).
    let mut i = 0;
    while i + 1 < len {
        if signs[i] != 0 && signs[i + 1] == -signs[i] {
            let start = i;
            let mut end = i + 1;
            while end + 1 < len && signs[end + 1] == -signs[end] && signs[end] != 0 {
                end += 1;
            }
            runs.push(RunInterval {
                start,
                end,
                kind: IntervalKind::First,
            });
            i = end;
        } else {
            i += 1;
        }
    }

    // Maximal zero runs.
    let mut i = 0;
    while i < len {
        if signs[i] != 0 {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < len && signs[i + 1] == 0 {
            i += 1;
        }
        let end = i;
        let kind = if start == 0 || end == len - 1 {
            IntervalKind::Fourth
        } else {
            let same = signs[start - 1] == signs[end + 1];
            let z = end - start + 1;
            match (same, z % 2 == 1) {
                (true, true) => IntervalKind::Second,
                (false, false) => IntervalKind::Third,
                _ => IntervalKind::Fourth,
            }
        };
        runs.push(RunInterval { start, end, kind });
        i += 1;
    }
    runs.sort_by_key(|r| r.start);
    runs
}

/// Exact `S+` by enumerating all sign assignments of the zero entries.
///
/// This is the oracle guarding the run rule; it refuses more than
/// [`tol::BRUTEFORCE_MAX_ZEROS`] zeros.
pub fn splus_bruteforce<R: Real>(f: &DiscreteFunction<R>) -> Result<usize> {
    let signs = f.signs();
    let zero_pos: Vec<usize> = (0..signs.len()).filter(|&i| signs[i] == 0).collect();
    if zero_pos.len() > tol::BRUTEFORCE_MAX_ZEROS {
        return Err(Error::TooManyZeros {
            zeros: zero_pos.len(),
            max: tol::BRUTEFORCE_MAX_ZEROS,
        });
    }
    let mut best = 0usize;
    for mask in 0u32..(1u32 << zero_pos.len()) {
        let mut filled = signs.clone();
        for (bit, &pos) in zero_pos.iter().enumerate() {
            filled[pos] = if mask & (1 << bit) != 0 { 1 } else { -1 };
        }
        let changes = filled.windows(2).filter(|w| w[0] != w[1]).count();
        best = best.max(changes);
    }
    Ok(best)
}

/// Quadruple of counts produced by the oscillation checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountChain {
    pub s_minus: usize,
    pub zeros: usize,
    pub s_plus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenOscillationReport {
    pub pass: bool,
    /// First row (1-based eigenvalue index) whose counts miss `k - 1`.
    pub first_failure: Option<(usize, CountChain)>,
}

/// Check `N(psi_k) = S-(psi_k) = S+(psi_k) = k - 1` for every eigenfunction.
pub fn verify_eigenfunction_counts<R: Real>(spectrum: &Spectrum<R>, sign_tol: R) -> EigenOscillationReport {
    for (idx, row) in spectrum.eigenfunctions().iter().enumerate() {
        let f = DiscreteFunction::with_tol(row.clone(), sign_tol)
            .expect("eigenfunction rows are nonempty");
        let rep = oscillation_report(&f);
        let chain = CountChain {
            s_minus: rep.min_sign_changes,
            zeros: rep.zeros_total,
            s_plus: rep.max_sign_changes,
        };
        if chain.s_minus != idx || chain.zeros != idx || chain.s_plus != idx {
            return EigenOscillationReport {
                pass: false,
                first_failure: Some((idx + 1, chain)),
            };
        }
    }
    EigenOscillationReport {
        pass: true,
        first_failure: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandOscillationReport {
    pub chain: CountChain,
    pub lower: usize,
    pub upper: usize,
    pub pass: bool,
}

/// Form `V = sum_{k=m}^{n} a_k psi_k` and check
/// `m - 1 <= S-(V) <= N(V) <= S+(V) <= n - 1` (1-based `m`, `n`).
pub fn verify_band_counts<R: Real>(
    spectrum: &Spectrum<R>,
    m: usize,
    n: usize,
    coeffs: &[R],
    sign_tol: R,
) -> Result<BandOscillationReport> {
    let q = spectrum.q();
    if m < 1 || m > n || n > q + 1 {
        return Err(Error::OutOfRange {
            value: n,
            min: m.max(1),
            max: q + 1,
        });
    }
    if coeffs.len() != n - m + 1 {
        return Err(Error::LengthMismatch {
            name: "coeffs",
            got: coeffs.len(),
            expected: n - m + 1,
        });
    }
    if coeffs.iter().all(|a| *a == R::zero()) {
        return Err(Error::TrivialCoefficients);
    }
    let mut values = vec![R::zero(); q + 1];
    for (offset, &a) in coeffs.iter().enumerate() {
        let row = &spectrum.eigenfunctions()[m - 1 + offset];
        for nu in 0..=q {
            values[nu] = values[nu] + a * row[nu];
        }
    }
    let rep = oscillation_report(&DiscreteFunction::with_tol(values, sign_tol)?);
    let chain = CountChain {
        s_minus: rep.min_sign_changes,
        zeros: rep.zeros_total,
        s_plus: rep.max_sign_changes,
    };
    let pass = m <= chain.s_minus + 1
        && chain.s_minus <= chain.zeros
        && chain.zeros <= chain.s_plus
        && chain.s_plus < n;
    Ok(BandOscillationReport {
        chain,
        lower: m - 1,
        upper: n - 1,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceReport {
    pub base: CountChain,
    pub backward: CountChain,
    /// Forward counts under the `f(q+1) = 0` extension.
    pub forward: CountChain,
    pub backward_pass: bool,
    pub forward_pass: bool,
}

/// Difference inequalities: counts of `f` never exceed those of its
/// differences.
///
/// The backward difference adopts `f(-1) = 0`, so `grad f(0) = f(0)`; the
/// forward difference extends by `f(q+1) = 0`, which is exactly the
/// hypothesis under which its inequalities hold.
pub fn difference_inequalities<R: Real>(f: &DiscreteFunction<R>) -> DifferenceReport {
    let values = f.values();
    let q = f.q();
    let mut backward = Vec::with_capacity(q + 1);
    backward.push(values[0]);
    for nu in 1..=q {
        backward.push(values[nu] - values[nu - 1]);
    }
    let mut forward = Vec::with_capacity(q + 1);
    for nu in 0..q {
        forward.push(values[nu + 1] - values[nu]);
    }
    forward.push(-values[q]);

    let chain = |vals: Vec<R>| {
        let rep = oscillation_report(
            &DiscreteFunction::with_tol(vals, f.sign_tol()).expect("nonempty"),
        );
        CountChain {
            s_minus: rep.min_sign_changes,
            zeros: rep.zeros_total,
            s_plus: rep.max_sign_changes,
        }
    };
    let base = chain(values.to_vec());
    let back = chain(backward);
    let fwd = chain(forward);
    let ge = |d: &CountChain, b: &CountChain| {
        d.zeros >= b.zeros && d.s_minus >= b.s_minus && d.s_plus >= b.s_plus
    };
    DifferenceReport {
        backward_pass: ge(&back, &base),
        forward_pass: ge(&fwd, &base),
        base,
        backward: back,
        forward: fwd,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::Family;
    use crate::spectrum::compute_spectrum;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn f(values: &[f64]) -> DiscreteFunction<f64> {
        DiscreteFunction::new(values.to_vec()).unwrap()
    }

    fn counts(values: &[f64]) -> (usize, usize, usize, usize) {
        let r = oscillation_report(&f(values));
        (
            r.zeros_total,
            r.zeros_first_type,
            r.min_sign_changes,
            r.max_sign_changes,
        )
    }

    #[test]
    fn plateau_between_equal_signs() {
        assert_eq!(counts(&[1.0, 0.0, 1.0]), (1, 1, 0, 2));
    }

    #[test]
    fn no_zeros() {
        assert_eq!(counts(&[1.0, 1.0, 1.0]), (0, 0, 0, 0));
    }

    #[test]
    fn plateau_between_opposite_signs() {
        assert_eq!(counts(&[1.0, 0.0, -1.0]), (1, 1, 1, 1));
    }

    #[test]
    fn second_type_zero_counted() {
        let r = oscillation_report(&f(&[1.0, -2.0]));
        assert_eq!(r.zeros_total, 1);
        assert_eq!(r.zeros_first_type, 0);
        assert_eq!(r.zeros[0].kind, ZeroType::Second);
        assert_eq!(r.zeros[0].position, 1);
    }

    #[test]
    fn all_zero_conventions() {
        assert_eq!(counts(&[0.0, 0.0, 0.0, 0.0]), (4, 4, 0, 3));
    }

    #[test]
    fn no_second_type_zero_at_origin() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let values: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let r = oscillation_report(&f(&values));
            assert!(r
                .zeros
                .iter()
                .all(|z| z.kind == ZeroType::First || z.position > 0));
            let sorted = r.zeros.windows(2).all(|w| w[0].position < w[1].position);
            assert!(sorted);
        }
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(splus_bruteforce(&f(&[1.0, 0.0, 1.0])).unwrap(), 2);
        assert_eq!(splus_bruteforce(&f(&[0.0])).unwrap(), 0);
        // (0, 1, 0, -1, 0): four gaps, interior parity blocks one of them.
        assert_eq!(splus_bruteforce(&f(&[0.0, 1.0, 0.0, -1.0, 0.0])).unwrap(), 3);
        assert_eq!(counts(&[0.0, 1.0, 0.0, -1.0, 0.0]).3, 3);
    }

    #[test]
    fn bruteforce_refuses_many_zeros() {
        let values = vec![0.0; 25];
        assert!(matches!(
            splus_bruteforce(&f(&values)),
            Err(Error::TooManyZeros { .. })
        ));
    }

    #[test]
    fn run_rule_matches_bruteforce_exhaustively() {
        // Every sign pattern of length <= 10 over {-1, 0, 1}.
        for len in 1..=10usize {
            let mut pattern = vec![0i8; len];
            loop {
                let values: Vec<f64> = pattern.iter().map(|&s| s as f64).collect();
                let df = f(&values);
                let rule = oscillation_report(&df).max_sign_changes;
                let brute = splus_bruteforce(&df).unwrap();
                assert_eq!(rule, brute, "pattern {pattern:?}");
                // next pattern in base 3
                let mut i = 0;
                loop {
                    if i == len {
                        break;
                    }
                    if pattern[i] < 1 {
                        pattern[i] += 1;
                        break;
                    }
                    pattern[i] = -1;
                    i += 1;
                }
                if i == len {
                    break;
                }
            }
        }
    }

    #[test]
    fn count_chain_on_random_nontrivial_inputs() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..500 {
            let values: Vec<f64> = (0..12)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        0.0
                    } else {
                        rng.gen_range(-1.0..1.0)
                    }
                })
                .collect();
            if values.iter().all(|v| *v == 0.0) {
                continue;
            }
            let r = oscillation_report(&f(&values));
            assert!(r.min_sign_changes <= r.zeros_total);
            assert!(r.zeros_total <= r.max_sign_changes);
            assert!(r.zeros_first_type <= r.zeros_total);
        }
    }

    #[test]
    fn run_classification() {
        // (+, 0, +): interior odd run with equal signs -> second type.
        let r = oscillation_report(&f(&[1.0, 0.0, 1.0]));
        assert!(r
            .runs
            .iter()
            .any(|run| run.kind == IntervalKind::Second && run.start == 1 && run.end == 1));
        // (+, 0, 0, -): interior even run with opposite signs -> third type.
        let r = oscillation_report(&f(&[1.0, 0.0, 0.0, -1.0]));
        assert!(r.runs.iter().any(|run| run.kind == IntervalKind::Third));
        // boundary run -> fourth type.
        let r = oscillation_report(&f(&[0.0, 1.0]));
        assert!(r.runs.iter().any(|run| run.kind == IntervalKind::Fourth));
        // alternating segment -> first type.
        let r = oscillation_report(&f(&[1.0, -1.0, 1.0]));
        assert!(r
            .runs
            .iter()
            .any(|run| run.kind == IntervalKind::First && run.start == 0 && run.end == 2));
    }

    #[test]
    fn eigenfunction_counts_chebyshev() {
        let sys = Family::ChebyshevT.system(5, 0.0f64).unwrap();
        let spectrum = compute_spectrum(&sys).unwrap();
        let report = verify_eigenfunction_counts(&spectrum, 1e-9);
        assert!(report.pass, "{:?}", report.first_failure);
        // spot values: N(psi_3) = 2, N(psi_6) = 5
        let rep3 = oscillation_report(
            &DiscreteFunction::new(spectrum.eigenfunctions()[2].clone()).unwrap(),
        );
        assert_eq!(rep3.zeros_total, 2);
        let rep6 = oscillation_report(
            &DiscreteFunction::new(spectrum.eigenfunctions()[5].clone()).unwrap(),
        );
        assert_eq!(rep6.zeros_total, 5);
    }

    #[test]
    fn eigenfunction_counts_tolerance_sweep() {
        let sys = Family::Legendre.system(9, 0.5f64).unwrap();
        let spectrum = compute_spectrum(&sys).unwrap();
        for exp in [-12, -10, -8, -6] {
            let tol = 10f64.powi(exp);
            assert!(verify_eigenfunction_counts(&spectrum, tol).pass, "tol=1e{exp}");
        }
    }

    #[test]
    fn band_counts_single_row_reduces() {
        let sys = Family::ChebyshevT.system(6, 0.0f64).unwrap();
        let spectrum = compute_spectrum(&sys).unwrap();
        for k in 1..=7 {
            let rep = verify_band_counts(&spectrum, k, k, &[1.0], 1e-9).unwrap();
            assert!(rep.pass);
            assert_eq!(rep.chain.zeros, k - 1);
        }
    }

    #[test]
    fn band_counts_random_band() {
        let sys = Family::ChebyshevT.system(6, 0.0f64).unwrap();
        let spectrum = compute_spectrum(&sys).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let a: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let rep = verify_band_counts(&spectrum, 3, 5, &a, 1e-9).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn band_counts_reject_trivial_coefficients() {
        let sys = Family::ChebyshevT.system(4, 0.0f64).unwrap();
        let spectrum = compute_spectrum(&sys).unwrap();
        assert!(matches!(
            verify_band_counts(&spectrum, 2, 3, &[0.0, 0.0], 1e-9),
            Err(Error::TrivialCoefficients)
        ));
    }

    #[test]
    fn difference_inequalities_examples() {
        // f = (1, 1): backward difference (1, 0) has N = 1 >= 0.
        let rep = difference_inequalities(&f(&[1.0, 1.0]));
        assert_eq!(rep.backward.zeros, 1);
        assert!(rep.backward_pass && rep.forward_pass);
        // zero function: trivial.
        let rep = difference_inequalities(&f(&[0.0, 0.0]));
        assert!(rep.backward_pass && rep.forward_pass);
    }

    #[test]
    fn difference_inequalities_random_suite() {
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..500 {
            let values: Vec<f64> = (0..11)
                .map(|_| {
                    if rng.gen_bool(0.25) {
                        0.0
                    } else {
                        rng.gen_range(-1.0..1.0)
                    }
                })
                .collect();
            if values.iter().all(|v| *v == 0.0) {
                continue;
            }
            let rep = difference_inequalities(&f(&values));
            assert!(rep.backward_pass, "backward failed for {values:?}: {rep:?}");
            assert!(rep.forward_pass, "forward failed for {values:?}: {rep:?}");
        }
    }

    #[test]
    fn interior_first_type_zeros_of_eigenfunctions() {
        // A first-type zero of psi_k (1 < k <= q) sits strictly inside the
        // grid and its neighbors straddle zero.
        for family in [Family::ChebyshevT, Family::Legendre] {
            let sys = family.system(10, 0.0f64).unwrap();
            let spectrum = compute_spectrum(&sys).unwrap();
            for k in 1..10 {
                let row = &spectrum.eigenfunctions()[k];
                let df = DiscreteFunction::new(row.clone()).unwrap();
                for z in oscillation_report(&df).zeros {
                    if z.kind == ZeroType::First {
                        assert!(z.position > 0 && z.position < 10);
                        assert!(row[z.position - 1] * row[z.position + 1] < 0.0);
                    }
                }
            }
        }
    }
}
