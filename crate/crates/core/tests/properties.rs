//! Heavier cross-module property suites: randomized invariants that tie the
//! recurrence layer, the spectra, and the certification machinery together.

use chebsturm::chebsys::SystemTable;
use chebsturm::chebsys::{sign_law_check, TSystemKind};
use chebsturm::gapfourier::{gap_expand, right_endpoint};
use chebsturm::minimax::{best_approx, verify_optimality};
use chebsturm::oscillation::{difference_inequalities, DiscreteFunction};
use chebsturm::recurrence::{Family, RecurrenceSystem};
use chebsturm::spectrum::{compute_spectrum, discrete_orthogonality_check, interlacing_check};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_system(rng: &mut StdRng, q: usize) -> RecurrenceSystem<f64> {
    let alpha = (0..=q).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let beta = (0..=q).map(|_| rng.gen_range(0.2..2.0)).collect();
    let gamma = (0..q).map(|_| rng.gen_range(0.2..2.0)).collect();
    let rho = (0..=q).map(|_| rng.gen_range(0.2..2.0)).collect();
    RecurrenceSystem::new(q, alpha, beta, gamma, rho, rng.gen_range(-1.0..1.0)).unwrap()
}

#[test]
fn derived_weights_positive_for_random_systems() {
    let mut rng = StdRng::seed_from_u64(101);
    for _ in 0..100 {
        let q = rng.gen_range(0..=12usize);
        let sys = random_system(&mut rng, q);
        let w = sys.derive_weights().unwrap();
        assert!(w.d.iter().all(|v| *v > 0.0));
        assert!(w.w.iter().all(|v| *v > 0.0));
        assert!(w.k.iter().all(|v| *v > 0.0));
        assert!(w.monic_b.iter().all(|v| *v > 0.0));
        // Leading-coefficient identity to relative 1e-12.
        for l in 0..=q {
            let k_next = if l == q { w.k_next(&sys) } else { w.k[l + 1] };
            let rhs = w.k[l] * w.d[l] / k_next;
            assert!((w.w[l] - rhs).abs() <= 1e-12 * w.w[l]);
        }
    }
}

#[test]
fn favard_orthonormality_under_gauss_rule() {
    let mut rng = StdRng::seed_from_u64(103);
    for _ in 0..25 {
        let q = rng.gen_range(1..=10usize);
        let sys = random_system(&mut rng, q);
        let rule = sys.gauss_quadrature(q + 1).unwrap();
        let d = sys.derive_weights().unwrap().d;
        for l in 0..=q {
            for m in 0..=q {
                let mut acc = 0.0;
                for (&x, &wt) in rule.nodes().iter().zip(rule.weights()) {
                    let p = sys.eval_polys(q, x).unwrap();
                    acc += wt * p[l] * p[m];
                }
                let expect = if l == m { 1.0 } else { 0.0 };
                assert!(
                    (d[l] * acc - expect).abs() <= 1e-9,
                    "q={q} ({l},{m}): {}",
                    d[l] * acc
                );
            }
        }
    }
}

#[test]
fn kernel_paths_agree_on_random_arguments() {
    let mut rng = StdRng::seed_from_u64(107);
    for _ in 0..200 {
        let q = rng.gen_range(1..=10usize);
        let sys = random_system(&mut rng, q);
        let l = rng.gen_range(0..=q);
        let x = rng.gen_range(-1.5..1.5);
        let y = rng.gen_range(-1.5..1.5);
        let by_sum = sys.cd_kernel_sum(l, x, y).unwrap();
        let by_branch = sys.cd_kernel(l, x, y).unwrap();
        assert!(
            (by_sum - by_branch).abs() <= 1e-9 * by_sum.abs().max(1.0),
            "q={q} l={l} x={x} y={y}: {by_sum} vs {by_branch}"
        );
    }
}

#[test]
fn interlacing_and_orthogonality_for_random_systems() {
    let mut rng = StdRng::seed_from_u64(109);
    for _ in 0..30 {
        let q = rng.gen_range(1..=10usize);
        let sys = random_system(&mut rng, q);
        assert!(interlacing_check(&sys).unwrap().pass);
        let spectrum = compute_spectrum(&sys).unwrap();
        assert!(discrete_orthogonality_check(&sys, &spectrum).unwrap() <= 1e-8);
    }
}

#[test]
fn difference_inequalities_hold_broadly() {
    let mut rng = StdRng::seed_from_u64(113);
    for _ in 0..500 {
        let len = rng.gen_range(1..=11usize);
        let values: Vec<f64> = (0..len)
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
        let f = DiscreteFunction::new(values.clone()).unwrap();
        let report = difference_inequalities(&f);
        assert!(report.backward_pass && report.forward_pass, "{values:?}");
    }
}

#[test]
fn eigenfunction_tables_satisfy_sign_law() {
    // Rows psi_1..psi_{m+1} of a first-kind spectrum form a T_Z system whose
    // bordered determinants follow the product sign law.
    let sys = Family::ChebyshevT.system::<f64>(8, 0.0).unwrap();
    let spectrum = compute_spectrum(&sys).unwrap();
    for m in 1..=3usize {
        let table = SystemTable::new(spectrum.eigenfunctions()[..=m].to_vec()).unwrap();
        let cert = table.certify(2_000_000).unwrap();
        assert_eq!(cert.kind, TSystemKind::TZ);
        let report = sign_law_check(&table, 200, 11).unwrap();
        assert!(report.pass, "m={m}: {:?}", report.violations);
    }
}

#[test]
fn tz_certificate_feeds_valid_exchange_runs() {
    // Certification and the exchange algorithm agree end to end: every
    // T_Z-certified basis yields a validating alternance certificate.
    let mut rng = StdRng::seed_from_u64(127);
    for _ in 0..25 {
        let q = rng.gen_range(3..=10usize);
        let n = rng.gen_range(1..=3usize);
        let sys = random_system(&mut rng, q);
        let spectrum = compute_spectrum(&sys).unwrap();
        let table = SystemTable::new(spectrum.eigenfunctions()[..n].to_vec()).unwrap();
        let cert = table.certify(2_000_000).unwrap();
        assert_eq!(cert.kind, TSystemKind::TZ);
        let values: Vec<f64> = (0..=q).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = DiscreteFunction::new(values).unwrap();
        let result = best_approx(&f, &table, &cert).unwrap();
        assert!(verify_optimality(&f, &table, &result).unwrap().pass);
    }
}

#[test]
fn gap_routes_agree_for_random_custom_systems() {
    let mut rng = StdRng::seed_from_u64(131);
    let mut agreed = 0usize;
    let mut conditioned = 0usize;
    for _ in 0..40 {
        let q = rng.gen_range(1..=10usize);
        let sys = random_system(&mut rng, q);
        let spectrum = compute_spectrum(&sys).unwrap();
        let m = rng.gen_range(0..=q);
        let b = right_endpoint(&sys, &spectrum);
        // Clustered eigenvalues of arbitrary tridiagonals can defeat the
        // partial-fraction route; that surfaces as the designed conditioning
        // error, never as silently wrong coefficients.
        match gap_expand(&sys, &spectrum, m, b) {
            Ok(expansion) => {
                assert!(expansion.route_gap <= 1e-8);
                let report =
                    chebsturm::gapfourier::classify_and_verify(&sys, &expansion).unwrap();
                if report.expected == chebsturm::gapfourier::MonotoneVerdict::StrictlyDecreasing {
                    assert!(expansion.coefficients.iter().all(|&a| a > 0.0));
                }
                agreed += 1;
            }
            Err(chebsturm::Error::RouteDisagreement { .. }) => conditioned += 1,
            Err(other) => panic!("unexpected error: {other}"),
        }
    }
    assert!(agreed >= 3 * conditioned, "{agreed} vs {conditioned}");
}

#[test]
fn support_window_diagnostic_reports_finite_values() {
    let sys = Family::Legendre.system::<f64>(30, 0.0).unwrap();
    let (max_a, max_b) = sys.support_diagnostic().unwrap();
    assert!(max_a == 0.0);
    // B_l = l^2 / ((2l-1)(2l+1)) peaks at 1/3 for l = 1 and tends to 1/4.
    assert!(max_b > 0.0 && (max_b - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn float32_instantiation_smoke() {
    // The core is generic over the scalar; a coarse f32 run stays sane.
    let sys = Family::ChebyshevT.system::<f32>(4, 0.0f32).unwrap();
    let p = sys.eval_polys(4, 0.25f32).unwrap();
    assert!((p[2] + 0.875f32).abs() < 1e-6);
    let w = sys.derive_weights().unwrap();
    assert!((w.d[1] - 2.0).abs() < 1e-6);
}
