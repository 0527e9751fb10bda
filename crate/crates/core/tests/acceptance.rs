//! Acceptance suite: every library-level guarantee as a battery criterion,
//! one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use chebsturm::battery::{run, BatteryConfig, CRITERIA};

fn check(id: usize) {
    let config = BatteryConfig::default();
    let result = run(id, &config);
    let status = if result.pass { "PASS" } else { "FAIL" };
    println!(
        "[acceptance] criterion {:2} ({}): {} [{} ms] {}",
        result.id, result.name, status, result.millis, result.detail
    );
    assert!(
        result.pass,
        "criterion {} ({}) failed: {}",
        result.id, result.name, result.detail
    );
}

#[test]
fn criterion_01_eigenfunction_oscillation_counts() {
    check(1);
}

#[test]
fn criterion_02_band_polynomial_count_chain() {
    check(2);
}

#[test]
fn criterion_03_max_sign_change_rule_vs_brute_force() {
    check(3);
}

#[test]
fn criterion_04_classical_determinant_closed_forms() {
    check(4);
}

#[test]
fn criterion_05_spectrum_ground_truth() {
    check(5);
}

#[test]
fn criterion_06_gap_expansion_routes_and_trichotomy() {
    check(6);
}

#[test]
fn criterion_07_exchange_algorithm_vs_oracle() {
    check(7);
}

#[test]
fn criterion_08_closed_form_projection_example() {
    check(8);
}

#[test]
fn criterion_09_extremal_gap_polynomial() {
    check(9);
}

#[test]
fn criterion_10_trigonometric_corollaries() {
    check(10);
}

#[test]
fn criterion_11_tz_certification_sweeps() {
    check(11);
}

#[test]
fn criteria_table_is_complete() {
    assert_eq!(CRITERIA.len(), 11);
    for (i, (id, _)) in CRITERIA.iter().enumerate() {
        assert_eq!(*id, i + 1);
    }
}
