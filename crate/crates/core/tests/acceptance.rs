use std::io::Write;

use monoext::selftest::{self, CriterionOutcome, DEFAULT_SEED};

// Written to the raw stderr handle so the line shows up even when the harness
// captures test output.
fn report(outcome: CriterionOutcome) {
    let _ = writeln!(std::io::stderr().lock(), "{}", outcome.line());
    assert!(outcome.passed, "criterion {} failed: {}", outcome.id, outcome.detail);
}

#[test]
fn criterion_01_oracle_equivalence() {
    report(selftest::criterion_1(DEFAULT_SEED));
}

#[test]
fn criterion_02_witness_validity() {
    report(selftest::criterion_2(DEFAULT_SEED));
}

#[test]
fn criterion_03_corollary_fast_paths() {
    report(selftest::criterion_3(DEFAULT_SEED));
}

#[test]
fn criterion_04_lemma_properties() {
    report(selftest::criterion_4(DEFAULT_SEED));
}

#[test]
fn criterion_05_line_integral_sharpness() {
    report(selftest::criterion_5());
}

#[test]
fn criterion_06_surface_membership() {
    report(selftest::criterion_6());
}

#[test]
fn criterion_07_grid_convergence() {
    report(selftest::criterion_7());
}

#[test]
fn criterion_08_random_time_bound() {
    report(selftest::criterion_8(DEFAULT_SEED));
}

#[test]
fn criterion_09_process_membership() {
    report(selftest::criterion_9());
}

#[test]
fn criterion_10_rows_grid_cross_check() {
    report(selftest::criterion_10());
}
