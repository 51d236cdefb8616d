//! The acceptance gate: one test per published criterion, each printing
//! its one-line pass/fail verdict. Criterion 13 (the CLI contract) is
//! exercised by the CLI crate's integration tests and summarized here.

use brwdec::selftest;

fn gate(outcome: selftest::CheckOutcome) {
    println!("{}", outcome.render());
    assert!(outcome.passed, "{}", outcome.render());
}

#[test]
fn criterion_01_oracle_soundness() {
    gate(selftest::criterion_1_oracle_soundness());
}

#[test]
fn criterion_02_arithmetic_homomorphism() {
    gate(selftest::criterion_2_arithmetic_homomorphism());
}

#[test]
fn criterion_03_lim_min_laws() {
    gate(selftest::criterion_3_lim_min_laws());
}

#[test]
fn criterion_04_lim_max_at_levels() {
    gate(selftest::criterion_4_lim_max_at_levels());
}

#[test]
fn criterion_05_witness_round_trip() {
    gate(selftest::criterion_5_witness_round_trip());
}

#[test]
fn criterion_06_stage_exact_value() {
    gate(selftest::criterion_6_stage_exact_value());
}

#[test]
fn criterion_07_one_true_member() {
    gate(selftest::criterion_7_one_true_member());
}

#[test]
fn criterion_08_exists_witness() {
    gate(selftest::criterion_8_exists_witness());
}

#[test]
fn criterion_09_twin_prime_demo() {
    gate(selftest::criterion_9_twin_prime_demo());
}

#[test]
fn criterion_10_exists_forall() {
    gate(selftest::criterion_10_exists_forall());
}

#[test]
fn criterion_11_sierpinski_agreement() {
    gate(selftest::criterion_11_sierpinski_agreement());
}

#[test]
fn criterion_12_fuel_monotonicity() {
    gate(selftest::criterion_12_fuel_monotonicity());
}
