//! Acceptance battery: one test per criterion, each printing a single pass/fail line.
//! Lines go straight to stderr so they appear even when libtest captures output.

use std::io::Write;

use anosovlab::acceptance::{run_criterion, DEFAULT_SEED};

fn criterion(id: u8) {
    let report = run_criterion(id, DEFAULT_SEED, true).expect("known criterion");
    let mut text = format!("{}\n", report.line());
    for c in report.checks.iter().filter(|c| !c.pass) {
        text.push_str(&format!("    {}\n", serde_json::to_string(c).expect("check serialises")));
    }
    std::io::stderr().lock().write_all(text.as_bytes()).expect("stderr is writable");
    assert!(report.pass, "criterion {id} failed");
}

#[test]
fn criterion_01_fixed_point_identity() {
    criterion(1);
}

#[test]
fn criterion_02_orbit_counting_identity() {
    criterion(2);
}

#[test]
fn criterion_03_chord_quadratic_growth() {
    criterion(3);
}

#[test]
fn criterion_04_cone_test_exactness() {
    criterion(4);
}

#[test]
fn criterion_05_rational_fiber_bijectivity() {
    criterion(5);
}

#[test]
fn criterion_06_forms_suite() {
    criterion(6);
}

#[test]
fn criterion_07_mapping_torus_cohomology() {
    criterion(7);
}

#[test]
fn criterion_08_hochschild() {
    criterion(8);
}

#[test]
fn criterion_09_product_admissibility() {
    criterion(9);
}

#[test]
fn criterion_10_beta_curve() {
    criterion(10);
}

#[test]
fn criterion_11_hyperbolic_geometry() {
    criterion(11);
}

#[test]
fn criterion_12_surface_group() {
    criterion(12);
}

#[test]
fn criterion_13_sh_assembly() {
    criterion(13);
}
