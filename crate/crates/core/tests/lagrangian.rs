use std::f64::consts::PI;

use anosovlab::lagrangian::{
    build_exact_beta, circle, stadium_weighted_area, verify_exactness, weighted_area, CurveFile, RoundedRectangle,
};
use proptest::prelude::*;

/// Composite Simpson rule with `n` (even) intervals.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|k| f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

/// `∬ dx dy / (1 - y²)` over a rounded rectangle, slicing horizontally. On the rounded
/// bands `y = ±(b - r + r sin φ)` makes the chord width `2(a - r) + 2r cos φ` smooth.
fn rectangle_area_by_slices(a: f64, b: f64, r: f64) -> f64 {
    let w = |y: f64| 1.0 / (1.0 - y * y);
    let core = b - r;
    let middle = if core > 0.0 { simpson(|y| 2.0 * a * w(y), -core, core, 2000) } else { 0.0 };
    let band = |sgn: f64| {
        simpson(|phi| {
            let y = sgn * (core + r * phi.sin());
            (2.0 * (a - r) + 2.0 * r * phi.cos()) * w(y) * r * phi.cos()
        }, 0.0, PI / 2.0, 2000)
    };
    middle + band(1.0) + band(-1.0)
}

fn circle_area_by_slices(cy: f64, rho: f64) -> f64 {
    simpson(|phi| {
        let y = cy + rho * phi.sin();
        2.0 * rho * phi.cos() * rho * phi.cos() / (1.0 - y * y)
    }, -PI / 2.0, PI / 2.0, 4000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stokes_for_rounded_rectangles(cx in -2.0f64..2.0, a in 0.1f64..4.0, b in 0.05f64..0.9, t in 0.05f64..1.0) {
        let r = t * a.min(b);
        let c = RoundedRectangle::new(cx, a, b, r).unwrap();
        let boundary = weighted_area(&c).unwrap();
        prop_assert!((boundary - rectangle_area_by_slices(a, b, r)).abs() < 1e-7, "{} vs {}", boundary, rectangle_area_by_slices(a, b, r));
    }

    #[test]
    fn stokes_for_circles(cx in -2.0f64..2.0, cy in -0.4f64..0.4, rho in 0.05f64..0.5) {
        let boundary = weighted_area(&circle(cx, cy, rho, true)).unwrap();
        prop_assert!((boundary - circle_area_by_slices(cy, rho)).abs() < 1e-7);
        let clockwise = weighted_area(&circle(cx, cy, rho, false)).unwrap();
        prop_assert!((clockwise + boundary).abs() < 1e-10);
    }

    #[test]
    fn period_and_area_are_consistent(delta in 0.1f64..1.5, frac in 0.2f64..0.95, length in 0.0f64..20.0) {
        let eps = delta.tanh();
        let c = RoundedRectangle::stadium(length, frac * eps).unwrap();
        let r = verify_exactness(&c, delta).unwrap();
        prop_assert!(r.consistency < 1e-10);
        prop_assert!((r.weighted_area - stadium_weighted_area(length, frac * eps)).abs() < 1e-10 * r.weighted_area.max(1.0));
        prop_assert!(r.in_strip && r.winding == 1);
        prop_assert!(r.dt1_residual < 1e-12);
    }

    #[test]
    fn solved_curves_are_exact(delta in 0.2f64..1.5, frac in 0.3f64..0.95) {
        let beta = build_exact_beta(delta, frac, 1e-12).unwrap();
        prop_assert!(beta.residual.abs() < 1e-8);
        let r = verify_exactness(&beta.curve(), delta).unwrap();
        prop_assert!(r.period.abs() < 1e-8 && r.consistency < 1e-10);
    }
}

#[test]
fn build_is_bitwise_deterministic() {
    let a = build_exact_beta(0.3, 0.95, 1e-12).unwrap();
    let b = build_exact_beta(0.3, 0.95, 1e-12).unwrap();
    assert_eq!(a.length.to_bits(), b.length.to_bits());
    assert_eq!(a.weighted_area.to_bits(), b.weighted_area.to_bits());
    let fa = serde_json::to_string(&CurveFile::from_beta(&a, 257)).unwrap();
    let fb = serde_json::to_string(&CurveFile::from_beta(&b, 257)).unwrap();
    assert_eq!(fa, fb);
    let back: CurveFile = serde_json::from_str(&fa).unwrap();
    let (_, disagreement) = back.rebuild().unwrap();
    assert_eq!(disagreement, 0.0);
}

#[test]
fn curves_leaving_the_strip_are_rejected() {
    assert!(weighted_area(&circle(0.0, 0.0, 1.2, true)).is_err());
    let c = RoundedRectangle::stadium(2.0, 0.5).unwrap();
    assert!(!verify_exactness(&c, 0.3).unwrap().in_strip);
}
