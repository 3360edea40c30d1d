use anosovlab::forms::catalog::{torus_chart, torus_pair};
use anosovlab::forms::{fd_convergence_ratio, form_residual, halton_points, run_suite, sample_chart, Derivative, FormField, SuiteConfig, DEFAULT_STEP, SUITES};
use proptest::prelude::*;

/// `sin(x) cos(y) dy` on the plane, whose exterior derivative is `cos x cos y dx∧dy`.
fn plane_form(correct: bool) -> FormField {
    let scale = if correct { 1.0 } else { 1.0 + 1e-3 };
    FormField::new("sin x cos y dy", 2, 1, |p| vec![0.0, p[0].sin() * p[1].cos()])
        .with_derivative(move |p| vec![scale * p[0].cos() * p[1].cos()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn every_suite_passes_for_any_seed(seed in 0u64..1_000_000) {
        let cfg = SuiteConfig { tol: 1e-8, samples: 150, seed };
        for name in SUITES {
            let r = run_suite(name, &cfg).unwrap();
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
            prop_assert!(failed.is_empty(), "{} seed {}: {:?}", name, seed, failed);
        }
    }

    #[test]
    fn analytic_derivative_matches_hand_computed(seed in 0u64..1_000_000) {
        let f = plane_form(true);
        for u in halton_points(2, 64, seed) {
            let p = [4.0 * u[0] - 2.0, 4.0 * u[1] - 2.0];
            let expected = p[0].cos() * p[1].cos();
            prop_assert!((f.d(&p, Derivative::Analytic).top() - expected).abs() < 1e-15);
            prop_assert!((f.d_numeric(&p, DEFAULT_STEP).top() - expected).abs() < 1e-8);
        }
    }
}

#[test]
fn difference_ratio_is_second_order_only_for_a_correct_derivative() {
    let pts: Vec<Vec<f64>> = halton_points(2, 64, 7).into_iter().map(|u| vec![u[0] + 0.3, u[1] - 0.4]).collect();
    let good = fd_convergence_ratio(&plane_form(true), &pts);
    assert!((3.5..=4.5).contains(&good), "{good}");
    let bad = fd_convergence_ratio(&plane_form(false), &pts);
    assert!(!(3.5..=4.5).contains(&bad), "{bad}");
}

#[test]
fn torus_pair_is_closed_under_d_squared() {
    let pair = torus_pair();
    let points = sample_chart(&torus_chart(), 200, 11);
    for form in [&pair.alpha_plus, &pair.alpha_minus] {
        let d = form.analytic_derivative().unwrap();
        for p in &points {
            assert!(d.d_numeric(p, DEFAULT_STEP).max_abs() < 1e-6);
            assert!(form_residual(&form.d_numeric(p, DEFAULT_STEP), &form.d(p, Derivative::Analytic)) < 1e-8);
        }
    }
}
