use serde::Serialize;

use super::catalog::{self, ContactPair};
use super::field::{Chart, ChartMap, Derivative, FormField, VectorField, DEFAULT_STEP};
use super::ops::{form_residual, geiges_values, solve_liouville, solve_reeb, symplectic_frame, volume_coefficient};
use super::sampling::halton_points;
use super::FormsError;
use crate::report::{nan_max, Check};
use crate::toral::eigen_data;
use crate::exact::IntMatrix;

pub const SUITES: [&str; 4] = ["torus-bundle", "mcduff-fermi", "mcduff-halfplane", "covers"];

/// Step pair for the convergence-order probe of the central differences.
const COARSE_STEP: f64 = 1e-2;
const FINE_STEP: f64 = 5e-3;
/// Points used for the convergence-order probe.
const RATIO_POINTS: usize = 64;
const D_SQUARED_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { tol: 1e-8, samples: 1000, seed: 7 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub pass: bool,
    pub checks: Vec<Check>,
}

pub fn sample_chart(chart: &Chart, count: usize, seed: u64) -> Vec<Vec<f64>> {
    halton_points(chart.dim(), count, seed).iter().map(|u| chart.place(u)).collect()
}

fn sweep(points: &[Vec<f64>], f: impl Fn(&[f64]) -> f64) -> f64 {
    points.iter().fold(0.0, |m, p| nan_max(m, f(p)))
}

fn sweep_min(points: &[Vec<f64>], f: impl Fn(&[f64]) -> f64) -> f64 {
    points.iter().fold(f64::INFINITY, |m, p| {
        let v = f(p);
        if m.is_nan() || v.is_nan() {
            f64::NAN
        } else {
            m.min(v)
        }
    })
}

fn vec_residual(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| nan_max(m, (x - y).abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Sweep results for a pair of 1-forms on a 3-dimensional chart.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeigesReport {
    /// Sign of `α+∧dα+` relative to the chart orientation, when constant over the samples.
    pub plus_sign: Option<i8>,
    /// `max |α+∧dα+ + α-∧dα-|`.
    pub sum_residual: f64,
    /// `max |α-∧dα+|, |α+∧dα-|`.
    pub mixed_residual: f64,
    /// `min |α+∧dα+|`.
    pub min_plus_volume: f64,
}

pub fn check_geiges(
    alpha_minus: &FormField,
    alpha_plus: &FormField,
    points: &[Vec<f64>],
    mode: Derivative,
) -> Result<GeigesReport, FormsError> {
    for f in [alpha_minus, alpha_plus] {
        if f.dim != 3 {
            return Err(FormsError::DimensionMismatch { expected: 3, found: f.dim });
        }
    }
    let values: Vec<_> = points.iter().map(|p| geiges_values(alpha_plus, alpha_minus, p, mode)).collect();
    let signs: Vec<i8> = values.iter().map(|v| if v.plus_volume > 0.0 { 1 } else if v.plus_volume < 0.0 { -1 } else { 0 }).collect();
    let plus_sign = match signs.first() {
        Some(&s) if s != 0 && signs.iter().all(|&t| t == s) => Some(s),
        _ => None,
    };
    Ok(GeigesReport {
        plus_sign,
        sum_residual: values.iter().fold(0.0, |m, v| nan_max(m, v.sum().abs())),
        mixed_residual: values.iter().fold(0.0, |m, v| nan_max(nan_max(m, v.mixed_plus.abs()), v.mixed_minus.abs())),
        min_plus_volume: values.iter().fold(f64::INFINITY, |m, v| m.min(v.plus_volume.abs())),
    })
}

/// `min |(dλ)^2|` over the points, signed by the volume at the first point so that a sign
/// change shows up as a non-positive value.
pub fn check_nondegenerate(lambda: &FormField, points: &[Vec<f64>]) -> f64 {
    let Some(first) = points.first() else { return f64::NAN };
    let sign = volume_coefficient(lambda, first, Derivative::Analytic).signum();
    sweep_min(points, |p| sign * volume_coefficient(lambda, p, Derivative::Analytic))
}

/// `max |F^*source - target|` over the points.
pub fn pullback_check(map: &ChartMap, source: &FormField, target: &FormField, points: &[Vec<f64>]) -> f64 {
    sweep(points, |p| form_residual(&map.pullback(source, p, DEFAULT_STEP), &target.at(p)))
}

fn derivative_error(form: &FormField, points: &[Vec<f64>], h: f64) -> f64 {
    sweep(points, |p| form_residual(&form.d_numeric(p, h), &form.d(p, Derivative::Analytic)))
}

/// Ratio of the finite-difference errors at steps `1e-2` and `5e-3`; close to 4 for a
/// second-order scheme against a correct closed-form derivative.
pub fn fd_convergence_ratio(form: &FormField, points: &[Vec<f64>]) -> f64 {
    let pts = &points[..points.len().min(RATIO_POINTS)];
    derivative_error(form, pts, COARSE_STEP) / derivative_error(form, pts, FINE_STEP)
}

fn derivative_checks(form: &FormField, points: &[Vec<f64>], tol: f64, out: &mut Vec<Check>) {
    let n = &form.name;
    out.push(Check::residual(format!("{n}: analytic d vs central differences"), derivative_error(form, points, DEFAULT_STEP), tol));
    out.push(Check::range(format!("{n}: difference error ratio h/2"), fd_convergence_ratio(form, points), 3.5, 4.5));
    let d = form.analytic_derivative().expect("catalog forms carry derivatives");
    out.push(Check::residual(format!("{n}: d∘d"), sweep(points, |p| d.d_numeric(p, DEFAULT_STEP).max_abs()), D_SQUARED_TOL));
}

fn reeb_residual(alpha: &FormField, closed: &VectorField, points: &[Vec<f64>]) -> f64 {
    sweep(points, |p| match solve_reeb(alpha, p, Derivative::Analytic) {
        Ok(r) => vec_residual(&r, &closed.at(p)),
        Err(_) => f64::NAN,
    })
}

fn pair_checks(pair: &ContactPair, points: &[Vec<f64>], tol: f64, out: &mut Vec<Check>) -> Result<(), FormsError> {
    let (ap, am) = (&pair.alpha_plus, &pair.alpha_minus);
    let g = check_geiges(am, ap, points, Derivative::Analytic)?;
    out.push(Check::flag(format!("{}∧d{} has constant sign {:?}", ap.name, ap.name, g.plus_sign), g.plus_sign.is_some()));
    out.push(Check::residual(format!("{}∧d{} + {}∧d{}", ap.name, ap.name, am.name, am.name), g.sum_residual, tol));
    out.push(Check::residual("mixed wedges vanish", g.mixed_residual, tol));
    out.push(Check::residual(format!("Reeb field of {}", ap.name), reeb_residual(ap, &pair.reeb_plus, points), tol));
    out.push(Check::residual(format!("Reeb field of {}", am.name), reeb_residual(am, &pair.reeb_minus, points), tol));
    let opposite = sweep(points, |p| {
        dot(&am.at(p).comps, &pair.reeb_plus.at(p)).abs().max(dot(&ap.at(p).comps, &pair.reeb_minus.at(p)).abs())
    });
    out.push(Check::residual("each Reeb field lies in the opposite kernel", opposite, tol));
    let x = &pair.anosov;
    let kernels = sweep(points, |p| dot(&ap.at(p).comps, &x.at(p)).abs().max(dot(&am.at(p).comps, &x.at(p)).abs()));
    out.push(Check::residual(format!("{} lies in both kernels", x.name), kernels, tol));
    let contractions = sweep(points, |p| {
        let v = x.at(p);
        let a = ap.d(p, Derivative::Analytic).interior(&v).add(&am.at(p));
        let b = am.d(p, Derivative::Analytic).interior(&v).add(&ap.at(p));
        a.max_abs().max(b.max_abs())
    });
    out.push(Check::residual(format!("ι_{} dα± = -α∓", x.name), contractions, tol));
    derivative_checks(ap, points, tol, out);
    derivative_checks(am, points, tol, out);
    Ok(())
}

/// Liouville, nondegeneracy, frame and normalisation checks on the cylinder over a pair.
fn cylinder_checks(pair: &ContactPair, theta: FormField, cfg: &SuiteConfig, out: &mut Vec<Check>) {
    let chart = catalog::cylinder_chart(&pair.chart, "s", -1.0, 1.0);
    let points = sample_chart(&chart, cfg.samples, cfg.seed);
    let lambda = catalog::cylinder_form("λ", pair, catalog::exponential_weights, 0.0);
    let closed = catalog::liouville_closed_form(pair);
    let liouville = sweep(&points, |p| match solve_liouville(&lambda, p, Derivative::Analytic) {
        Ok(x) => vec_residual(&x, &closed.at(p)),
        Err(_) => f64::NAN,
    });
    out.push(Check::residual("Liouville field is tanh(2s)∂s - sech(2s)X", liouville, cfg.tol));
    let defining = sweep(&points, |p| match solve_liouville(&lambda, p, Derivative::Analytic) {
        Ok(x) => form_residual(&lambda.d(p, Derivative::Analytic).interior(&x), &lambda.at(p)),
        Err(_) => f64::NAN,
    });
    out.push(Check::residual("ι_X dλ - λ", defining, 1e-9));
    out.push(Check::above("dλ∧dλ bounded away from 0", check_nondegenerate(&lambda, &points), 0.0));
    derivative_checks(&lambda, &points, cfg.tol, out);

    let (lp, lm) = (catalog::lift_field(&pair.alpha_plus), catalog::lift_field(&pair.alpha_minus));
    let anosov = catalog::lift_vector(&pair.anosov);
    let frames: Vec<_> = points.iter().map(|p| symplectic_frame(&lambda, &lp, &lm, &anosov, &theta, 0, p)).collect();
    let worst = |f: &dyn Fn(&super::ops::FrameReport) -> f64| {
        frames.iter().fold(0.0, |m, r| nan_max(m, r.as_ref().map(f).unwrap_or(f64::NAN)))
    };
    out.push(Check::residual("frame: ω(∂s, X_s) = 1", worst(&|r| r.normalisation_residual.abs()), 1e-9));
    out.push(Check::residual("frame: corrected θ(X_s) = 0", worst(&|r| r.corrected_theta_on_xs.abs()), 1e-12));
    out.push(Check::residual("frame: ω(X, X_θ) = θ(X)", worst(&|r| r.anosov_pairing_residual.abs()), 1e-9));
    let min_det = frames.iter().fold(f64::INFINITY, |m, r| m.min(r.as_ref().map(|r| r.determinant.abs()).unwrap_or(f64::NAN)));
    out.push(Check::above("frame pairing determinant bounded away from 0", min_det, 1e-6));

    // e^s λ is the same form as ρ α+ + α- with ρ = e^{2s}; their Liouville fields agree up to
    // a positive factor.
    let rescaled = catalog::cylinder_form("e^s λ", pair, catalog::rescaled_weights, 0.0);
    let scaled_residual = sweep(&points, |p| form_residual(&rescaled.at(p), &lambda.at(p).scale(p[0].exp())));
    out.push(Check::residual("ρα+ + α- = e^s λ under ρ = e^{2s}", scaled_residual, cfg.tol));
    let rho_chart = catalog::cylinder_chart(&pair.chart, "ρ", 0.5, 2.0);
    let rho_points = sample_chart(&rho_chart, cfg.samples, cfg.seed);
    let sigma = catalog::cylinder_form("λ_σ", pair, catalog::homotopy_weights, 0.0);
    let to_rho = ChartMap::new("ρ = e^{2s}", 4, 4, chart.angular.clone(), |p| {
        let mut q = p.to_vec();
        q[0] = (2.0 * p[0]).exp();
        q
    });
    out.push(Check::residual("pullback of λ_σ by ρ = e^{2s} is e^s λ", pullback_check(&to_rho, &sigma, &rescaled, &points), cfg.tol));
    let mut proportional = 0.0f64;
    let mut min_factor = f64::INFINITY;
    for p in &points {
        match (solve_liouville(&lambda, p, Derivative::Analytic), solve_liouville(&rescaled, p, Derivative::Analytic)) {
            (Ok(a), Ok(b)) => {
                let c = dot(&a, &b) / dot(&a, &a);
                let r = vec_residual(&b, &a.iter().map(|x| c * x).collect::<Vec<_>>());
                proportional = nan_max(proportional, r);
                min_factor = min_factor.min(c);
            }
            _ => proportional = f64::NAN,
        }
    }
    out.push(Check::residual("Liouville fields of λ and e^s λ are proportional", proportional, 1e-8));
    out.push(Check::above("proportionality factor is positive", min_factor, 0.0));

    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let lt = catalog::cylinder_form("λ_t", pair, catalog::homotopy_weights, t);
        out.push(Check::above(format!("λ_t symplectic for t = {t}, ρ ∈ [0.5, 2]"), check_nondegenerate(&lt, &rho_points), 0.0));
    }
    let lambda_one = catalog::cylinder_form("λ_1", pair, catalog::homotopy_weights, 1.0);
    let to_rho_one = ChartMap::new("ρ = e^s", 4, 4, chart.angular.clone(), |p| {
        let mut q = p.to_vec();
        q[0] = p[0].exp();
        q
    });
    out.push(Check::residual("λ_1 becomes λ under ρ = e^s", pullback_check(&to_rho_one, &lambda_one, &lambda, &points), cfg.tol));
}

fn degenerate_control(points: &[Vec<f64>]) -> Check {
    let ds = FormField::new("ds", 4, 1, |_| vec![1.0, 0.0, 0.0, 0.0]).with_derivative(|_| vec![0.0; 6]);
    let flat = check_nondegenerate(&ds, points) == 0.0 || volume_coefficient(&ds, &points[0], Derivative::Analytic) == 0.0;
    let singular = matches!(solve_liouville(&ds, &points[0], Derivative::Analytic), Err(FormsError::SingularSystem(_)));
    Check::flag("control λ = ds is flagged degenerate", flat && singular)
}

fn torus_bundle(cfg: &SuiteConfig) -> Result<Vec<Check>, FormsError> {
    let pair = catalog::torus_pair();
    let points = sample_chart(&pair.chart, cfg.samples, cfg.seed);
    let mut out = Vec::new();
    let plus = sweep(&points, |p| (geiges_values(&pair.alpha_plus, &pair.alpha_minus, p, Derivative::Analytic).plus_volume - 2.0).abs());
    out.push(Check::residual("α+∧dα+ = 2 dx∧dy∧dz", plus, cfg.tol));
    let minus = sweep(&points, |p| (geiges_values(&pair.alpha_plus, &pair.alpha_minus, p, Derivative::Analytic).minus_volume + 2.0).abs());
    out.push(Check::residual("α-∧dα- = -2 dx∧dy∧dz", minus, cfg.tol));
    pair_checks(&pair, &points, cfg.tol, &mut out)?;
    let theta = FormField::new("dz", 4, 1, |_| vec![0.0, 0.0, 0.0, 1.0]);
    cylinder_checks(&pair, theta, cfg, &mut out);
    let cyl = sample_chart(&catalog::cylinder_chart(&pair.chart, "s", -1.0, 1.0), cfg.samples, cfg.seed);
    let expanded = catalog::torus_lambda_expanded();
    let generic = catalog::torus_lambda();
    out.push(Check::residual(
        "λ0 = 2 sinh s e^z dx + 2 cosh s e^{-z} dy",
        sweep(&cyl, |p| form_residual(&generic.at(p), &expanded.at(p))),
        cfg.tol,
    ));
    out.push(degenerate_control(&cyl));
    Ok(out)
}

/// `θ = X♭/|X|²` in the chart metric, so `θ(X) = 1`.
fn dual_of(x: &VectorField) -> FormField {
    let x = catalog::lift_vector(x);
    FormField::new("θ", 4, 1, move |p| {
        let v = x.at(p);
        let n = dot(&v, &v);
        v.iter().map(|c| c / n).collect()
    })
}

fn mcduff_fermi(cfg: &SuiteConfig) -> Result<Vec<Check>, FormsError> {
    let pair = catalog::fermi_pair();
    let points = sample_chart(&pair.chart, cfg.samples, cfg.seed);
    let mut out = Vec::new();
    let cosh = sweep(&points, |p| {
        let g = geiges_values(&pair.alpha_plus, &pair.alpha_minus, p, Derivative::Analytic);
        (g.plus_volume + p[0].cosh()).abs().max((g.minus_volume - p[0].cosh()).abs())
    });
    out.push(Check::residual("α_can∧dα_can = -cosh r, α_pre∧dα_pre = cosh r", cosh, cfg.tol));
    pair_checks(&pair, &points, cfg.tol, &mut out)?;
    let theta = dual_of(&pair.anosov);
    cylinder_checks(&pair, theta, cfg, &mut out);
    let flip = catalog::fermi_flip();
    out.push(Check::residual("S preserves α_can", pullback_check(&flip, &pair.alpha_plus, &pair.alpha_plus, &points), cfg.tol));
    out.push(Check::residual("S preserves α_pre", pullback_check(&flip, &pair.alpha_minus, &pair.alpha_minus, &points), cfg.tol));

    let lc = catalog::geodesic_neighbourhood_form();
    let lc_points = sample_chart(&catalog::geodesic_neighbourhood_chart(), cfg.samples, cfg.seed);
    derivative_checks(&lc, &lc_points, cfg.tol, &mut out);
    out.push(Check::above("dλ_C∧dλ_C bounded away from 0", check_nondegenerate(&lc, &lc_points), 0.0));
    Ok(out)
}

fn mcduff_halfplane(cfg: &SuiteConfig) -> Result<Vec<Check>, FormsError> {
    let pair = catalog::halfplane_pair();
    let points = sample_chart(&pair.chart, cfg.samples, cfg.seed);
    let mut out = Vec::new();
    pair_checks(&pair, &points, cfg.tol, &mut out)?;
    let fermi = catalog::fermi_pair();
    let fermi_points = sample_chart(&fermi.chart, cfg.samples, cfg.seed);
    let map = catalog::fermi_to_halfplane();
    out.push(Check::residual(
        "Fermi change of coordinates pulls α̃_can back to α_can",
        pullback_check(&map, &pair.alpha_plus, &fermi.alpha_plus, &fermi_points),
        cfg.tol,
    ));
    out.push(Check::residual(
        "Fermi change of coordinates pulls α̃_pre back to α_pre",
        pullback_check(&map, &pair.alpha_minus, &fermi.alpha_minus, &fermi_points),
        cfg.tol,
    ));
    let elements: [(&str, [f64; 4], f64); 5] = [
        ("identity", [1.0, 0.0, 0.0, 1.0], 1e-10),
        ("translation by 0.37", [1.0, 0.37, 0.0, 1.0], 1e-10),
        ("dilation by 2", [2f64.sqrt(), 0.0, 0.0, 1.0 / 2f64.sqrt()], cfg.tol),
        ("inversion", [0.0, -1.0, 1.0, 0.0], cfg.tol),
        ("hyperbolic [[2,1],[1,1]]", [2.0, 1.0, 1.0, 1.0], cfg.tol),
    ];
    for (label, m, tol) in elements {
        let g = catalog::mobius_action(label, m);
        for form in [&pair.alpha_plus, &pair.alpha_minus] {
            out.push(Check::residual(format!("{label} preserves {}", form.name), pullback_check(&g, form, form, &points), tol));
        }
    }
    Ok(out)
}

fn covers(cfg: &SuiteConfig) -> Result<Vec<Check>, FormsError> {
    let mut out = Vec::new();
    let cat = eigen_data(&IntMatrix::two_by_two(2, 1, 1, 1)).expect("hyperbolic");
    let cover = catalog::TwistedCover { nu: cat.log_dilation, v0: [0.3, -0.2] };
    let pair = catalog::torus_pair();
    let base_points = sample_chart(&pair.chart, cfg.samples, cfg.seed);
    let mono = cover.monodromy_map();
    for form in [&pair.alpha_plus, &pair.alpha_minus] {
        out.push(Check::residual(format!("monodromy preserves {}", form.name), pullback_check(&mono, form, form, &base_points), cfg.tol));
    }
    let equivariance = sweep(&base_points, |p| {
        vec_residual(&cover.trivialise(&[p[0], p[1], p[2] - cover.nu]), &cover.monodromy(&cover.trivialise(p)))
    });
    out.push(Check::residual("trivialisation intertwines the monodromy", equivariance, 1e-12));

    let chart = Chart::new("(s,a,b,z)", &[("s", -1.0, 1.0, false), ("a", -1.0, 1.0, false), ("b", -1.0, 1.0, false), ("z", -1.0, 1.0, false)]);
    let points = sample_chart(&chart, cfg.samples, cfg.seed);
    let map = cover.cotangent_chart();
    // The cover lemma works with half the torus-bundle form.
    let lambda = FormField::combine("λ0/2", vec![(0.5, catalog::torus_lambda())]);
    let f = catalog::cover_potential();
    let primitive = |sign: f64| {
        sweep(&points, |p| {
            let pulled = map.pullback(&lambda, p, DEFAULT_STEP);
            let mut expected = f.d_numeric(p, DEFAULT_STEP).scale(sign);
            // + b ds + a dz
            expected.comps[0] += p[2];
            expected.comps[3] += p[1];
            form_residual(&pulled, &expected)
        })
    };
    out.push(Check::residual("cylinder cover: pulled-back λ0/2 is df + a dz + b ds", primitive(1.0), cfg.tol));
    out.push(Check::above("cylinder cover: the primitive -df is rejected", primitive(-1.0), 1e-3));

    let (e, c) = (cat.expanding_f64(), cat.contracting_f64());
    let p_mat = [[e[0], c[0]], [e[1], c[1]]];
    let lattice_map = catalog::lattice_cotangent_map(p_mat);
    let lattice_chart = Chart::new("(s,x,y,z)", &[("s", -1.0, 1.0, false), ("x", -1.0, 1.0, false), ("y", -1.0, 1.0, false), ("z", -1.0, 1.0, false)]);
    let lp = sample_chart(&lattice_chart, cfg.samples, cfg.seed);
    out.push(Check::residual(
        "lattice cover: a du + b dv pulls back to λ''",
        pullback_check(&lattice_map, &catalog::canonical_cotangent_form(), &catalog::lattice_lambda(), &lp),
        cfg.tol,
    ));
    let jac = ChartMap::new("ψ0", 2, 2, vec![false, false], |p| catalog::psi0(p[0], p[1]).to_vec());
    let det_residual = sweep(&lp, |p| {
        let j = jac.jacobian(&[p[0], p[3]], DEFAULT_STEP);
        (super::algebra::det(&j) - (2.0 * p[0]).cosh()).abs()
    });
    out.push(Check::residual("ψ0 has Jacobian cosh 2s", det_residual, cfg.tol));
    out.push(Check::above("ψ0 image avoids the zero section (b > 0)", sweep_min(&lp, |p| catalog::psi0(p[0], p[3])[1]), 0.0));
    let slice = sweep(&lp, |p| vec_residual(&catalog::psi0(0.0, p[3]), &[0.0, p[3].exp()]));
    out.push(Check::residual("ψ0(0, z) = (0, e^z)", slice, 1e-15));
    Ok(out)
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, FormsError> {
    if cfg.samples == 0 {
        return Err(FormsError::NoSamples);
    }
    let checks = match name {
        "torus-bundle" => torus_bundle(cfg)?,
        "mcduff-fermi" => mcduff_fermi(cfg)?,
        "mcduff-halfplane" => mcduff_halfplane(cfg)?,
        "covers" => covers(cfg)?,
        other => return Err(FormsError::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport { suite: name.to_string(), config: *cfg, pass: checks.iter().all(|c| c.pass), checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteConfig {
        SuiteConfig { tol: 1e-8, samples: 200, seed: 7 }
    }

    fn assert_suite(name: &str) {
        let r = run_suite(name, &quick()).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{name}: {failed:#?}");
    }

    #[test]
    fn torus_bundle_suite_passes() {
        assert_suite("torus-bundle");
    }

    #[test]
    fn fermi_suite_passes() {
        assert_suite("mcduff-fermi");
    }

    #[test]
    fn halfplane_suite_passes() {
        assert_suite("mcduff-halfplane");
    }

    #[test]
    fn covers_suite_passes() {
        assert_suite("covers");
    }

    #[test]
    fn unknown_suite_and_dimension_errors() {
        assert!(matches!(run_suite("nope", &quick()), Err(FormsError::UnknownSuite(_))));
        let f = FormField::new("dx", 4, 1, |_| vec![1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(check_geiges(&f, &f, &[vec![0.0; 4]], Derivative::Analytic), Err(FormsError::DimensionMismatch { .. })));
    }

    #[test]
    fn doubling_scales_volume_by_four() {
        let pair = catalog::torus_pair();
        let double = FormField::combine("2α+", vec![(2.0, pair.alpha_plus.clone())]);
        let p = [0.1, 0.2, 0.3];
        let a = geiges_values(&pair.alpha_plus, &pair.alpha_minus, &p, Derivative::Analytic).plus_volume;
        let b = geiges_values(&double, &pair.alpha_minus, &p, Derivative::Analytic).plus_volume;
        assert!((b - 4.0 * a).abs() < 1e-12);
    }

    #[test]
    fn liouville_closed_form_at_special_points() {
        let pair = catalog::torus_pair();
        let lambda = catalog::torus_lambda();
        let x = solve_liouville(&lambda, &[0.0, 0.3, 0.4, 0.5], Derivative::Analytic).unwrap();
        assert!(vec_residual(&x, &[0.0, 0.0, 0.0, -1.0]) < 1e-12);
        let x = solve_liouville(&lambda, &[1.0, 0.3, 0.4, 0.5], Derivative::Analytic).unwrap();
        assert!(vec_residual(&x, &[2f64.tanh(), 0.0, 0.0, -1.0 / 2f64.cosh()]) < 1e-8);
        let r = solve_reeb(&pair.alpha_plus, &[0.0, 0.0, 0.0], Derivative::Analytic).unwrap();
        assert!(vec_residual(&r, &[0.5, 0.5, 0.0]) < 1e-12);
    }

    #[test]
    fn d_of_exp_dx() {
        let f = FormField::new("e^z dx", 3, 1, |p| vec![p[2].exp(), 0.0, 0.0]);
        // e^z dz∧dx = -e^z dx∧dz
        assert!((f.d_numeric(&[0.0, 0.0, 0.0], DEFAULT_STEP).component(&[2, 0]) - 1.0).abs() < 1e-9);
    }
}
