//! Plane curves in the strip `|y| < tanh δ` whose lifts give exact Lagrangian tori and
//! cylinders, together with the checks that certify them.

mod curves;
pub mod quadrature;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use curves::{bump, circle, sample, ClosureCurve, PlaneCurve, RoundedRectangle, StripSpec, UCurve};
use quadrature::integrate_pieces;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LagrangianError {
    #[error("curve passes through the origin near parameter {0}")]
    OriginOnCurve(f64),
    #[error("curve crosses itself between parameters {0} and {1}")]
    SelfIntersecting(f64, f64),
    #[error("curve leaves the strip: |y| = {found} >= {bound}")]
    OutOfStrip { found: f64, bound: f64 },
    #[error("no length in [0, {0}] reaches the target area")]
    NoBracket(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Polyline resolution for the self-intersection sweep.
pub const SWEEP_SEGMENTS: usize = 2048;
/// Absolute quadrature tolerance.
pub const QUAD_TOL: f64 = 1e-12;

fn angle_step(p: [f64; 4], q: [f64; 4]) -> f64 {
    let cross = p[0] * q[1] - p[1] * q[0];
    let dot = p[0] * q[0] + p[1] * q[1];
    cross.atan2(dot)
}

/// Degree of a closed curve about the origin, by summing angle increments and refining any
/// parameter step whose increment reaches `π/2`.
pub fn winding_number<C: PlaneCurve + ?Sized>(curve: &C) -> Result<i64, LagrangianError> {
    let (a, b) = curve.domain();
    let n = 256;
    let mut total = 0.0;
    let origin_check = |s: f64, p: [f64; 4]| {
        if p[0].hypot(p[1]) < 1e-12 {
            Err(LagrangianError::OriginOnCurve(s))
        } else {
            Ok(())
        }
    };
    fn refine<C: PlaneCurve + ?Sized>(c: &C, s0: f64, s1: f64, p0: [f64; 4], p1: [f64; 4], depth: u32) -> Result<f64, LagrangianError> {
        let d = angle_step(p0, p1);
        if d.abs() < PI / 2.0 {
            return Ok(d);
        }
        if depth > 50 {
            return Err(LagrangianError::OriginOnCurve(0.5 * (s0 + s1)));
        }
        let m = 0.5 * (s0 + s1);
        let pm = c.eval(m);
        if pm[0].hypot(pm[1]) < 1e-12 {
            return Err(LagrangianError::OriginOnCurve(m));
        }
        Ok(refine(c, s0, m, p0, pm, depth + 1)? + refine(c, m, s1, pm, p1, depth + 1)?)
    }
    let mut prev_s = a;
    let mut prev = curve.eval(a);
    origin_check(a, prev)?;
    for k in 1..=n {
        let s = a + (b - a) * k as f64 / n as f64;
        let p = if k == n { curve.eval(a) } else { curve.eval(s) };
        origin_check(s, p)?;
        total += refine(curve, prev_s, s, prev, p, 0)?;
        prev_s = s;
        prev = p;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// First pair of non-adjacent crossing segments of the closed polyline through `n` samples.
pub fn find_self_intersection<C: PlaneCurve + ?Sized>(curve: &C, n: usize) -> Option<(f64, f64)> {
    let pts = sample(curve, n);
    let m = pts.len();
    let seg = |i: usize| ([pts[i].1[0], pts[i].1[1]], [pts[(i + 1) % m].1[0], pts[(i + 1) % m].1[1]]);
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    let count = if curve.is_closed() { m } else { m - 1 };
    let mut order: Vec<usize> = (0..count).collect();
    let min_x = |i: usize| seg(i).0[0].min(seg(i).1[0]);
    let max_x = |i: usize| seg(i).0[0].max(seg(i).1[0]);
    order.sort_by(|&i, &j| min_x(i).total_cmp(&min_x(j)));
    for (k, &i) in order.iter().enumerate() {
        let (p1, p2) = seg(i);
        for &j in &order[k + 1..] {
            if min_x(j) > max_x(i) {
                break;
            }
            let adjacent = i.abs_diff(j) <= 1 || (curve.is_closed() && i.abs_diff(j) == count - 1);
            if adjacent {
                continue;
            }
            let (q1, q2) = seg(j);
            let d1 = orient(p1, p2, q1);
            let d2 = orient(p1, p2, q2);
            let d3 = orient(q1, q2, p1);
            let d4 = orient(q1, q2, p2);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                return Some((pts[i.min(j)].0, pts[i.max(j)].0));
            }
        }
    }
    None
}

/// Largest `|y|` over a dense sample.
pub fn max_abs_height<C: PlaneCurve + ?Sized>(curve: &C) -> f64 {
    sample(curve, 4 * SWEEP_SEGMENTS).iter().map(|(_, p)| p[1].abs()).fold(0.0, f64::max)
}

/// `∮ x/(1 - y²) dy`, which by Stokes is `∬_D dx dy/(1 - y²)` for a counter-clockwise Jordan
/// curve bounding `D`.
pub fn weighted_area<C: PlaneCurve + ?Sized>(curve: &C) -> Result<f64, LagrangianError> {
    let h = max_abs_height(curve);
    if h >= 1.0 {
        return Err(LagrangianError::OutOfStrip { found: h, bound: 1.0 });
    }
    if let Some((s, t)) = find_self_intersection(curve, SWEEP_SEGMENTS) {
        return Err(LagrangianError::SelfIntersecting(s, t));
    }
    Ok(weighted_area_unchecked(curve))
}

/// [`weighted_area`] without the strip and Jordan checks.
pub fn weighted_area_unchecked<C: PlaneCurve + ?Sized>(curve: &C) -> f64 {
    integrate_pieces(
        |s| {
            let [f, g, _, dg] = curve.eval(s);
            f * dg / (1.0 - g * g)
        },
        &curve.breakpoints(),
        QUAD_TOL,
    )
    .value
}

/// Weighted area of a disc of radius `h < 1` centred on the axis: `2π(1 - √(1 - h²))`.
pub fn disc_weighted_area(h: f64) -> f64 {
    2.0 * PI * (1.0 - (1.0 - h * h).sqrt())
}

/// Exact weighted area of the stadium `RoundedRectangle::stadium(length, height)`.
pub fn stadium_weighted_area(length: f64, height: f64) -> f64 {
    2.0 * length * height.atanh() + disc_weighted_area(height)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaCurve {
    pub strip: StripSpec,
    pub height_frac: f64,
    pub height: f64,
    /// Length of the straight edges.
    pub length: f64,
    pub target_area: f64,
    pub weighted_area: f64,
    pub residual: f64,
    pub iterations: u32,
}

impl BetaCurve {
    pub fn curve(&self) -> RoundedRectangle {
        RoundedRectangle::stadium(self.length, self.height).expect("validated at construction")
    }
}

/// Edge length bound beyond which the solve gives up.
pub const MAX_LENGTH: f64 = 1e6;

/// Stadium of height `height_frac · tanh δ` whose weighted area is `2π`.
pub fn build_exact_beta(delta: f64, height_frac: f64, tol: f64) -> Result<BetaCurve, LagrangianError> {
    build_beta_with_area(delta, height_frac, 2.0 * PI, tol, MAX_LENGTH)
}

/// Stadium of height `height_frac · tanh δ` with weighted area `target`, found by a
/// bracketed secant iteration on the edge length with bisection fallback.
pub fn build_beta_with_area(delta: f64, height_frac: f64, target: f64, tol: f64, max_length: f64) -> Result<BetaCurve, LagrangianError> {
    let strip = StripSpec::new(delta)?;
    if !(height_frac > 0.0 && height_frac < 1.0) {
        return Err(LagrangianError::InvalidParameter(format!("height fraction must lie in (0, 1), got {height_frac}")));
    }
    if !(tol > 0.0) {
        return Err(LagrangianError::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let height = height_frac * strip.epsilon;
    let resid = |l: f64| -> Result<f64, LagrangianError> { Ok(weighted_area(&RoundedRectangle::stadium(l, height)?)? - target) };
    let (mut lo, mut f_lo) = (0.0, resid(0.0)?);
    if f_lo > 0.0 {
        return Err(LagrangianError::NoBracket(0.0));
    }
    // thin-rectangle estimate 2Lδ ≈ target
    let mut hi = (target / (2.0 * delta)).min(max_length);
    let mut f_hi = resid(hi)?;
    while f_hi < 0.0 {
        if hi >= max_length {
            return Err(LagrangianError::NoBracket(max_length));
        }
        lo = hi;
        f_lo = f_hi;
        hi = (2.0 * hi).min(max_length);
        f_hi = resid(hi)?;
    }
    let mut iterations = 0;
    let (mut l, mut f) = if f_lo.abs() < f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
    while f.abs() >= tol && iterations < 200 {
        iterations += 1;
        let secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        let next = if secant > lo && secant < hi { secant } else { 0.5 * (lo + hi) };
        let fn_ = resid(next)?;
        if fn_ < 0.0 {
            lo = next;
            f_lo = fn_;
        } else {
            hi = next;
            f_hi = fn_;
        }
        l = next;
        f = fn_;
        if hi - lo < 1e-15 * hi.max(1.0) {
            break;
        }
    }
    Ok(BetaCurve { strip, height_frac, height, length: l, target_area: target, weighted_area: f + target, residual: f, iterations })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactnessReport {
    /// Largest `|cosh r · y + sinh r|` with `r = -artanh y`, the `dt₁` coefficient.
    pub dt1_residual: f64,
    /// Period of the pulled-back form around the curve.
    pub period: f64,
    pub weighted_area: f64,
    /// `|period - (2π - weighted_area)|`.
    pub consistency: f64,
    pub winding: i64,
    pub max_height: f64,
    pub in_strip: bool,
}

/// Checks the pullback of `x dr + (cosh r · y + sinh r) dt + dθ` along the torus
/// `(t₁, t₂) ↦ (-artanh g(t₂), t₁, f(t₂), g(t₂))`.
pub fn verify_exactness<C: PlaneCurve + ?Sized>(curve: &C, delta: f64) -> Result<ExactnessReport, LagrangianError> {
    let strip = StripSpec::new(delta)?;
    let winding = winding_number(curve)?;
    let area = weighted_area(curve)?;
    let max_height = max_abs_height(curve);
    let dt1_residual = sample(curve, 1000)
        .iter()
        .map(|(_, p)| {
            let r = -p[1].atanh();
            (r.cosh() * p[1] + r.sinh()).abs()
        })
        .fold(0.0, f64::max);
    let period = integrate_pieces(
        |s| {
            let [f, g, df, dg] = curve.eval(s);
            let dr = -dg / (1.0 - g * g);
            f * dr + (f * dg - g * df) / (f * f + g * g)
        },
        &curve.breakpoints(),
        QUAD_TOL,
    )
    .value;
    Ok(ExactnessReport {
        dt1_residual,
        period,
        weighted_area: area,
        consistency: (period - (2.0 * PI - area)).abs(),
        winding,
        in_strip: max_height < strip.epsilon,
        max_height,
    })
}

/// Left side of the tangency identity `g' f (1 - f² - 2g²) - f' g (1 - g²)`.
pub fn end_identity(p: [f64; 4]) -> f64 {
    let [f, g, df, dg] = p;
    dg * f * (1.0 - f * f - 2.0 * g * g) - df * g * (1.0 - g * g)
}

/// Largest tangency residual over `samples` points in each parameter interval of `ends`.
pub fn check_cylindrical_ends<C: PlaneCurve + ?Sized>(curve: &C, ends: &[(f64, f64)], samples: usize) -> f64 {
    let n = samples.max(2);
    ends.iter()
        .flat_map(|&(a, b)| (0..n).map(move |k| a + (b - a) * k as f64 / (n - 1) as f64))
        .map(|s| end_identity(curve.eval(s)).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UCurveReport {
    pub curve: UCurve,
    /// Certified lower bound on `|β|` over the window.
    pub min_norm_bound: f64,
    pub end_residual: f64,
}

/// Curve equal to `(s, 0)` for `|s| >= half_width` (at most 1) that dips to depth `depth`
/// below the origin, with a certificate that it avoids the origin.
pub fn u_shaped_curve(half_width: f64, depth: f64, strip: &StripSpec) -> Result<UCurveReport, LagrangianError> {
    if !(half_width > 0.0 && half_width <= 1.0) {
        return Err(LagrangianError::InvalidParameter(format!("half width must lie in (0, 1], got {half_width}")));
    }
    if !(depth.abs() < strip.epsilon) {
        return Err(LagrangianError::OutOfStrip { found: depth.abs(), bound: strip.epsilon });
    }
    let curve = UCurve { half_width, depth, window: 2.0 };
    // |β| is Lipschitz with constant max |β'|; bound it on a fine grid first
    let n = 20_001;
    let pts = sample(&curve, n);
    let step = 2.0 * curve.window / (n - 1) as f64;
    let lip = pts.iter().map(|(_, p)| p[2].hypot(p[3])).fold(0.0, f64::max) * 1.01;
    let min_sample = pts.iter().map(|(_, p)| p[0].hypot(p[1])).fold(f64::INFINITY, f64::min);
    let min_norm_bound = min_sample - 0.5 * step * lip;
    if !(min_norm_bound > 0.0) {
        let s = pts.iter().min_by(|a, b| a.1[0].hypot(a.1[1]).total_cmp(&b.1[0].hypot(b.1[1]))).map_or(0.0, |p| p.0);
        return Err(LagrangianError::OriginOnCurve(s));
    }
    let end_residual = check_cylindrical_ends(&curve, &[(-curve.window, -1.0), (1.0, curve.window)], 1000);
    Ok(UCurveReport { curve, min_norm_bound, end_residual })
}

/// Sampled curve as written to and read from curve files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub family: String,
    pub delta: f64,
    pub height_frac: f64,
    pub height: f64,
    pub length: f64,
    pub s: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub df: Vec<f64>,
    pub dg: Vec<f64>,
}

impl CurveFile {
    pub fn from_beta(beta: &BetaCurve, samples: usize) -> CurveFile {
        let c = beta.curve();
        let pts = sample(&c, samples);
        CurveFile {
            family: "stadium".into(),
            delta: beta.strip.delta,
            height_frac: beta.height_frac,
            height: beta.height,
            length: beta.length,
            s: pts.iter().map(|p| p.0).collect(),
            f: pts.iter().map(|p| p.1[0]).collect(),
            g: pts.iter().map(|p| p.1[1]).collect(),
            df: pts.iter().map(|p| p.1[2]).collect(),
            dg: pts.iter().map(|p| p.1[3]).collect(),
        }
    }

    /// Rebuilds the analytic curve from the metadata and returns it with the largest
    /// disagreement against the stored samples.
    pub fn rebuild(&self) -> Result<(RoundedRectangle, f64), LagrangianError> {
        if self.family != "stadium" {
            return Err(LagrangianError::InvalidParameter(format!("unknown curve family {:?}", self.family)));
        }
        let n = self.s.len();
        if [self.f.len(), self.g.len(), self.df.len(), self.dg.len()].iter().any(|&m| m != n) {
            return Err(LagrangianError::InvalidParameter("sample arrays differ in length".into()));
        }
        let c = RoundedRectangle::stadium(self.length, self.height)?;
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let p = c.eval(self.s[k]);
            for (a, b) in p.iter().zip([self.f[k], self.g[k], self.df[k], self.dg[k]]) {
                worst = worst.max((a - b).abs());
            }
        }
        Ok((c, worst))
    }
}
