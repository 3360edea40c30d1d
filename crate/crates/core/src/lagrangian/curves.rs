use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::LagrangianError;

/// Parametrised plane curve `s ↦ (f, g)` with derivatives.
pub trait PlaneCurve {
    /// Parameter interval; for closed curves the ends are identified.
    fn domain(&self) -> (f64, f64);
    /// `[f, g, f', g']` at `s`.
    fn eval(&self, s: f64) -> [f64; 4];
    fn is_closed(&self) -> bool;
    /// Parameters where the curve is only `C¹`, including the domain ends.
    fn breakpoints(&self) -> Vec<f64> {
        let (a, b) = self.domain();
        vec![a, b]
    }
}

/// `0 < ε = tanh δ < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripSpec {
    pub delta: f64,
    pub epsilon: f64,
}

impl StripSpec {
    pub fn new(delta: f64) -> Result<StripSpec, LagrangianError> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(LagrangianError::InvalidParameter(format!("delta must be positive, got {delta}")));
        }
        Ok(StripSpec { delta, epsilon: delta.tanh() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Piece {
    Line { start: [f64; 2], dir: [f64; 2], len: f64 },
    /// Counter-clockwise arc starting at angle `theta0`.
    Arc { center: [f64; 2], radius: f64, theta0: f64, len: f64 },
}

impl Piece {
    fn len(&self) -> f64 {
        match *self {
            Piece::Line { len, .. } | Piece::Arc { len, .. } => len,
        }
    }

    fn eval(&self, u: f64) -> [f64; 4] {
        match *self {
            Piece::Line { start, dir, .. } => [start[0] + u * dir[0], start[1] + u * dir[1], dir[0], dir[1]],
            Piece::Arc { center, radius, theta0, .. } => {
                let th = theta0 + u / radius;
                let (s, c) = th.sin_cos();
                [center[0] + radius * c, center[1] + radius * s, -s, c]
            }
        }
    }
}

/// Counter-clockwise rectangle `[cx - a, cx + a] × [-b, b]` with corners rounded to radius
/// `rho`, parametrised by arclength from the left end of the bottom edge.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundedRectangle {
    pub center_x: f64,
    pub half_width: f64,
    pub half_height: f64,
    pub radius: f64,
    pieces: Vec<Piece>,
    starts: Vec<f64>,
}

impl RoundedRectangle {
    pub fn new(center_x: f64, half_width: f64, half_height: f64, radius: f64) -> Result<RoundedRectangle, LagrangianError> {
        if !(radius > 0.0 && radius <= half_width && radius <= half_height) {
            return Err(LagrangianError::InvalidParameter(format!(
                "corner radius {radius} must lie in (0, min({half_width}, {half_height})]"
            )));
        }
        let (a, b, r) = (half_width, half_height, radius);
        let (sx, sy) = (2.0 * (a - r), 2.0 * (b - r));
        let (x0, x1) = (center_x - a + r, center_x + a - r);
        let (y0, y1) = (-b + r, b - r);
        let mut pieces = Vec::new();
        let quarter = PI / 2.0 * r;
        let push_line = |p: &mut Vec<Piece>, start: [f64; 2], dir: [f64; 2], len: f64| {
            if len > 0.0 {
                p.push(Piece::Line { start, dir, len });
            }
        };
        push_line(&mut pieces, [x0, -b], [1.0, 0.0], sx);
        pieces.push(Piece::Arc { center: [x1, y0], radius: r, theta0: -PI / 2.0, len: quarter });
        push_line(&mut pieces, [center_x + a, y0], [0.0, 1.0], sy);
        pieces.push(Piece::Arc { center: [x1, y1], radius: r, theta0: 0.0, len: quarter });
        push_line(&mut pieces, [x1, b], [-1.0, 0.0], sx);
        pieces.push(Piece::Arc { center: [x0, y1], radius: r, theta0: PI / 2.0, len: quarter });
        push_line(&mut pieces, [center_x - a, y1], [0.0, -1.0], sy);
        pieces.push(Piece::Arc { center: [x0, y0], radius: r, theta0: PI, len: quarter });
        let mut starts = vec![0.0];
        for p in &pieces {
            starts.push(starts.last().unwrap() + p.len());
        }
        Ok(RoundedRectangle { center_x, half_width, half_height, radius, pieces, starts })
    }

    /// Two horizontal edges of length `length` at `±height` joined by semicircular caps,
    /// centred on the origin.
    pub fn stadium(length: f64, height: f64) -> Result<RoundedRectangle, LagrangianError> {
        if !(length >= 0.0) {
            return Err(LagrangianError::InvalidParameter(format!("length must be nonnegative, got {length}")));
        }
        RoundedRectangle::new(0.0, 0.5 * length + height, height, height)
    }

    pub fn perimeter(&self) -> f64 {
        *self.starts.last().unwrap()
    }

    /// Length of each horizontal edge.
    pub fn edge_length(&self) -> f64 {
        2.0 * (self.half_width - self.radius)
    }
}

impl PlaneCurve for RoundedRectangle {
    fn domain(&self) -> (f64, f64) {
        (0.0, self.perimeter())
    }

    fn eval(&self, s: f64) -> [f64; 4] {
        let s = s.rem_euclid(self.perimeter());
        let k = match self.starts.binary_search_by(|x| x.total_cmp(&s)) {
            Ok(i) => i.min(self.pieces.len() - 1),
            Err(i) => i - 1,
        };
        self.pieces[k].eval(s - self.starts[k])
    }

    fn is_closed(&self) -> bool {
        true
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.starts.clone()
    }
}

/// Curve given by a closure, used for circles and test shapes.
pub struct ClosureCurve<F: Fn(f64) -> [f64; 4]> {
    pub domain: (f64, f64),
    pub closed: bool,
    pub f: F,
}

impl<F: Fn(f64) -> [f64; 4]> PlaneCurve for ClosureCurve<F> {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
    fn eval(&self, s: f64) -> [f64; 4] {
        (self.f)(s)
    }
    fn is_closed(&self) -> bool {
        self.closed
    }
}

/// Circle of radius `rho` about `(cx, cy)`, counter-clockwise when `ccw`.
pub fn circle(cx: f64, cy: f64, rho: f64, ccw: bool) -> ClosureCurve<impl Fn(f64) -> [f64; 4]> {
    let sgn = if ccw { 1.0 } else { -1.0 };
    ClosureCurve {
        domain: (0.0, 2.0 * PI),
        closed: true,
        f: move |t: f64| {
            let (s, c) = (sgn * t).sin_cos();
            [cx + rho * c, cy + rho * s, -sgn * rho * s, sgn * rho * c]
        },
    }
}

/// Smooth compactly supported bump `exp(1 - 1/(1 - u²))` on `|u| < 1`, equal to 1 at 0.
pub fn bump(u: f64) -> (f64, f64) {
    if u.abs() >= 1.0 {
        return (0.0, 0.0);
    }
    let q = 1.0 - u * u;
    let v = (1.0 - 1.0 / q).exp();
    (v, v * (-2.0 * u / (q * q)))
}

/// Curve on the real line equal to `(s, 0)` for `|s| >= half_width` and dipping to
/// `(0, -depth)` in between.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UCurve {
    pub half_width: f64,
    pub depth: f64,
    /// Parameter window used for sampling; the curve continues as `(s, 0)` beyond it.
    pub window: f64,
}

impl PlaneCurve for UCurve {
    fn domain(&self) -> (f64, f64) {
        (-self.window, self.window)
    }
    fn eval(&self, s: f64) -> [f64; 4] {
        let (b, db) = bump(s / self.half_width);
        [s, -self.depth * b, 1.0, -self.depth * db / self.half_width]
    }
    fn is_closed(&self) -> bool {
        false
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![-self.window, -self.half_width, self.half_width, self.window]
    }
}

/// Samples of a curve at `n` equally spaced parameters (closed curves omit the far end).
pub fn sample<C: PlaneCurve + ?Sized>(curve: &C, n: usize) -> Vec<(f64, [f64; 4])> {
    let (a, b) = curve.domain();
    let denom = if curve.is_closed() { n } else { n.max(2) - 1 } as f64;
    (0..n).map(|k| {
        let s = a + (b - a) * k as f64 / denom;
        (s, curve.eval(s))
    }).collect()
}
