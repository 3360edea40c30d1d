//! Upper half-plane geometry: Möbius maps, oriented geodesics given by their boundary
//! endpoints, intersections, common perpendiculars and Fermi coordinates.

mod triangles;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

pub use triangles::{
    cobracket_delta, grading_check, orientation, triangle_enumerate, ChordSplit, TrianglePattern, TriangleReport,
};

const EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HyperbolicError {
    #[error("matrix has determinant {0}, expected a positive value")]
    NotOrientationPreserving(f64),
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error("the two geodesics coincide")]
    IdenticalGeodesics,
    #[error("geodesics intersect")]
    Intersecting,
    #[error("geodesics share an endpoint at infinity")]
    SharedEndpoint,
    #[error("vertices collide for translate exponent {0}")]
    DegenerateConfiguration(i64),
    #[error("chord meets a translate tangentially")]
    TangentialIntersection,
    #[error("point {0} is not in the upper half-plane")]
    OutOfDomain(Complex64),
    #[error("translation length must be nonzero")]
    ZeroLength,
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// Point of `R ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundary {
    Finite(f64),
    Infinity,
}

impl Boundary {
    pub fn is_close(&self, other: &Boundary, tol: f64) -> bool {
        match (self, other) {
            (Boundary::Infinity, Boundary::Infinity) => true,
            (Boundary::Finite(a), Boundary::Finite(b)) => (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs())),
            (Boundary::Finite(a), Boundary::Infinity) | (Boundary::Infinity, Boundary::Finite(a)) => a.abs() > 1.0 / tol,
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Finite(x) => write!(f, "{x}"),
            Boundary::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Boundary {
    type Err = HyperbolicError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" | "Infinity" | "infinity" => Ok(Boundary::Infinity),
            t => t.parse::<f64>().ok().filter(|x| x.is_finite()).map(Boundary::Finite).ok_or_else(|| HyperbolicError::Parse(s.to_string())),
        }
    }
}

impl Serialize for Boundary {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Boundary::Finite(x) => s.serialize_f64(*x),
            Boundary::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Element of `PSL(2, R)`, stored with determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Normalises a real matrix with positive determinant to determinant 1.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Mobius, HyperbolicError> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(HyperbolicError::NotOrientationPreserving(det));
        }
        let s = det.sqrt();
        Ok(Mobius { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    /// `z ↦ z + τ`.
    pub fn translation(tau: f64) -> Mobius {
        Mobius { a: 1.0, b: tau, c: 0.0, d: 1.0 }
    }

    /// `z ↦ -1/z`.
    pub fn inversion() -> Mobius {
        Mobius { a: 0.0, b: -1.0, c: 1.0, d: 0.0 }
    }

    /// `z ↦ e^ℓ z`.
    pub fn dilation(l: f64) -> Mobius {
        Mobius { a: (l / 2.0).exp(), b: 0.0, c: 0.0, d: (-l / 2.0).exp() }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn compose(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn pow(&self, k: i64) -> Mobius {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut out = Mobius::IDENTITY;
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn apply_boundary(&self, x: Boundary) -> Boundary {
        match x {
            Boundary::Infinity => {
                if self.c.abs() < EPS * (self.a.abs() + self.c.abs()) {
                    Boundary::Infinity
                } else {
                    Boundary::Finite(self.a / self.c)
                }
            }
            Boundary::Finite(x) => {
                let den = self.c * x + self.d;
                if den.abs() < EPS * (self.c.abs() * x.abs() + self.d.abs()).max(EPS) {
                    Boundary::Infinity
                } else {
                    Boundary::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Orientation-preserving map sending `p ↦ 0` and `q ↦ ∞`.
    pub fn to_zero_infinity(p: Boundary, q: Boundary) -> Result<Mobius, HyperbolicError> {
        match (p, q) {
            (Boundary::Finite(p), Boundary::Finite(q)) => {
                if (p - q).abs() < EPS {
                    return Err(HyperbolicError::DegenerateGeodesic);
                }
                // ±(z - p)/(z - q), sign chosen for positive determinant
                if p > q {
                    Mobius::new(1.0, -p, 1.0, -q)
                } else {
                    Mobius::new(-1.0, p, 1.0, -q)
                }
            }
            (Boundary::Infinity, Boundary::Finite(q)) => Mobius::new(0.0, -1.0, 1.0, -q),
            (Boundary::Finite(p), Boundary::Infinity) => Ok(Mobius::translation(-p)),
            (Boundary::Infinity, Boundary::Infinity) => Err(HyperbolicError::DegenerateGeodesic),
        }
    }
}

/// Hyperbolic distance in the upper half-plane.
pub fn distance(z: Complex64, w: Complex64) -> f64 {
    let num = (z - w).norm_sqr();
    (1.0 + num / (2.0 * z.im * w.im)).acosh()
}

/// Oriented geodesic from `from` to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Geodesic {
    pub from: Boundary,
    pub to: Boundary,
}

impl Geodesic {
    pub fn new(from: Boundary, to: Boundary) -> Result<Geodesic, HyperbolicError> {
        if from.is_close(&to, EPS) {
            return Err(HyperbolicError::DegenerateGeodesic);
        }
        Ok(Geodesic { from, to })
    }

    pub fn finite(a: f64, b: f64) -> Result<Geodesic, HyperbolicError> {
        Geodesic::new(Boundary::Finite(a), Boundary::Finite(b))
    }

    /// The imaginary axis oriented upwards.
    pub fn imaginary_axis() -> Geodesic {
        Geodesic { from: Boundary::Finite(0.0), to: Boundary::Infinity }
    }

    /// Parses two boundary points, e.g. `"inf 0"` or `"-1 1"`.
    pub fn parse(s: &str) -> Result<Geodesic, HyperbolicError> {
        let parts: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
        if parts.len() != 2 {
            return Err(HyperbolicError::Parse(s.to_string()));
        }
        Geodesic::new(parts[0].parse()?, parts[1].parse()?)
    }

    pub fn reversed(&self) -> Geodesic {
        Geodesic { from: self.to, to: self.from }
    }

    /// Map normalising the geodesic to the upward imaginary axis.
    pub fn normaliser(&self) -> Mobius {
        Mobius::to_zero_infinity(self.from, self.to).expect("endpoints are distinct")
    }

    pub fn image(&self, g: &Mobius) -> Geodesic {
        Geodesic { from: g.apply_boundary(self.from), to: g.apply_boundary(self.to) }
    }

    /// Point at signed arclength `t` from the base point, the preimage of `i` under the
    /// normaliser, in the direction of travel.
    pub fn point_at(&self, t: f64) -> Complex64 {
        self.normaliser().inverse().apply(Complex64::new(0.0, t.exp()))
    }

    /// Signed arclength coordinate of a point assumed to lie on the geodesic.
    pub fn parameter_of(&self, z: Complex64) -> f64 {
        self.normaliser().apply(z).norm().ln()
    }

    pub fn same_as(&self, other: &Geodesic) -> bool {
        (self.from.is_close(&other.from, 1e-10) && self.to.is_close(&other.to, 1e-10))
            || (self.from.is_close(&other.to, 1e-10) && self.to.is_close(&other.from, 1e-10))
    }

    /// Signed side of a point: positive on the left of the direction of travel.
    pub fn side(&self, z: Complex64) -> f64 {
        // after normalising, left of the upward axis is Re < 0
        -self.normaliser().apply(z).re
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.from, self.to)
    }
}

/// Oriented geodesic through two points of `H`, running from `z` towards `w`.
pub fn geodesic_through(z: Complex64, w: Complex64) -> Result<Geodesic, HyperbolicError> {
    for p in [z, w] {
        if !(p.im > 0.0) {
            return Err(HyperbolicError::OutOfDomain(p));
        }
    }
    // disc model centred at z: ω = (ζ - z)/(ζ - z̄)
    let omega = (w - z) / (w - z.conj());
    if omega.norm() < EPS {
        return Err(HyperbolicError::DegenerateGeodesic);
    }
    let u = omega / omega.norm();
    let back = |om: Complex64| -> Boundary {
        let den = Complex64::new(1.0, 0.0) - om;
        if den.norm() < 1e-14 {
            Boundary::Infinity
        } else {
            Boundary::Finite(((z - z.conj() * om) / den).re)
        }
    };
    Geodesic::new(back(-u), back(u))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Intersection {
    #[serde(serialize_with = "ser_complex")]
    pub point: Complex64,
    /// Angle in `(0, π)` from the direction of the first geodesic to that of the second.
    pub angle: f64,
}

pub(crate) fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// `Ok(None)` when the geodesics are disjoint (including asymptotic ones).
pub fn intersect(g1: &Geodesic, g2: &Geodesic) -> Result<Option<Intersection>, HyperbolicError> {
    if g1.same_as(g2) {
        return Err(HyperbolicError::IdenticalGeodesics);
    }
    let m = g1.normaliser();
    let h = g2.image(&m);
    let (a, b) = match (h.from, h.to) {
        (Boundary::Finite(a), Boundary::Finite(b)) => (a, b),
        _ => return Ok(None),
    };
    if !(a * b < 0.0) {
        return Ok(None);
    }
    let y = (-a * b).sqrt();
    let c = (a + b) / 2.0;
    let r = (b - a).abs() / 2.0;
    // tangent of the semicircle at iy, oriented from a to b
    let dir = if a < b { Complex64::new(y, c) } else { Complex64::new(-y, -c) } / r;
    // the first geodesic points straight up in this frame
    let angle = dir.im.clamp(-1.0, 1.0).acos();
    Ok(Some(Intersection { point: m.inverse().apply(Complex64::new(0.0, y)), angle }))
}

/// `g` moved by hyperbolic translation of length `l` along itself.
pub fn hyperbolic_translation(g: &Geodesic, l: f64) -> Result<Mobius, HyperbolicError> {
    if l == 0.0 || !l.is_finite() {
        return Err(HyperbolicError::ZeroLength);
    }
    let m = g.normaliser();
    Ok(m.inverse().compose(&Mobius::dilation(l)).compose(&m))
}

/// `(x, y) ↦ (r, t)` with `x = tanh r e^t`, `y = sech r e^t`.
pub fn fermi_from_halfplane(z: Complex64) -> Result<(f64, f64), HyperbolicError> {
    if !(z.im > 0.0) {
        return Err(HyperbolicError::OutOfDomain(z));
    }
    let n = z.norm();
    Ok(((z.re / n).atanh(), n.ln()))
}

pub fn halfplane_from_fermi(r: f64, t: f64) -> Complex64 {
    Complex64::new(r.tanh() * t.exp(), t.exp() / r.cosh())
}

/// Common perpendicular of two disjoint geodesics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Orthogeodesic {
    #[serde(serialize_with = "ser_complex")]
    pub foot_first: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub foot_second: Complex64,
    pub length: f64,
}

impl Orthogeodesic {
    /// Oriented from the first foot to the second.
    pub fn geodesic(&self) -> Result<Geodesic, HyperbolicError> {
        geodesic_through(self.foot_first, self.foot_second)
    }
}

pub fn orthogeodesic(g1: &Geodesic, g2: &Geodesic) -> Result<Orthogeodesic, HyperbolicError> {
    if g1.same_as(g2) {
        return Err(HyperbolicError::IdenticalGeodesics);
    }
    let m = g1.normaliser();
    let h = g2.image(&m);
    let (mut a, mut b) = match (h.from, h.to) {
        (Boundary::Finite(a), Boundary::Finite(b)) => (a, b),
        _ => return Err(HyperbolicError::SharedEndpoint),
    };
    if a.abs() < EPS || b.abs() < EPS {
        return Err(HyperbolicError::SharedEndpoint);
    }
    if a * b < 0.0 {
        return Err(HyperbolicError::Intersecting);
    }
    // bring the semicircle to the positive side with z ↦ -1/z, which preserves the axis
    let mut frame = m;
    if a < 0.0 {
        frame = Mobius::inversion().compose(&m);
        (a, b) = (-1.0 / a, -1.0 / b);
    }
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let rho = (a * b).sqrt();
    let x = 2.0 * a * b / (a + b);
    let on_circle = Complex64::new(x, (a * b - x * x).max(0.0).sqrt());
    let back = frame.inverse();
    Ok(Orthogeodesic {
        foot_first: back.apply(Complex64::new(0.0, rho)),
        foot_second: back.apply(on_circle),
        length: ((b + a) / (b - a)).acosh(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn axis_meets_unit_circle_at_i() {
        let x = intersect(&Geodesic::imaginary_axis(), &Geodesic::finite(-1.0, 1.0).unwrap()).unwrap().unwrap();
        assert!((x.point - c(0.0, 1.0)).norm() < 1e-14);
        assert!((x.angle - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn overlapping_semicircles_intersect_on_both_circles() {
        let x = intersect(&Geodesic::finite(-1.0, 1.0).unwrap(), &Geodesic::finite(0.0, 2.0).unwrap()).unwrap().unwrap();
        // |z| = 1 and |z - 1| = 1
        assert!((x.point.norm() - 1.0).abs() < 1e-12);
        assert!(((x.point - 1.0).norm() - 1.0).abs() < 1e-12);
        assert!((x.point - c(0.5, 0.75f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn nested_and_separate_are_disjoint() {
        assert!(intersect(&Geodesic::finite(0.0, 1.0).unwrap(), &Geodesic::finite(2.0, 3.0).unwrap()).unwrap().is_none());
        assert!(intersect(&Geodesic::finite(-3.0, 3.0).unwrap(), &Geodesic::finite(-1.0, 1.0).unwrap()).unwrap().is_none());
        let g = Geodesic::finite(0.0, 1.0).unwrap();
        assert_eq!(intersect(&g, &g.reversed()), Err(HyperbolicError::IdenticalGeodesics));
    }

    #[test]
    fn axis_translation_is_diagonal() {
        let t = hyperbolic_translation(&Geodesic::imaginary_axis(), 1.3).unwrap();
        assert!((t.a - 0.65f64.exp()).abs() < 1e-14 && t.b.abs() < 1e-14 && t.c.abs() < 1e-14);
        assert!((distance(c(0.0, 1.0), t.apply(c(0.0, 1.0))) - 1.3).abs() < 1e-10);
    }

    #[test]
    fn translation_fixes_endpoints() {
        let g = Geodesic::finite(-0.4, 2.5).unwrap();
        let t = hyperbolic_translation(&g, 0.8).unwrap();
        assert!(t.apply_boundary(g.from).is_close(&g.from, 1e-10));
        assert!(t.apply_boundary(g.to).is_close(&g.to, 1e-10));
        assert!((t.trace() - 2.0 * 0.4f64.cosh()).abs() < 1e-12);
        let z = g.point_at(0.3);
        assert!((distance(z, t.apply(z)) - 0.8).abs() < 1e-10);
        assert!((g.parameter_of(t.apply(z)) - 1.1).abs() < 1e-10);
    }

    #[test]
    fn fermi_round_trip() {
        assert_eq!(fermi_from_halfplane(c(0.0, 2f64.exp())).unwrap(), (0.0, 2.0));
        let z = halfplane_from_fermi(1.0, 0.0);
        assert!((z - c(1f64.tanh(), 1.0 / 1f64.cosh())).norm() < 1e-15);
        let (r, t) = fermi_from_halfplane(c(0.3, 0.7)).unwrap();
        assert!((halfplane_from_fermi(r, t) - c(0.3, 0.7)).norm() < 1e-12);
        assert!(fermi_from_halfplane(c(0.3, -0.7)).is_err());
    }

    #[test]
    fn orthogeodesic_closed_form_and_symmetry() {
        let o = orthogeodesic(&Geodesic::imaginary_axis(), &Geodesic::finite(1.0, 3.0).unwrap()).unwrap();
        assert!((o.length.cosh() - 2.0).abs() < 1e-12);
        assert!((distance(o.foot_first, o.foot_second) - o.length).abs() < 1e-12);
        let s = orthogeodesic(&Geodesic::finite(-3.0, -1.0).unwrap(), &Geodesic::finite(1.0, 3.0).unwrap()).unwrap();
        assert!((s.foot_first + s.foot_second.conj()).norm() < 1e-12);
        assert_eq!(
            orthogeodesic(&Geodesic::imaginary_axis(), &Geodesic::finite(-1.0, 1.0).unwrap()),
            Err(HyperbolicError::Intersecting)
        );
        assert_eq!(orthogeodesic(&Geodesic::imaginary_axis(), &Geodesic::finite(0.0, 1.0).unwrap()), Err(HyperbolicError::SharedEndpoint));
    }

    #[test]
    fn geodesic_through_two_points() {
        let g = geodesic_through(c(0.0, 1.0), c(0.0, 3.0)).unwrap();
        assert!(g.from.is_close(&Boundary::Finite(0.0), 1e-12) && g.to == Boundary::Infinity);
        let g = geodesic_through(c(-0.6, 0.8), c(0.6, 0.8)).unwrap();
        assert!(g.from.is_close(&Boundary::Finite(-1.0), 1e-12) && g.to.is_close(&Boundary::Finite(1.0), 1e-12));
    }

    #[test]
    fn parse_literals() {
        assert_eq!(Geodesic::parse("inf 0").unwrap(), Geodesic { from: Boundary::Infinity, to: Boundary::Finite(0.0) });
        assert!(Geodesic::parse("1 1").is_err());
        assert!(Geodesic::parse("1").is_err());
        assert!(Mobius::new(1.0, 0.0, 0.0, -1.0).is_err());
    }
}
