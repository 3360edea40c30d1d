use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{hyperbolic_translation, intersect, orthogeodesic, ser_complex, Geodesic, HyperbolicError, Orthogeodesic};

/// Vertices closer than this are treated as colliding.
const COLLISION: f64 = 1e-9;
/// Crossing angles below this are treated as tangential.
const GRAZING: f64 = 1e-9;

/// Position of `z` in the disc model centred at `p`.
fn disc_at(p: Complex64, z: Complex64) -> Complex64 {
    (z - p) / (z - p.conj())
}

/// Sign of the geodesic triangle `p, q, r`: positive when counter-clockwise.
pub fn orientation(p: Complex64, q: Complex64, r: Complex64) -> f64 {
    // geodesics through the centre of the disc are diameters
    let (u, v) = (disc_at(p, q), disc_at(p, r));
    (u.conj() * v).im
}

fn interior_angle(v: Complex64, w1: Complex64, w2: Complex64) -> f64 {
    (disc_at(v, w1) / disc_at(v, w2)).arg().abs()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrianglePattern {
    /// Exponent of the translation applied to the third geodesic.
    pub k: i64,
    /// `p01, p12, p02`.
    #[serde(serialize_with = "ser_vertices")]
    pub vertices: [Complex64; 3],
    pub angles: [f64; 3],
    pub area: f64,
    pub third_geodesic: Geodesic,
}

fn ser_vertices<S: serde::Serializer>(v: &[Complex64; 3], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangleReport {
    pub window: u32,
    pub translation_length: f64,
    pub count: usize,
    pub patterns: Vec<TrianglePattern>,
    /// Counts are over `|k| ≤ window` only.
    pub caveat: String,
}

/// Geodesic triangles with vertices `p01 ∈ g0 ∩ g1`, `p12 ∈ g1 ∩ T^k g2`, `p02 ∈ g0 ∩ T^k g2`
/// traversed counter-clockwise, where `T` translates by `l1` along `g1`.
pub fn triangle_enumerate(g0: &Geodesic, g1: &Geodesic, g2: &Geodesic, l1: f64, window: u32) -> Result<TriangleReport, HyperbolicError> {
    if !(l1 > 0.0) {
        return Err(HyperbolicError::ZeroLength);
    }
    let t = hyperbolic_translation(g1, l1)?;
    let mut patterns = Vec::new();
    let caveat = format!("translates T^k with |k| <= {window} only; the full count runs over all k");
    let Some(x01) = intersect(g0, g1)? else {
        return Ok(TriangleReport { window, translation_length: l1, count: 0, patterns, caveat });
    };
    let w = window as i64;
    for k in -w..=w {
        let h = g2.image(&t.pow(k));
        if h.same_as(g0) || h.same_as(g1) {
            return Err(HyperbolicError::DegenerateConfiguration(k));
        }
        let (Some(x12), Some(x02)) = (intersect(g1, &h)?, intersect(g0, &h)?) else { continue };
        let [p01, p12, p02] = [x01.point, x12.point, x02.point];
        if super::distance(p01, p12) < COLLISION || super::distance(p01, p02) < COLLISION || super::distance(p12, p02) < COLLISION {
            return Err(HyperbolicError::DegenerateConfiguration(k));
        }
        if orientation(p01, p12, p02) <= 0.0 {
            continue;
        }
        let angles = [interior_angle(p01, p12, p02), interior_angle(p12, p01, p02), interior_angle(p02, p01, p12)];
        let area = PI - angles.iter().sum::<f64>();
        patterns.push(TrianglePattern { k, vertices: [p01, p12, p02], angles, area, third_geodesic: h });
    }
    Ok(TriangleReport { window, translation_length: l1, count: patterns.len(), patterns, caveat })
}

/// A triangle coefficient can be nonzero only when the exponents add up.
pub fn grading_check(k01: i64, k12: i64, k02: i64) -> bool {
    k01.checked_add(k12) == Some(k02)
}

/// Splitting of a chord at one crossing with a lift of the closed geodesic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChordSplit {
    /// Index into the list of lifts.
    pub lift: usize,
    #[serde(serialize_with = "ser_complex")]
    pub point: Complex64,
    /// Arclength of the crossing along the chord, from its first foot.
    pub position: f64,
    /// Common perpendicular from the first geodesic to the lift, `None` when they meet.
    pub first: Option<Orthogeodesic>,
    pub second: Option<Orthogeodesic>,
    pub first_length: f64,
    pub second_length: f64,
}

fn split_part(a: &Geodesic, b: &Geodesic) -> Result<Option<Orthogeodesic>, HyperbolicError> {
    match orthogeodesic(a, b) {
        Ok(o) => Ok(Some(o)),
        Err(HyperbolicError::Intersecting) | Err(HyperbolicError::SharedEndpoint) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Cuts the common perpendicular from `g0` to `g2` at each transverse crossing with one of
/// `lifts` and returns the two perpendicular representatives of the pieces, in order along
/// the chord.
pub fn cobracket_delta(g0: &Geodesic, g2: &Geodesic, lifts: &[Geodesic]) -> Result<(Orthogeodesic, Vec<ChordSplit>), HyperbolicError> {
    let chord = orthogeodesic(g0, g2)?;
    let line = chord.geodesic()?;
    let (s0, s1) = (line.parameter_of(chord.foot_first), line.parameter_of(chord.foot_second));
    let mut out = Vec::new();
    for (i, h) in lifts.iter().enumerate() {
        if h.same_as(&line) {
            return Err(HyperbolicError::TangentialIntersection);
        }
        let Some(x) = intersect(&line, h)? else { continue };
        let s = line.parameter_of(x.point);
        if s <= s0 || s >= s1 {
            continue;
        }
        if x.angle < GRAZING || x.angle > PI - GRAZING {
            return Err(HyperbolicError::TangentialIntersection);
        }
        let first = split_part(g0, h)?;
        let second = split_part(h, g2)?;
        out.push(ChordSplit {
            lift: i,
            point: x.point,
            position: s - s0,
            first_length: first.map_or(0.0, |o| o.length),
            second_length: second.map_or(0.0, |o| o.length),
            first,
            second,
        });
    }
    out.sort_by(|a, b| a.position.total_cmp(&b.position));
    Ok((chord, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grading_additivity() {
        assert!(grading_check(0, 0, 0));
        assert!(grading_check(1, 2, 3));
        assert!(!grading_check(1, 2, 4));
        assert!(!grading_check(i64::MAX, 1, 0));
    }

    #[test]
    fn orientation_of_a_standard_triangle() {
        let (a, b, c) = (Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.0));
        assert!(orientation(a, b, c) > 0.0);
        assert!(orientation(a, c, b) < 0.0);
    }

    #[test]
    fn disjoint_third_geodesic_gives_nothing() {
        let g0 = Geodesic::finite(-1.0, 1.0).unwrap();
        let g1 = Geodesic::imaginary_axis();
        // T^k of a geodesic inside the unit disc's complement on the right never crosses g1
        let g2 = Geodesic::finite(2.0, 3.0).unwrap();
        let r = triangle_enumerate(&g0, &g1, &g2, 1.0, 4).unwrap();
        assert_eq!(r.count, 0);
    }

    #[test]
    fn emitted_triangles_have_positive_area() {
        let g0 = Geodesic::finite(-1.0, 1.0).unwrap();
        let g1 = Geodesic::imaginary_axis();
        // crosses the axis above i and the unit circle on the left: counter-clockwise
        let g2 = Geodesic::finite(-0.5, 3.0).unwrap();
        let r = triangle_enumerate(&g0, &g1, &g2, 0.7, 6).unwrap();
        assert!(r.count > 0);
        // the mirror image runs clockwise
        let mirror = Geodesic::finite(-3.0, 0.5).unwrap();
        assert_eq!(triangle_enumerate(&g0, &g1, &mirror, 0.7, 6).unwrap().count, 0);
        for p in &r.patterns {
            assert!(p.area > 0.0 && p.angles.iter().sum::<f64>() < PI);
        }
        let reversed = triangle_enumerate(&g0, &g1, &g2.reversed(), 0.7, 6).unwrap();
        assert_eq!(reversed.count, r.count, "orientation of g2 does not enter the predicate");
    }

    #[test]
    fn triple_point_is_rejected() {
        let g0 = Geodesic::finite(-1.0, 1.0).unwrap();
        let g1 = Geodesic::imaginary_axis();
        // passes through i = g0 ∩ g1
        let g2 = Geodesic::finite(-2.0, 0.5).unwrap();
        assert_eq!(triangle_enumerate(&g0, &g1, &g2, 1.0, 2), Err(HyperbolicError::DegenerateConfiguration(0)));
    }

    #[test]
    fn cobracket_splits_at_crossings() {
        let g0 = Geodesic::imaginary_axis();
        let g2 = Geodesic::finite(1.0, 4.0).unwrap();
        // chord lies on |z| = 2; the radial lift crosses it transversally
        let lift = Geodesic::finite(0.5, 30.0).unwrap();
        let (chord, splits) = cobracket_delta(&g0, &g2, &[lift]).unwrap();
        assert_eq!(splits.len(), 1);
        let s = &splits[0];
        assert!(s.first_length + s.second_length <= chord.length + 1e-12);
        let far = Geodesic::finite(10.0, 11.0).unwrap();
        assert!(cobracket_delta(&g0, &g2, &[far]).unwrap().1.is_empty());
    }
}
