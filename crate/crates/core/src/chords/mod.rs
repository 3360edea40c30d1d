//! Chords of the Anosov flow on a hyperbolic torus bundle, seen as lattice points
//! in open cones of translation vectors, and the rank tables built from them.

mod cone;
mod products;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::exact::{is_perfect_square, QuadNum};
use crate::toral::{EigenData, PeriodicOrbit, ToralError, TorusPoint};

pub use cone::{Cone, Sign};
pub use products::{product_candidates, ProductCandidate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChordError {
    #[error("zero translation vector")]
    ZeroVector,
    #[error("translation vector lies outside the {0} cone")]
    OutsideCone(&'static str),
    #[error("orbit is not invariant under the monodromy")]
    MismatchedMonodromy,
    #[error("chords cannot be composed: {0}")]
    IncompatibleEndpoints(String),
    #[error(transparent)]
    Toral(#[from] ToralError),
}

/// A chord from `source` to `target`, lifted to the translation vector
/// `target~ + translate - source~` with both lifts in `[0,1)^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Chord {
    pub source: TorusPoint,
    pub target: TorusPoint,
    pub sign: Sign,
    pub translate: (i64, i64),
    /// `max(|m|, |n|)` of the lattice translate.
    pub box_length: u64,
    /// Fiber coordinate in `(0, log_dilation)` at which the chord is tangent to the flow direction.
    pub slope: f64,
    /// Euclidean length of the translation vector.
    pub action: f64,
}

impl Chord {
    pub fn vector(&self) -> [BigRational; 2] {
        let s = self.source.lift();
        let t = self.target.lift();
        [
            &t[0] + BigRational::from_integer(self.translate.0.into()) - &s[0],
            &t[1] + BigRational::from_integer(self.translate.1.into()) - &s[1],
        ]
    }

    pub fn vector_f64(&self) -> [f64; 2] {
        let v = self.vector();
        [v[0].to_f64().unwrap_or(f64::NAN), v[1].to_f64().unwrap_or(f64::NAN)]
    }
}

/// Chords with box length at most `k_max`, in `(k, m, n)` order.
#[derive(Clone, Debug, Serialize)]
pub struct FilteredChordSet {
    pub source: TorusPoint,
    pub target: TorusPoint,
    pub sign: Sign,
    pub k_max: u64,
    pub chords: Vec<Chord>,
    /// Entry `k` counts chords with box length at most `k`.
    pub counts_by_k: Vec<u64>,
}

/// Offset `q~ - p~` scaled by its common denominator `l`.
fn scaled_offset(p: &TorusPoint, q: &TorusPoint) -> (i64, i64, i64) {
    let pl = p.lift();
    let ql = q.lift();
    let ox = &ql[0] - &pl[0];
    let oy = &ql[1] - &pl[1];
    let l = num_integer::Integer::lcm(ox.denom(), oy.denom());
    let lr = BigRational::from_integer(l.clone());
    let sx = (ox * &lr).to_integer().to_i64().expect("offset fits in i64");
    let sy = (oy * &lr).to_integer().to_i64().expect("offset fits in i64");
    (sx, sy, l.to_i64().expect("denominator fits in i64"))
}

/// Lattice points `(m, n)` with `max(|m|, |n|) = k`, in lexicographic order.
pub fn ring(k: i64) -> impl Iterator<Item = (i64, i64)> {
    (-k..=k).flat_map(move |m| {
        let ns: Vec<i64> = if m.abs() == k { (-k..=k).collect() } else { vec![-k, k] };
        ns.into_iter().map(move |n| (m, n))
    })
}

fn slope_of(e: &EigenData, sign: Sign, w: [f64; 2]) -> f64 {
    let vx = e.expanding_f64();
    let vy = e.contracting_f64();
    let a = w[0] * vy[1] - w[1] * vy[0];
    let b = vx[0] * w[1] - vx[1] * w[0];
    (0.5 * (b / (sign.factor() as f64 * a)).ln()).rem_euclid(e.log_dilation)
}

pub fn enumerate_chords(e: &EigenData, p: &TorusPoint, q: &TorusPoint, sign: Sign, k_max: u64) -> FilteredChordSet {
    let cone = Cone::new(e, sign);
    let (ox, oy, l) = scaled_offset(p, q);
    let lf = l as f64;
    let mut chords = Vec::new();
    let mut counts = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max as i64 {
        for (m, n) in ring(k) {
            let (wx, wy) = (m * l + ox, n * l + oy);
            if cone.contains_int(wx, wy) {
                let w = [wx as f64 / lf, wy as f64 / lf];
                chords.push(Chord {
                    source: p.clone(),
                    target: q.clone(),
                    sign,
                    translate: (m, n),
                    box_length: k as u64,
                    slope: slope_of(e, sign, w),
                    action: w[0].hypot(w[1]),
                });
            }
        }
        counts.push(chords.len() as u64);
    }
    FilteredChordSet { source: p.clone(), target: q.clone(), sign, k_max, chords, counts_by_k: counts }
}

/// Cumulative chord counts by box length without materialising the chords.
pub fn count_chords(e: &EigenData, p: &TorusPoint, q: &TorusPoint, sign: Sign, k_max: u64) -> Vec<u64> {
    let cone = Cone::new(e, sign);
    let (ox, oy, l) = scaled_offset(p, q);
    let mut total = 0u64;
    let mut counts = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max as i64 {
        for (m, n) in ring(k) {
            if cone.contains_int(m * l + ox, n * l + oy) {
                total += 1;
            }
        }
        counts.push(total);
    }
    counts
}

/// Fiber coordinate `z` of a translation vector in the open cone: writing the
/// vector as `a v_x + b v_y`, `z = ln(b / (+-a)) / 2` reduced into `[0, log_dilation)`.
pub fn chord_slope(e: &EigenData, translate: &[BigRational; 2], sign: Sign) -> Result<f64, ChordError> {
    let cone = Cone::new(e, sign);
    if !cone.contains(translate)? {
        return Err(ChordError::OutsideCone(sign.symbol()));
    }
    let w = [e.lift(&translate[0]), e.lift(&translate[1])];
    let (a, b) = e.eigen_coordinates(&w);
    let sa = &a * &QuadNum::from_int(sign.factor(), &e.radicand);
    let ratio = &b / &sa;
    Ok((0.5 * ratio.to_f64().ln()).rem_euclid(e.log_dilation))
}

/// Unit-free direction `+-e^{-z} v_x + e^{z} v_y` of the flow-tangent chord at fiber coordinate `z`.
pub fn slope_direction(e: &EigenData, sign: Sign, z: f64) -> [f64; 2] {
    let vx = e.expanding_f64();
    let vy = e.contracting_f64();
    let s = sign.factor() as f64;
    let (c0, c1) = (s * (-z).exp(), z.exp());
    [c0 * vx[0] + c1 * vy[0], c0 * vx[1] + c1 * vy[1]]
}

/// A closed orbit of the flow on a rational fiber: a primitive lattice vector in the cone.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalFiber {
    pub m: i64,
    pub n: i64,
    pub slope: f64,
}

fn slope_key(e: &EigenData, sign: Sign, m: i64, n: i64) -> QuadNum {
    let w = [QuadNum::from_int(m, &e.radicand), QuadNum::from_int(n, &e.radicand)];
    let (a, b) = e.eigen_coordinates(&w);
    &b / &(&a * &QuadNum::from_int(sign.factor(), &e.radicand))
}

/// Exact comparison of the fiber coordinates of two cone vectors.
pub fn compare_slopes(e: &EigenData, sign: Sign, u: (i64, i64), w: (i64, i64)) -> Ordering {
    slope_key(e, sign, u.0, u.1).cmp(&slope_key(e, sign, w.0, w.1))
}

/// Primitive lattice vectors of box length at most `max_norm` inside the open cone,
/// sorted by exact fiber coordinate.
pub fn enumerate_rational_fibers(e: &EigenData, sign: Sign, max_norm: u64) -> Vec<RationalFiber> {
    let cone = Cone::new(e, sign);
    let k = max_norm as i64;
    let mut pts: Vec<(QuadNum, i64, i64)> = Vec::new();
    for m in -k..=k {
        for n in -k..=k {
            if num_integer::gcd(m, n) == 1 && cone.contains_int(m, n) {
                pts.push((slope_key(e, sign, m, n), m, n));
            }
        }
    }
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    pts.into_iter()
        .map(|(_, m, n)| RationalFiber { m, n, slope: slope_of(e, sign, [m as f64, n as f64]) })
        .collect()
}

/// Exact check that no two fibers share a fiber coordinate.
pub fn fibers_pairwise_distinct(e: &EigenData, sign: Sign, fibers: &[RationalFiber]) -> bool {
    let keys: Vec<QuadNum> = fibers.iter().map(|f| slope_key(e, sign, f.m, f.n)).collect();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] == keys[j] {
                return false;
            }
        }
    }
    true
}

/// Generator ranks of the wrapped Floer complex between two periodic orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwRankTable {
    pub k_max: u64,
    pub plus_chords: u64,
    pub minus_chords: u64,
    /// Ranks in degrees 0 and 1 from the intersection `L_O ∩ L_O'`, present iff the orbits agree.
    pub intersection: [u64; 2],
    pub total: u64,
}

fn is_invariant(e: &EigenData, orbit: &PeriodicOrbit) -> bool {
    !orbit.points.is_empty() && orbit.points.iter().all(|p| orbit.contains(&p.apply(&e.matrix)))
}

pub fn hw_rank_table(e: &EigenData, source: &PeriodicOrbit, target: &PeriodicOrbit, k_max: u64) -> Result<HwRankTable, ChordError> {
    if !is_invariant(e, source) || !is_invariant(e, target) {
        return Err(ChordError::MismatchedMonodromy);
    }
    let mut plus = 0;
    let mut minus = 0;
    for p in &source.points {
        for q in &target.points {
            plus += *count_chords(e, p, q, Sign::Plus, k_max).last().unwrap_or(&0);
            minus += *count_chords(e, p, q, Sign::Minus, k_max).last().unwrap_or(&0);
        }
    }
    let same = {
        let mut a = source.points.clone();
        let mut b = target.points.clone();
        a.sort();
        b.sort();
        a == b
    };
    let intersection = if same { [1, 1] } else { [0, 0] };
    Ok(HwRankTable { k_max, plus_chords: plus, minus_chords: minus, intersection, total: plus + minus + intersection[0] + intersection[1] })
}

/// Free homotopy data of a chord in `Z^2 ⋊ Z`: the lattice translate and the fiber winding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SemidirectClass {
    pub translate: (i64, i64),
    pub fiber: i64,
}

pub fn homotopy_class(chord: &Chord) -> SemidirectClass {
    SemidirectClass { translate: chord.translate, fiber: 0 }
}

/// Certificate that the `+` and `-` cones share no lattice vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointnessCertificate {
    /// `tr^2 - 4` is not a perfect square, so cone edges carry no nonzero lattice points.
    pub irrational_edges: bool,
    /// The cones lie in opposite open quadrants of the eigenbasis.
    pub opposite_quadrants: bool,
    pub box_length: u64,
    pub plus_count: u64,
    pub minus_count: u64,
    pub overlap: u64,
    pub disjoint: bool,
}

pub fn class_disjointness(e: &EigenData, k: u64) -> DisjointnessCertificate {
    let disc = &e.trace * &e.trace - BigInt::from(4);
    let irrational_edges = !is_perfect_square(&disc);
    let plus = Cone::new(e, Sign::Plus);
    let minus = Cone::new(e, Sign::Minus);
    // Eigen-coordinates of the edges: (+1, 1) and (lambda_-, lambda_+) against (-1, 1) and (-lambda_-, lambda_+).
    let quadrant = |c: &Cone| {
        let (a0, b0) = e.eigen_coordinates(&c.edge0);
        let (a1, b1) = e.eigen_coordinates(&c.edge1);
        (a0.sign(), b0.sign(), a1.sign(), b1.sign())
    };
    let opposite_quadrants = quadrant(&plus) == (1, 1, 1, 1) && quadrant(&minus) == (-1, 1, -1, 1);
    let ki = k as i64;
    let (mut pc, mut mc, mut overlap) = (0, 0, 0);
    for m in -ki..=ki {
        for n in -ki..=ki {
            let a = plus.contains_int(m, n);
            let b = minus.contains_int(m, n);
            pc += a as u64;
            mc += b as u64;
            overlap += (a && b) as u64;
        }
    }
    DisjointnessCertificate {
        irrational_edges,
        opposite_quadrants,
        box_length: k,
        plus_count: pc,
        minus_count: mc,
        overlap,
        disjoint: irrational_edges && opposite_quadrants && overlap == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntMatrix;
    use crate::toral::{eigen_data, orbits_up_to_period};

    fn cat() -> EigenData {
        eigen_data(&IntMatrix::two_by_two(2, 1, 1, 1)).unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn ring_enumeration_is_complete() {
        assert_eq!(ring(0).collect::<Vec<_>>(), vec![(0, 0)]);
        for k in 1..6 {
            let pts: Vec<_> = ring(k).collect();
            assert_eq!(pts.len() as i64, 8 * k);
            assert!(pts.iter().all(|&(m, n)| m.abs().max(n.abs()) == k));
            let mut sorted = pts.clone();
            sorted.sort();
            assert_eq!(sorted, pts);
        }
    }

    #[test]
    fn cone_membership_of_edges() {
        let e = cat();
        for sign in Sign::both() {
            let c = Cone::new(&e, sign);
            let sum = [&c.edge0[0] + &c.edge1[0], &c.edge0[1] + &c.edge1[1]];
            let w = [sum[0].approx_fixed(300), sum[1].approx_fixed(300)];
            assert!(c.contains(&w).unwrap());
            let neg = [-w[0].clone(), -w[1].clone()];
            assert!(!c.contains(&neg).unwrap());
            assert_eq!(c.contains(&[r(0), r(0)]), Err(ChordError::ZeroVector));
        }
    }

    #[test]
    fn empty_set_at_k_zero() {
        let e = cat();
        let o = TorusPoint::origin();
        let set = enumerate_chords(&e, &o, &o, Sign::Plus, 0);
        assert!(set.chords.is_empty());
        assert_eq!(set.counts_by_k, vec![0]);
    }

    #[test]
    fn slopes_lie_in_fundamental_interval_and_reconstruct() {
        let e = cat();
        let o = TorusPoint::origin();
        for sign in Sign::both() {
            let set = enumerate_chords(&e, &o, &o, sign, 15);
            assert!(!set.chords.is_empty());
            for c in &set.chords {
                assert!(c.slope > 0.0 && c.slope < e.log_dilation);
                let exact = chord_slope(&e, &c.vector(), sign).unwrap();
                assert!((exact - c.slope).abs() < 1e-12);
                let d = slope_direction(&e, sign, c.slope);
                let w = c.vector_f64();
                let cross = (d[0] * w[1] - d[1] * w[0]) / (d[0].hypot(d[1]) * w[0].hypot(w[1]));
                assert!(cross.abs() < 1e-12);
                assert!(d[0] * w[0] + d[1] * w[1] > 0.0);
            }
        }
    }

    #[test]
    fn slope_outside_cone() {
        let e = cat();
        assert_eq!(chord_slope(&e, &[r(0), r(-1)], Sign::Plus), Err(ChordError::OutsideCone("+")));
    }

    #[test]
    fn slope_is_scale_invariant() {
        let e = cat();
        let c = &enumerate_chords(&e, &TorusPoint::origin(), &TorusPoint::origin(), Sign::Plus, 3).chords[0];
        let (m, n) = c.translate;
        let z1 = chord_slope(&e, &[r(m), r(n)], Sign::Plus).unwrap();
        let z2 = chord_slope(&e, &[r(5 * m), r(5 * n)], Sign::Plus).unwrap();
        assert!((z1 - z2).abs() < 1e-14);
    }

    #[test]
    fn rational_fibers_are_distinct() {
        let e = cat();
        for sign in Sign::both() {
            let f = enumerate_rational_fibers(&e, sign, 20);
            assert!(fibers_pairwise_distinct(&e, sign, &f));
            assert!(f.windows(2).all(|w| w[0].slope < w[1].slope));
        }
    }

    #[test]
    fn hw_table_for_fixed_point() {
        let e = cat();
        let orbits = orbits_up_to_period(&e.matrix, 2).unwrap();
        let t = hw_rank_table(&e, &orbits[0], &orbits[0], 0).unwrap();
        assert_eq!((t.plus_chords, t.minus_chords, t.intersection), (0, 0, [1, 1]));
        let t = hw_rank_table(&e, &orbits[0], &orbits[1], 3).unwrap();
        assert_eq!(t.intersection, [0, 0]);
        let bogus = PeriodicOrbit { period: 1, points: vec![TorusPoint::from_fractions(1, 3, 0, 1)] };
        assert_eq!(hw_rank_table(&e, &bogus, &orbits[0], 2), Err(ChordError::MismatchedMonodromy));
    }

    #[test]
    fn cones_are_disjoint() {
        let cert = class_disjointness(&cat(), 30);
        assert!(cert.disjoint);
        assert!(cert.plus_count > 0 && cert.minus_count > 0);
    }

}
