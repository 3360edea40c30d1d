//! Independent, deliberately naive reference computations used to cross-check the main
//! algorithms. Each oracle avoids the code path it checks.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::chords::Sign;
use crate::exact::{Fixed, GradedZModule, IntMatrix, Real};
use crate::homology::ChainComplex;
use crate::hyperbolic::{distance, Geodesic, Mobius};
use crate::surface::{axis, geodesic_length, FuchsianRep, SurfacePresentation, Word};
use crate::toral::TorusPoint;

fn entries_i128(m: &IntMatrix) -> [i128; 4] {
    let g = |i, j| m.get(i, j).to_i128().expect("entry fits in i128");
    [g(0, 0), g(0, 1), g(1, 0), g(1, 1)]
}

/// Periodic points of period dividing `n`, found by scanning the rows of the half-open
/// parallelogram `B [0,1)²` with `B = Aⁿ - I` for integer points `w` and returning
/// `B⁻¹ w mod 1`.
pub fn brute_force_fixed_points(a: &IntMatrix, n: u32) -> Vec<TorusPoint> {
    let [b11, b12, b21, b22] = entries_i128(&a.pow(n).sub_identity());
    let det = b11 * b22 - b12 * b21;
    assert!(det != 0, "A^n - I is singular");
    // (s, t) = B⁻¹ (x, y) = ((b22 x - b12 y), (-b21 x + b11 y)) / det; need 0 <= s, t < 1
    let ys = [0, b21, b22, b21 + b22];
    let (ymin, ymax) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let mut out = Vec::new();
    for y in ymin..=ymax {
        // every constraint has the form 0 <= (c x + e) * sgn(det) < |det|
        let sd = det.signum();
        let cons = [(b22 * sd, -b12 * y * sd), (-b21 * sd, b11 * y * sd)];
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        let mut empty = false;
        for (c, e) in cons {
            let d = det.abs();
            if c == 0 {
                if !(0 <= e && e < d) {
                    empty = true;
                }
                continue;
            }
            // 0 <= c x + e  and  c x + e <= d - 1
            let (l, h) = if c > 0 {
                (Integer::div_ceil(&(-e), &c), Integer::div_floor(&(d - 1 - e), &c))
            } else {
                (Integer::div_ceil(&(d - 1 - e), &c), Integer::div_floor(&(-e), &c))
            };
            lo = lo.max(l);
            hi = hi.min(h);
        }
        if empty {
            continue;
        }
        for x in lo..=hi {
            let s = BigRational::new(BigInt::from(b22 * x - b12 * y), BigInt::from(det));
            let t = BigRational::new(BigInt::from(-b21 * x + b11 * y), BigInt::from(det));
            out.push(TorusPoint::new(s, t));
        }
    }
    out.sort();
    out.dedup();
    out
}

type F = Fixed<256>;

/// Eigen-coordinate test of cone membership: writing `w = a v₊ + b v₋` with
/// `det(v₊, v₋) = 1`, `w` lies in the cone of sign `σ` iff `σa > 0`, `b > 0` and
/// `1 < b/(σa) < λ²`. Evaluated in 256-bit fixed point from its own eigenvectors.
pub struct ConeOracle {
    vp: [F; 2],
    vm: [F; 2],
    lambda_sq: F,
    sign: i64,
}

impl ConeOracle {
    pub fn new(a: &IntMatrix, sign: Sign) -> ConeOracle {
        let [p, q, _r, s] = entries_i128(a).map(|x| x as i64);
        let tr = p + s;
        let root = F::from_i64(tr * tr - 4).sqrt();
        let two = F::from_i64(2);
        let lp = (F::from_i64(tr) + root.clone()) / two.clone();
        let lm = (F::from_i64(tr) - root) / two;
        let mut vp = [F::from_i64(q), lp.clone() - F::from_i64(p)];
        if q < 0 {
            vp = [-vp[0].clone(), -vp[1].clone()];
        }
        let raw = [F::from_i64(q), lm - F::from_i64(p)];
        let d = vp[0].clone() * raw[1].clone() - vp[1].clone() * raw[0].clone();
        let vm = [raw[0].clone() / d.clone(), raw[1].clone() / d];
        ConeOracle { vp, vm, lambda_sq: lp.clone() * lp, sign: sign.factor() }
    }

    pub fn contains(&self, wx: i64, wy: i64) -> bool {
        let (x, y) = (F::from_i64(wx), F::from_i64(wy));
        let a = x.clone() * self.vm[1].clone() - y.clone() * self.vm[0].clone();
        let b = self.vp[0].clone() * y - self.vp[1].clone() * x;
        let sa = if self.sign > 0 { a } else { -a };
        if sa.signum() <= 0 || b.signum() <= 0 {
            return false;
        }
        let ratio = b / sa;
        ratio > F::from_i64(1) && ratio < self.lambda_sq
    }

    /// Cumulative counts of lattice vectors of box length at most `k` in the cone.
    pub fn counts(&self, k_max: u64) -> Vec<u64> {
        let k = k_max as i64;
        let mut by_ring = vec![0u64; k_max as usize + 1];
        for m in -k..=k {
            for n in -k..=k {
                if self.contains(m, n) {
                    by_ring[m.abs().max(n.abs()) as usize] += 1;
                }
            }
        }
        let mut acc = 0;
        by_ring.iter().map(|c| {
            acc += c;
            acc
        }).collect()
    }

    /// Primitive lattice vectors of box length at most `max_norm` in the cone.
    pub fn primitive_count(&self, max_norm: u64) -> u64 {
        let k = max_norm as i64;
        let mut c = 0;
        for m in -k..=k {
            for n in -k..=k {
                if m.gcd(&n) == 1 && self.contains(m, n) {
                    c += 1;
                }
            }
        }
        c
    }

    /// Area of the cone intersected with the box `[-k, k]²`, by clipping the box polygon.
    pub fn box_area(&self, k: f64) -> f64 {
        let vp = [self.vp[0].to_f64(), self.vp[1].to_f64()];
        let vm = [self.vm[0].to_f64(), self.vm[1].to_f64()];
        let l2 = self.lambda_sq.to_f64();
        let s = self.sign as f64;
        // cone edges: b = σa and b = λ² σa, with a = det(w, v₋), b = det(v₊, w)
        let a_of = |w: [f64; 2]| w[0] * vm[1] - w[1] * vm[0];
        let b_of = |w: [f64; 2]| vp[0] * w[1] - vp[1] * w[0];
        let halfplanes: [Box<dyn Fn([f64; 2]) -> f64>; 2] = [Box::new(move |w| b_of(w) - s * a_of(w)), Box::new(move |w| l2 * s * a_of(w) - b_of(w))];
        let mut poly = vec![[-k, -k], [k, -k], [k, k], [-k, k]];
        for h in &halfplanes {
            let mut next = Vec::new();
            for i in 0..poly.len() {
                let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
                let (hp, hq) = (h(p), h(q));
                if hp >= 0.0 {
                    next.push(p);
                }
                if (hp >= 0.0) != (hq >= 0.0) {
                    let t = hp / (hp - hq);
                    next.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
                }
            }
            poly = next;
        }
        let n = poly.len();
        (0..n).map(|i| poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1]).sum::<f64>().abs() / 2.0
    }
}

/// Cohomology of the mapping torus from its cellular chain complex: cells `σ` and `σ × I`
/// over the one-vertex torus, with `∂(σ × I) = A_*σ - σ` because the torus complex has
/// zero boundaries.
pub fn cellular_mapping_torus_cohomology(a: &IntMatrix) -> GradedZModule {
    let [p, q, r, s] = entries_i128(a).map(|x| x as i64);
    // C_0 = ⟨v⟩, C_1 = ⟨e1, e2, v×I⟩, C_2 = ⟨f, e1×I, e2×I⟩, C_3 = ⟨f×I⟩
    let d1 = IntMatrix::zeros(1, 3);
    let d2 = IntMatrix::from_i64(3, 3, &[0, p - 1, q, 0, r, s - 1, 0, 0, 0]).expect("3x3");
    // ∂(f × I) = (det A - 1) f = 0
    let d3 = IntMatrix::zeros(3, 1);
    let chain = ChainComplex::new(vec![1, 3, 3, 1], vec![d1, d2, d3]).expect("well-formed cellular complex");
    chain.dual().cohomology()
}

fn golden_min<Fn1: Fn(f64) -> f64>(f: Fn1, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Distance between two disjoint geodesics by nested golden-section search over arclength
/// parameters, using only points on the geodesics and the distance formula.
pub fn orthogeodesic_length_by_search(g1: &Geodesic, g2: &Geodesic) -> f64 {
    let inner = |s: f64| {
        let z = g1.point_at(s);
        golden_min(|t| distance(z, g2.point_at(t)), -40.0, 40.0, 120).1
    };
    golden_min(inner, -40.0, 40.0, 120).1
}

/// Crossing of two geodesics located by a sign change of the side function sampled
/// along the first, refined by bisection.
fn crossing_by_sampling(g: &Geodesic, h: &Geodesic) -> Option<Complex64> {
    // side of z relative to h, from the position of z against the boundary semicircle
    let side = |z: Complex64| -> f64 { side_of(h, z) };
    let n = 4000;
    let (lo, hi) = (-25.0, 25.0);
    let step = (hi - lo) / n as f64;
    let mut prev_t = lo;
    let mut prev = side(g.point_at(lo));
    for k in 1..=n {
        let t = lo + step * k as f64;
        let cur = side(g.point_at(t));
        if prev == 0.0 {
            return Some(g.point_at(prev_t));
        }
        if prev * cur < 0.0 {
            let (mut a, mut b) = (prev_t, t);
            let sa = prev;
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if side(g.point_at(m)) * sa > 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Some(g.point_at(0.5 * (a + b)));
        }
        prev_t = t;
        prev = cur;
    }
    None
}

/// Sign of `z` relative to a geodesic, computed directly from its endpoints.
fn side_of(h: &Geodesic, z: Complex64) -> f64 {
    use crate::hyperbolic::Boundary::*;
    match (h.from, h.to) {
        (Finite(a), Finite(b)) => {
            let c = 0.5 * (a + b);
            let r = 0.5 * (b - a).abs();
            let inside = r * r - (z - c).norm_sqr();
            // left of travel is the inside when moving right to left along the top
            if a < b {
                -inside
            } else {
                inside
            }
        }
        (Finite(a), Infinity) => a - z.re,
        (Infinity, Finite(b)) => z.re - b,
        (Infinity, Infinity) => f64::NAN,
    }
}

/// Signed area of the closed polyline through the three geodesic sides, sampled densely.
fn sampled_triangle_area(p: Complex64, q: Complex64, r: Complex64) -> f64 {
    let mut pts = Vec::new();
    for (u, v) in [(p, q), (q, r), (r, p)] {
        let g = crate::hyperbolic::geodesic_through(u, v).expect("distinct vertices");
        let (s0, s1) = (g.parameter_of(u), g.parameter_of(v));
        for k in 0..200 {
            pts.push(g.point_at(s0 + (s1 - s0) * k as f64 / 200.0));
        }
    }
    let n = pts.len();
    (0..n).map(|i| pts[i].re * pts[(i + 1) % n].im - pts[(i + 1) % n].re * pts[i].im).sum::<f64>() / 2.0
}

/// Triangle count for the enumeration window by sampling each pair of geodesics for
/// crossings and orienting by the signed area of the sampled boundary.
pub fn triangle_count_by_sampling(g0: &Geodesic, g1: &Geodesic, g2: &Geodesic, l1: f64, window: u32) -> usize {
    let n = g1.normaliser();
    let shift = n.inverse().compose(&Mobius::dilation(l1)).compose(&n);
    let Some(p01) = crossing_by_sampling(g0, g1) else { return 0 };
    let mut count = 0;
    for k in -(window as i64)..=window as i64 {
        let h = g2.image(&shift.pow(k));
        let (Some(p12), Some(p02)) = (crossing_by_sampling(g1, &h), crossing_by_sampling(g0, &h)) else { continue };
        if sampled_triangle_area(p01, p12, p02) > 0.0 {
            count += 1;
        }
    }
    count
}

/// `w` is trivial iff its high-precision matrix image is `±I` within `tol`.
pub fn is_identity_by_matrices(rep: &FuchsianRep<Fixed<512>>, w: &Word, tol: f64) -> bool {
    FuchsianRep::distance_from_identity(&rep.eval(w)) < tol
}

fn to_disc(z: Complex64) -> Complex64 {
    (z - Complex64::i()) / (z + Complex64::i())
}

/// Moves `z` into the Dirichlet domain at `i` by repeatedly applying whichever generator
/// brings it closest to `i`. Returns the accumulated element.
fn dirichlet_reduce(gens: &[Mobius], mut g: Mobius, z: Complex64) -> Mobius {
    let i = Complex64::i();
    loop {
        let cur = g.apply(z);
        let d0 = distance(i, cur);
        let best = gens
            .iter()
            .map(|s| (distance(i, s.apply(cur)), s))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .expect("generators");
        if best.0 < d0 - 1e-12 {
            g = best.1.compose(&g);
        } else {
            return g;
        }
    }
}

fn in_domain(gens: &[Mobius], z: Complex64) -> bool {
    let i = Complex64::i();
    let d0 = distance(i, z);
    gens.iter().all(|s| distance(i, s.apply(z)) >= d0 - 1e-12)
}

type Chunk = (usize, [Complex64; 2], [Complex64; 2]);

/// Short pieces of one period of the closed geodesic, each moved by the element taking
/// one of its ends into the Dirichlet domain (in half-plane and disc coordinates).
fn folded_chunks(w: &Word, rep: &FuchsianRep<f64>, gens: &[Mobius], samples: usize) -> Vec<Chunk> {
    let ax = axis(&rep.mobius(w)).expect("hyperbolic");
    let l = geodesic_length(w, rep).expect("hyperbolic");
    let s0 = ax.parameter_of(Complex64::i()) + 0.0377;
    let pts: Vec<Complex64> = (0..=samples).map(|k| ax.point_at(s0 + l * k as f64 / samples as f64)).collect();
    let mut els = Vec::with_capacity(pts.len());
    let mut g = Mobius::IDENTITY;
    for &p in &pts {
        g = dirichlet_reduce(gens, g, p);
        els.push(g);
    }
    let mut out = Vec::new();
    for k in 0..samples {
        let mut push = |e: &Mobius| {
            let (a, b) = (e.apply(pts[k]), e.apply(pts[k + 1]));
            out.push((k, [a, b], [to_disc(a), to_disc(b)]));
        };
        push(&els[k]);
        let same = (els[k].a - els[k + 1].a).abs() + (els[k].b - els[k + 1].b).abs() + (els[k].c - els[k + 1].c).abs() + (els[k].d - els[k + 1].d).abs() < 1e-6;
        if !same {
            push(&els[k + 1]);
        }
    }
    out
}

fn segment_cross(p: [Complex64; 2], q: [Complex64; 2]) -> Option<f64> {
    let orient = |a: Complex64, b: Complex64, c: Complex64| (b - a).re * (c - a).im - (b - a).im * (c - a).re;
    let (d1, d2) = (orient(p[0], p[1], q[0]), orient(p[0], p[1], q[1]));
    let (d3, d4) = (orient(q[0], q[1], p[0]), orient(q[0], q[1], p[1]));
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        Some(d1 / (d1 - d2))
    } else {
        None
    }
}

/// Intersection count of two closed geodesics (self-intersections when `gamma == beta`)
/// from their images folded into the fundamental polygon.
pub fn intersection_by_folding(gamma: &Word, beta: &Word, rep: &FuchsianRep<f64>, samples: usize) -> usize {
    let p = SurfacePresentation::new(rep.genus).expect("valid genus");
    let gens: Vec<Mobius> = p.letters().into_iter().map(|x| rep.generator_mobius(x)).collect();
    let same = gamma == beta;
    let a = folded_chunks(gamma, rep, &gens, samples);
    let b = if same { a.clone() } else { folded_chunks(beta, rep, &gens, samples) };
    let mut found: Vec<Complex64> = Vec::new();
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            if same {
                let gap = ca.0.abs_diff(cb.0);
                if j <= i || gap <= 1 || gap == samples - 1 {
                    continue;
                }
            }
            let Some(t) = segment_cross(ca.2, cb.2) else { continue };
            let x = ca.1[0] + (ca.1[1] - ca.1[0]) * t;
            if in_domain(&gens, x) && !found.iter().any(|y| (y - x).norm() < 1e-7) {
                found.push(x);
            }
        }
    }
    found.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::{count_chords, Cone};
    use crate::homology::mapping_torus_cohomology;
    use crate::hyperbolic::orthogeodesic;
    use crate::toral::{eigen_data, fixed_points, lefschetz_count};

    #[test]
    fn fixed_points_agree_with_smith_form() {
        let a = IntMatrix::two_by_two(2, 1, 1, 1);
        for n in 1..=4 {
            let brute = brute_force_fixed_points(&a, n);
            assert_eq!(brute, fixed_points(&a, n).unwrap());
            assert_eq!(BigInt::from(brute.len()), lefschetz_count(&a, n));
        }
    }

    #[test]
    fn cone_oracle_agrees_on_small_box() {
        let a = IntMatrix::two_by_two(2, 1, 1, 1);
        let e = eigen_data(&a).unwrap();
        for sign in Sign::both() {
            let o = ConeOracle::new(&a, sign);
            let cone = Cone::new(&e, sign);
            for m in -6..=6 {
                for n in -6..=6 {
                    assert_eq!(o.contains(m, n), cone.contains_int(m, n), "{m} {n} {sign:?}");
                }
            }
            let p = TorusPoint::origin();
            assert_eq!(o.counts(8), count_chords(&e, &p, &p, sign, 8));
        }
    }

    #[test]
    fn cone_area_tracks_counts() {
        let a = IntMatrix::two_by_two(2, 1, 1, 1);
        let o = ConeOracle::new(&a, Sign::Plus);
        let count = *o.counts(60).last().unwrap() as f64;
        let area = o.box_area(60.0);
        assert!((count / area - 1.0).abs() < 0.05, "{count} vs {area}");
    }

    #[test]
    fn cellular_complex_matches_wang() {
        for a in [IntMatrix::two_by_two(2, 1, 1, 1), IntMatrix::two_by_two(3, 1, 2, 1)] {
            assert_eq!(cellular_mapping_torus_cohomology(&a), mapping_torus_cohomology(&a).unwrap());
        }
    }

    #[test]
    fn orthogeodesic_search_matches_formula() {
        let g1 = Geodesic::imaginary_axis();
        let g2 = Geodesic::finite(0.5, 3.0).unwrap();
        let l = orthogeodesic(&g1, &g2).unwrap().length;
        assert!((orthogeodesic_length_by_search(&g1, &g2) - l).abs() < 1e-9);
    }

    #[test]
    fn sampled_triangles_match_enumeration() {
        let g0 = Geodesic::finite(-1.0, 1.0).unwrap();
        let g1 = Geodesic::imaginary_axis();
        let g2 = Geodesic::finite(-0.5, 3.0).unwrap();
        let r = crate::hyperbolic::triangle_enumerate(&g0, &g1, &g2, 0.7, 6).unwrap();
        assert_eq!(triangle_count_by_sampling(&g0, &g1, &g2, 0.7, 6), r.count);
    }

    #[test]
    fn folding_oracle_on_standard_curves() {
        let rep = FuchsianRep::<f64>::regular(2).unwrap();
        let w = |s: &str| Word::parse(s, 2).unwrap();
        assert_eq!(intersection_by_folding(&w("a1"), &w("b1"), &rep, 2000), 1);
        assert_eq!(intersection_by_folding(&w("a1"), &w("a2"), &rep, 2000), 0);
        assert_eq!(intersection_by_folding(&w("a1"), &w("a1"), &rep, 2000), 0);
    }

    #[test]
    fn matrix_identity_oracle() {
        let rep = FuchsianRep::<Fixed<512>>::regular(2).unwrap();
        let p = SurfacePresentation::new(2).unwrap();
        assert!(is_identity_by_matrices(&rep, p.relator(), 1e-6));
        assert!(!is_identity_by_matrices(&rep, &Word::parse("a1", 2).unwrap(), 1e-6));
    }
}
