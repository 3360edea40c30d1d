use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;
use serde::Serialize;

use crate::hyperbolic::{distance, intersect, Boundary, Geodesic, Mobius};

use super::fuchsian::FuchsianRep;
use super::words::{Letter, SurfacePresentation, Word};
use super::SurfaceError;

/// Offset of the base point along the first axis, keeping crossings off the window ends.
const BASE_OFFSET: f64 = 0.1234;
/// Largest ball radius the tile enumeration accepts.
pub const MAX_RADIUS: f64 = 12.5;
/// Largest word length for double coset enumeration.
pub const MAX_WORD_BOUND: usize = 8;
const DEDUP: f64 = 1e-7;

/// Translation length `2 arccosh(|tr|/2)` of the image of `w`.
pub fn geodesic_length(w: &Word, rep: &FuchsianRep<f64>) -> Result<f64, SurfaceError> {
    let t = rep.trace(w).abs();
    if !(t > 2.0 + 1e-12) {
        return Err(SurfaceError::NotHyperbolicElement(t));
    }
    Ok(2.0 * (t / 2.0).acosh())
}

/// Axis of a hyperbolic element, oriented from the repelling to the attracting fixed point.
pub fn axis(m: &Mobius) -> Result<Geodesic, SurfaceError> {
    let sign = if m.trace() < 0.0 { -1.0 } else { 1.0 };
    let (a, b, c, d) = (m.a * sign, m.b * sign, m.c * sign, m.d * sign);
    let tr = a + d;
    if !(tr > 2.0 + 1e-12) {
        return Err(SurfaceError::NotHyperbolicElement(tr));
    }
    let disc = (tr * tr - 4.0).sqrt();
    let scale = a.abs().max(d.abs()).max(b.abs()).max(1.0);
    let (repel, attract) = if c.abs() < 1e-14 * scale {
        let finite = Boundary::Finite(b / (d - a));
        if a > d {
            (finite, Boundary::Infinity)
        } else {
            (Boundary::Infinity, finite)
        }
    } else {
        // roots of c z² + (d - a) z - b, written to avoid cancellation
        let q = -0.5 * ((d - a) + (d - a).signum() * disc);
        let (z1, z2) = if q.abs() > 0.0 { (q / c, -b / q) } else { ((a - d + disc) / (2.0 * c), (a - d - disc) / (2.0 * c)) };
        // attracting: |c z + d| > 1
        if (c * z1 + d).abs() > 1.0 {
            (Boundary::Finite(z2), Boundary::Finite(z1))
        } else {
            (Boundary::Finite(z1), Boundary::Finite(z2))
        }
    };
    Geodesic::new(repel, attract).map_err(|_| SurfaceError::NotHyperbolicElement(tr))
}

/// Circumradius of the fundamental polygon: `cosh R = cot²(π/4g)`.
pub fn polygon_circumradius(genus: u32) -> f64 {
    let t = (std::f64::consts::PI / (4.0 * genus as f64)).tan();
    (1.0 / (t * t)).acosh()
}

/// Group elements `g` with `d(i, g·i) <= radius`, found by a breadth-first walk over
/// generator steps inside a slightly larger ball.
pub fn group_ball(rep: &FuchsianRep<f64>, radius: f64) -> Result<Vec<Mobius>, SurfaceError> {
    if radius > MAX_RADIUS {
        return Err(SurfaceError::WindowTooLarge(radius));
    }
    let slack = radius + polygon_circumradius(rep.genus) + 0.1;
    let p = SurfacePresentation::new(rep.genus)?;
    let gens: Vec<Mobius> = p.letters().into_iter().map(|x| rep.generator_mobius(x)).collect();
    let i = Complex64::i();
    // orbit points of i are at least twice the inradius apart, so a coarse grid separates them
    let cell = |z: Complex64| ((z.im.ln() / 1e-3).round() as i64, ((z.re / z.im) / 1e-3).round() as i64);
    let mut seen: HashMap<(i64, i64), Vec<Complex64>> = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([Mobius::IDENTITY]);
    seen.entry(cell(i)).or_default().push(i);
    while let Some(g) = queue.pop_front() {
        if distance(i, g.apply(i)) <= radius {
            out.push(g);
        }
        for s in &gens {
            let h = g.compose(s);
            let z = h.apply(i);
            if distance(i, z) > slack {
                continue;
            }
            let (cx, cy) = cell(z);
            let dup = (-1..=1).any(|dx| (-1..=1).any(|dy| seen.get(&(cx + dx, cy + dy)).is_some_and(|v| v.iter().any(|&w| distance(w, z) < 1e-3))));
            if !dup {
                seen.entry((cx, cy)).or_default().push(z);
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

/// Transverse crossings of translates of the axis of `beta` with one period of the axis of
/// `gamma`, as `(arclength, angle)` pairs. The coincident translate is skipped.
fn axis_crossings(gamma: &Word, beta: &Word, rep: &FuchsianRep<f64>) -> Result<Vec<(f64, f64)>, SurfaceError> {
    let lg = geodesic_length(gamma, rep)?;
    let lb = geodesic_length(beta, rep)?;
    let ag = axis(&rep.mobius(gamma))?;
    let ab = axis(&rep.mobius(beta))?;
    let i = Complex64::i();
    let r_oct = polygon_circumradius(rep.genus);
    let s0 = ag.parameter_of(i) + BASE_OFFSET;
    let x0 = ag.point_at(s0);
    let outer = group_ball(rep, distance(i, x0) + lg + r_oct)?;
    let foot_b = ab.point_at(ab.parameter_of(i));
    let near = group_ball(rep, distance(i, foot_b) + lb + r_oct)?;
    // translates of the second axis passing within the circumradius of i
    let hs: Vec<Mobius> = near
        .into_iter()
        .filter(|h| {
            let g = ab.image(h);
            let n = g.normaliser();
            let z = n.apply(i);
            // distance from i to the axis equals that from n(i) to the imaginary axis
            (z.norm() / z.im).acosh() <= r_oct + 1e-9
        })
        .collect();
    let mut found: Vec<(f64, f64)> = Vec::new();
    for g in &outer {
        for h in &hs {
            let lift = ab.image(&g.compose(h));
            if lift.same_as(&ag) {
                continue;
            }
            let Ok(Some(x)) = intersect(&ag, &lift) else { continue };
            let s = ag.parameter_of(x.point);
            if s < s0 || s >= s0 + lg {
                continue;
            }
            if !found.iter().any(|&(t, a)| (t - s).abs() < DEDUP && (a - x.angle).abs() < DEDUP) {
                found.push((s, x.angle));
            }
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(found)
}

/// Geometric intersection number of the closed geodesics in the classes of `gamma` and
/// `beta` (both assumed primitive). For the same unoriented class this is the number of
/// self-intersection points.
pub fn intersection_number(gamma: &Word, beta: &Word, rep: &FuchsianRep<f64>) -> Result<usize, SurfaceError> {
    let p = SurfacePresentation::new(rep.genus)?;
    let (kg, kb) = (p.class_key(gamma), p.class_key(beta));
    if kg.is_empty() || kb.is_empty() {
        return Err(SurfaceError::TrivialClass);
    }
    let n = axis_crossings(gamma, beta, rep)?.len();
    if kg == kb || kg == p.class_key(&beta.inverse()) {
        // every self-crossing is seen once from each branch
        Ok(n / 2)
    } else {
        Ok(n)
    }
}

pub fn self_intersection_number(gamma: &Word, rep: &FuchsianRep<f64>) -> Result<usize, SurfaceError> {
    intersection_number(gamma, gamma, rep)
}

/// How a double coset `⟨γ⟩ w ⟨β⟩` places the translate `w·axis(β)` relative to `axis(γ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CosetKind {
    /// Disjoint axes, joined by a chord of positive length.
    Chord,
    Crossing,
    /// Same axis and orientation.
    Coincident,
    /// Same axis, opposite orientation.
    Opposite,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoubleCoset {
    pub representative: Word,
    pub kind: CosetKind,
    /// Length of the common perpendicular; zero unless `kind` is `Chord`.
    pub chord_length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoubleCosetCensus {
    pub word_bound: usize,
    pub cosets: Vec<DoubleCoset>,
    pub chords: usize,
    pub crossings: usize,
    pub coincident: usize,
    pub opposite: usize,
}

/// Double cosets `⟨γ⟩\G/⟨β⟩` met by freely reduced words of length `<= word_bound`, told
/// apart by the position of `w·axis(β)` modulo the translation along `axis(γ)`.
pub fn double_cosets(gamma: &Word, beta: &Word, rep: &FuchsianRep<f64>, word_bound: usize) -> Result<DoubleCosetCensus, SurfaceError> {
    if word_bound > MAX_WORD_BOUND {
        return Err(SurfaceError::WindowTooLarge(word_bound as f64));
    }
    let lg = geodesic_length(gamma, rep)?;
    let ag = axis(&rep.mobius(gamma))?;
    let ab = axis(&rep.mobius(beta))?;
    let frame = ag.normaliser();
    let base = ab.image(&frame);
    let p = SurfacePresentation::new(rep.genus)?;
    let letters = p.letters();
    let gens: HashMap<Letter, Mobius> = letters.iter().map(|&x| (x, rep.generator_mobius(x))).collect();

    // keyed by (sign u, sign v, bucket of ln|v/u|, bucket of phase) holding (ln|v/u|, phase)
    const WIDTH: f64 = 1e-5;
    let phase_buckets = (1.0 / WIDTH) as i64;
    let mut buckets: HashMap<(i8, i8, i64, i64), Vec<(f64, f64)>> = HashMap::new();
    let mut special: Vec<CosetKind> = Vec::new();
    let mut cosets = Vec::new();

    let mut stack: Vec<(Word, Mobius)> = vec![(Word::empty(), Mobius::IDENTITY)];
    while let Some((w, m)) = stack.pop() {
        // `frame` conjugates, so frame·m·axis(β) = (frame·m·frame⁻¹)·base
        let conj = frame.compose(&m).compose(&frame.inverse());
        let lift = base.image(&conj);
        if let Some(entry) = classify(&lift, lg) {
            let keep = match entry {
                Classified::Special(kind) => {
                    if special.contains(&kind) {
                        None
                    } else {
                        special.push(kind);
                        Some((kind, 0.0))
                    }
                }
                Classified::Key { su, sv, log_ratio, phase, kind, length } => {
                    let bucket = (log_ratio / WIDTH).round() as i64;
                    let pb = ((phase / WIDTH).round() as i64).rem_euclid(phase_buckets);
                    let dup = (-1..=1).any(|d| {
                        (-1..=1).any(|e| {
                            buckets.get(&(su, sv, bucket + d, (pb + e).rem_euclid(phase_buckets))).is_some_and(|v| {
                                v.iter().any(|&(lr, ph)| {
                                    let dphi = (ph - phase).abs();
                                    (lr - log_ratio).abs() < 1e-6 && dphi.min(1.0 - dphi) < 1e-6
                                })
                            })
                        })
                    });
                    if dup {
                        None
                    } else {
                        buckets.entry((su, sv, bucket, pb)).or_default().push((log_ratio, phase));
                        Some((kind, length))
                    }
                }
            };
            if let Some((kind, chord_length)) = keep {
                cosets.push(DoubleCoset { representative: w.clone(), kind, chord_length });
            }
        }
        if w.len() < word_bound {
            for &x in letters.iter().rev() {
                if w.0.last() == Some(&-x) {
                    continue;
                }
                let mut nw = w.clone();
                nw.0.push(x);
                stack.push((nw, m.compose(&gens[&x])));
            }
        }
    }
    cosets.sort_by(|a, b| a.representative.len().cmp(&b.representative.len()).then_with(|| a.chord_length.total_cmp(&b.chord_length)));
    let count = |k: CosetKind| cosets.iter().filter(|c| c.kind == k).count();
    Ok(DoubleCosetCensus {
        word_bound,
        chords: count(CosetKind::Chord),
        crossings: count(CosetKind::Crossing),
        coincident: count(CosetKind::Coincident),
        opposite: count(CosetKind::Opposite),
        cosets,
    })
}

enum Classified {
    Special(CosetKind),
    Key { su: i8, sv: i8, log_ratio: f64, phase: f64, kind: CosetKind, length: f64 },
}

/// Invariants of a geodesic under dilation by `e^{lg}` about the imaginary axis.
fn classify(lift: &Geodesic, lg: f64) -> Option<Classified> {
    let (u, v) = match (lift.from, lift.to) {
        (Boundary::Finite(u), Boundary::Finite(v)) => (u, v),
        (Boundary::Finite(u), Boundary::Infinity) if u.abs() < 1e-9 => return Some(Classified::Special(CosetKind::Coincident)),
        (Boundary::Infinity, Boundary::Finite(v)) if v.abs() < 1e-9 => return Some(Classified::Special(CosetKind::Opposite)),
        // a translate sharing exactly one endpoint with the axis cannot occur in a discrete group
        _ => return None,
    };
    let (small, big) = if u.abs() < v.abs() { (u.abs(), v.abs()) } else { (v.abs(), u.abs()) };
    if small < 1e-9 * big.max(1.0) || big > 1e12 {
        let kind = if u.abs() < v.abs() { CosetKind::Coincident } else { CosetKind::Opposite };
        return Some(Classified::Special(kind));
    }
    let log_ratio = (v.abs() / u.abs()).ln();
    let phase = (((u.abs() * v.abs()).sqrt().ln() / lg).rem_euclid(1.0) + 1.0).rem_euclid(1.0);
    let (kind, length) = if u * v < 0.0 {
        (CosetKind::Crossing, 0.0)
    } else {
        (CosetKind::Chord, ((v + u).abs() / (v - u).abs()).acosh())
    };
    Some(Classified::Key { su: u.signum() as i8, sv: v.signum() as i8, log_ratio, phase, kind, length })
}

/// Which part of the generator count applies to the pair of classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairCase {
    Distinct,
    Equal,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HwGeneratorReport {
    pub genus: u32,
    pub gamma: Word,
    pub beta: Word,
    pub case: PairCase,
    pub word_bound: usize,
    pub t_cutoff: u32,
    /// Double cosets with a chord of positive length found within the word bound.
    pub chord_part: usize,
    /// Crossing double cosets found within the word bound; at most `2 × points` when the
    /// classes agree up to orientation, at most `points` otherwise.
    pub crossing_cosets: usize,
    /// Intersection points (self-intersection points when the classes agree up to orientation).
    pub intersection_points: usize,
    pub tower_per_point: u64,
    pub tower: u64,
    /// Ranks of `H^0` and `H^1` of the circle of constant chords, present when `γ = β`.
    pub circle_ranks: [u64; 2],
    pub total: u64,
    pub caveat: String,
}

/// Generator count of the chord complex between two closed geodesics, truncated at
/// `t^T` and at words of length `word_bound`.
pub fn mcduff_hw_generators(gamma: &Word, beta: &Word, rep: &FuchsianRep<f64>, word_bound: usize, t_cutoff: u32) -> Result<HwGeneratorReport, SurfaceError> {
    let p = SurfacePresentation::new(rep.genus)?;
    let kg = p.class_key(gamma);
    let kb = p.class_key(beta);
    if kg.is_empty() || kb.is_empty() {
        return Err(SurfaceError::TrivialClass);
    }
    let case = if kg == kb {
        PairCase::Equal
    } else if kg == p.class_key(&beta.inverse()) {
        PairCase::Reversed
    } else {
        PairCase::Distinct
    };
    let census = double_cosets(&kg, &kb, rep, word_bound)?;
    let points = intersection_number(&kg, &kb, rep)?;
    let t = u64::from(t_cutoff);
    let per_point = match case {
        PairCase::Distinct => t + 1,
        PairCase::Equal => 2 * t + 1,
        PairCase::Reversed => 2 * (t + 1),
    };
    let circle_ranks = if case == PairCase::Equal { [1, 1] } else { [0, 0] };
    let tower = per_point * points as u64;
    let total = census.chords as u64 + tower + circle_ranks.iter().sum::<u64>();
    let caveat = format!(
        "chord part counts double cosets met by words of length <= {word_bound} and is a lower bound; towers are truncated at |k| <= {t_cutoff}"
    );
    Ok(HwGeneratorReport {
        genus: rep.genus,
        gamma: kg,
        beta: kb,
        case,
        word_bound,
        t_cutoff,
        chord_part: census.chords,
        crossing_cosets: census.crossings,
        intersection_points: points,
        tower_per_point: per_point,
        tower,
        circle_ranks,
        total,
        caveat,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinctnessCertificate {
    pub fiber_power: i64,
    pub class: Word,
    /// Dehn-reduced image of the class in the surface group; nonempty means nontrivial.
    pub projection: Word,
    pub distinct: bool,
}

/// The central fiber class `t^k` projects trivially to the surface while `c` does not,
/// unless `c` itself is trivial.
pub fn class_distinctness_mcduff(k: i64, c: &Word, genus: u32) -> Result<DistinctnessCertificate, SurfaceError> {
    if k == 0 {
        return Err(SurfaceError::ZeroFiberPower);
    }
    let p = SurfacePresentation::new(genus)?;
    let projection = p.cyclic_dehn_reduce(c);
    Ok(DistinctnessCertificate { fiber_power: k, class: p.class_key(c), distinct: !projection.is_empty(), projection })
}

/// Fiber classes `t^j` and `t^k` agree only when `j = k`: the center is infinite cyclic.
pub fn fiber_classes_distinct(j: i64, k: i64) -> bool {
    j != k
}
