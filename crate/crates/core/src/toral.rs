//! Hyperbolic automorphisms of the two-torus: eigen-data in exact arithmetic,
//! periodic points and periodic orbits.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::exact::{smith_normal_form, square_free_decomposition, IntMatrix, QuadNum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToralError {
    #[error("expected a 2x2 matrix, got {0}x{1}")]
    NotTwoByTwo(usize, usize),
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(String),
    #[error("trace {0} is at most 2, so the matrix is not hyperbolic")]
    NotHyperbolic(String),
    #[error("period must be at least 1")]
    InvalidPeriod,
    #[error("cannot parse torus point {0:?}")]
    BadPoint(String),
}

/// Point of `R^2 / Z^2` with rational coordinates, stored in `[0,1)^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    x: BigRational,
    y: BigRational,
}

fn frac(r: &BigRational) -> BigRational {
    r - BigRational::from_integer(r.floor().to_integer())
}

impl TorusPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        TorusPoint { x: frac(&x), y: frac(&y) }
    }

    pub fn origin() -> Self {
        TorusPoint { x: BigRational::zero(), y: BigRational::zero() }
    }

    pub fn from_fractions(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Self::new(BigRational::new(xn.into(), xd.into()), BigRational::new(yn.into(), yd.into()))
    }

    /// Parses `"p/q r/s"` (integers are accepted for either coordinate).
    pub fn parse(text: &str) -> Result<Self, ToralError> {
        let parts: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        if parts.len() != 2 {
            return Err(ToralError::BadPoint(text.to_string()));
        }
        let parse = |s: &str| -> Result<BigRational, ToralError> {
            let bad = || ToralError::BadPoint(text.to_string());
            match s.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(BigRational::new(n, d))
                }
                None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
            }
        };
        Ok(Self::new(parse(parts[0])?, parse(parts[1])?))
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    /// Representative lift in `[0,1)^2`.
    pub fn lift(&self) -> [BigRational; 2] {
        [self.x.clone(), self.y.clone()]
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN)]
    }

    pub fn common_denominator(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }

    pub fn apply(&self, a: &IntMatrix) -> TorusPoint {
        let v = a.apply_rational(&self.lift());
        TorusPoint::new(v[0].clone(), v[1].clone())
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(serializer)
    }
}

/// Exact eigen-data of a hyperbolic matrix in `SL(2,Z)` with trace above 2.
///
/// `expanding` and `contracting` are eigenvectors for `lambda_plus > 1` and
/// `lambda_minus = 1/lambda_plus`, normalised so that `det(expanding, contracting) = 1`
/// and the first coordinate of `expanding` is positive.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub matrix: IntMatrix,
    pub trace: BigInt,
    /// Square-free part of `trace^2 - 4`; all exact quantities live in `Q(sqrt(radicand))`.
    pub radicand: BigInt,
    pub lambda_plus: QuadNum,
    pub lambda_minus: QuadNum,
    pub expanding: [QuadNum; 2],
    pub contracting: [QuadNum; 2],
    /// `ln(lambda_plus)`.
    pub log_dilation: f64,
}

pub(crate) fn det2(u: &[QuadNum; 2], w: &[QuadNum; 2]) -> QuadNum {
    &(&u[0] * &w[1]) - &(&u[1] * &w[0])
}

pub(crate) fn check_hyperbolic(a: &IntMatrix) -> Result<BigInt, ToralError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(ToralError::NotTwoByTwo(a.rows(), a.cols()));
    }
    let det = a.det();
    if !det.is_one() {
        return Err(ToralError::NotUnimodular(det.to_string()));
    }
    let tr = a.trace();
    if tr <= BigInt::from(2) {
        return Err(ToralError::NotHyperbolic(tr.to_string()));
    }
    Ok(tr)
}

pub fn eigen_data(a: &IntMatrix) -> Result<EigenData, ToralError> {
    let tr = check_hyperbolic(a)?;
    let disc = &tr * &tr - BigInt::from(4);
    let (s, d) = square_free_decomposition(&disc);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let t_half = BigRational::from_integer(tr.clone()) * &half;
    let s_half = BigRational::from_integer(s) * &half;
    let lambda_plus = QuadNum::new_unchecked(t_half.clone(), s_half.clone(), d.clone());
    let lambda_minus = QuadNum::new_unchecked(t_half, -s_half, d.clone());

    // b != 0 for every hyperbolic matrix: a triangular one has trace 2 or -2.
    let a00 = QuadNum::from_rational(BigRational::from_integer(a.get(0, 0).clone()), &d);
    let b = QuadNum::from_rational(BigRational::from_integer(a.get(0, 1).clone()), &d);
    let mut expanding = [b.clone(), &lambda_plus - &a00];
    if b.sign() < 0 {
        expanding = [-expanding[0].clone(), -expanding[1].clone()];
    }
    let raw = [b, &lambda_minus - &a00];
    let det = det2(&expanding, &raw);
    let contracting = [&raw[0] / &det, &raw[1] / &det];
    let log_dilation = lambda_plus.to_f64().ln();
    Ok(EigenData { matrix: a.clone(), trace: tr, radicand: d, lambda_plus, lambda_minus, expanding, contracting, log_dilation })
}

impl EigenData {
    /// Exact residuals `A v - lambda v` for both eigenvectors; all four entries vanish.
    pub fn residuals(&self) -> Vec<QuadNum> {
        let mut out = Vec::new();
        for (v, lam) in [(&self.expanding, &self.lambda_plus), (&self.contracting, &self.lambda_minus)] {
            for (i, vi) in v.iter().enumerate() {
                let mut acc = QuadNum::zero(&self.radicand);
                for (j, vj) in v.iter().enumerate() {
                    let m = QuadNum::from_rational(BigRational::from_integer(self.matrix.get(i, j).clone()), &self.radicand);
                    acc = &acc + &(&m * vj);
                }
                out.push(&acc - &(lam * vi));
            }
        }
        out
    }

    pub fn lift(&self, x: &BigRational) -> QuadNum {
        QuadNum::from_rational(x.clone(), &self.radicand)
    }

    /// Coordinates `(a, b)` of `w = a*expanding + b*contracting`.
    pub fn eigen_coordinates(&self, w: &[QuadNum; 2]) -> (QuadNum, QuadNum) {
        (det2(w, &self.contracting), det2(&self.expanding, w))
    }

    pub fn expanding_f64(&self) -> [f64; 2] {
        [self.expanding[0].to_f64(), self.expanding[1].to_f64()]
    }

    pub fn contracting_f64(&self) -> [f64; 2] {
        [self.contracting[0].to_f64(), self.contracting[1].to_f64()]
    }
}

/// Periodic points of period dividing `n`, i.e. solutions of `(A^n - I) v = 0` in `T^2`,
/// in lexicographic order. There are exactly `|tr(A^n) - 2|` of them.
pub fn fixed_points(a: &IntMatrix, n: u32) -> Result<Vec<TorusPoint>, ToralError> {
    check_hyperbolic(a)?;
    if n == 0 {
        return Err(ToralError::InvalidPeriod);
    }
    let b = a.pow(n).sub_identity();
    let snf = smith_normal_form(&b);
    // B = U^-1 S V^-1, so B^-1 Z^2 = V S^-1 Z^2.
    let d = snf.diagonal();
    let d1 = d[0].to_i64().expect("invariant factor fits in i64");
    let d2 = d[1].to_i64().expect("invariant factor fits in i64");
    let v = &snf.v;
    let mut pts = Vec::with_capacity((d1 * d2) as usize);
    for u1 in 0..d1 {
        for u2 in 0..d2 {
            let c1 = BigRational::new(u1.into(), d1.into());
            let c2 = BigRational::new(u2.into(), d2.into());
            let p = v.apply_rational(&[c1, c2]);
            pts.push(TorusPoint::new(p[0].clone(), p[1].clone()));
        }
    }
    pts.sort();
    Ok(pts)
}

/// `|tr(A^n) - 2|`.
pub fn lefschetz_count(a: &IntMatrix, n: u32) -> BigInt {
    (a.pow(n).trace() - BigInt::from(2)).abs()
}

/// A periodic orbit listed in dynamical order from its smallest point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicOrbit {
    pub period: u32,
    pub points: Vec<TorusPoint>,
}

impl PeriodicOrbit {
    pub fn contains(&self, p: &TorusPoint) -> bool {
        self.points.contains(p)
    }

    /// Smallest `k >= 0` with `A^k p = q`, if both lie on this orbit.
    pub fn step_between(&self, p: &TorusPoint, q: &TorusPoint) -> Option<usize> {
        let i = self.points.iter().position(|x| x == p)?;
        let j = self.points.iter().position(|x| x == q)?;
        Some((j + self.points.len() - i) % self.points.len())
    }
}

/// Orbit of a point under `A`, starting at that point.
pub fn orbit_of(a: &IntMatrix, p: &TorusPoint) -> Vec<TorusPoint> {
    let mut pts = vec![p.clone()];
    let mut cur = p.apply(a);
    while &cur != p {
        pts.push(cur.clone());
        cur = cur.apply(a);
    }
    pts
}

/// Builds the orbit of `p`, rotated to start at its smallest point.
pub fn canonical_orbit(a: &IntMatrix, p: &TorusPoint) -> PeriodicOrbit {
    let mut pts = orbit_of(a, p);
    let start = pts.iter().enumerate().min_by(|x, y| x.1.cmp(y.1)).map(|(i, _)| i).unwrap_or(0);
    pts.rotate_left(start);
    PeriodicOrbit { period: pts.len() as u32, points: pts }
}

/// All periodic orbits of minimal period at most `max_period`, sorted by
/// `(period, smallest point)`.
pub fn orbits_up_to_period(a: &IntMatrix, max_period: u32) -> Result<Vec<PeriodicOrbit>, ToralError> {
    check_hyperbolic(a)?;
    let mut seen: HashSet<TorusPoint> = HashSet::new();
    let mut orbits = Vec::new();
    for n in 1..=max_period {
        for p in fixed_points(a, n)? {
            if seen.contains(&p) {
                continue;
            }
            let orbit = canonical_orbit(a, &p);
            seen.extend(orbit.points.iter().cloned());
            if orbit.period == n {
                orbits.push(orbit);
            }
        }
    }
    orbits.sort_by(|x, y| (x.period, &x.points[0]).cmp(&(y.period, &y.points[0])));
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> IntMatrix {
        IntMatrix::two_by_two(2, 1, 1, 1)
    }

    #[test]
    fn cat_map_eigen_data() {
        let e = eigen_data(&cat()).unwrap();
        assert_eq!(e.radicand, BigInt::from(5));
        assert!((e.lambda_plus.to_f64() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((e.log_dilation - 0.962_423_650_119_206_9).abs() < 1e-12);
        assert!(e.residuals().iter().all(|r| r.is_zero()));
        assert_eq!(det2(&e.expanding, &e.contracting), QuadNum::one(&e.radicand));
        assert_eq!(&e.lambda_plus * &e.lambda_minus, QuadNum::one(&e.radicand));
    }

    #[test]
    fn eigen_data_errors() {
        assert!(matches!(eigen_data(&IntMatrix::two_by_two(1, 1, 0, 1)), Err(ToralError::NotHyperbolic(_))));
        assert!(matches!(eigen_data(&IntMatrix::two_by_two(2, 1, 1, 2)), Err(ToralError::NotUnimodular(_))));
        assert!(matches!(eigen_data(&IntMatrix::two_by_two(-2, 1, -1, 0)), Err(ToralError::NotHyperbolic(_))));
    }

    #[test]
    fn non_symmetric_battery_has_exact_eigenvectors() {
        for m in [[3, 1, 2, 1], [3, 2, 1, 1], [5, 2, 2, 1], [1, 1, 1, 2], [7, 3, 2, 1]] {
            let a = IntMatrix::two_by_two(m[0], m[1], m[2], m[3]);
            let e = eigen_data(&a).unwrap();
            assert!(e.residuals().iter().all(|r| r.is_zero()), "{a}");
            assert!(e.expanding[0].sign() > 0);
        }
    }

    #[test]
    fn cat_map_fixed_points() {
        let a = cat();
        assert_eq!(fixed_points(&a, 1).unwrap(), vec![TorusPoint::origin()]);
        let p2 = fixed_points(&a, 2).unwrap();
        assert_eq!(p2.len(), 5);
        for p in &p2 {
            assert_eq!(p.apply(&a).apply(&a), *p);
        }
        assert!(matches!(fixed_points(&a, 0), Err(ToralError::InvalidPeriod)));
    }

    #[test]
    fn cat_map_orbits() {
        let orbits = orbits_up_to_period(&cat(), 2).unwrap();
        assert_eq!(orbits.len(), 3);
        assert_eq!(orbits[0].period, 1);
        assert_eq!(orbits[1].period, 2);
        assert_eq!(orbits[2].period, 2);
        assert!(orbits_up_to_period(&cat(), 0).unwrap().is_empty());
    }

    #[test]
    fn point_parsing() {
        let p = TorusPoint::parse("3/2 -1/3").unwrap();
        assert_eq!(p, TorusPoint::from_fractions(1, 2, 2, 3));
        assert!(TorusPoint::parse("1/0 0").is_err());
        assert!(TorusPoint::parse("1").is_err());
    }
}
