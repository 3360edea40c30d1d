use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::exact::{IntMatrix, QuadNum};
use crate::toral::{EigenData, PeriodicOrbit, TorusPoint};

use super::{Chord, ChordError};

/// Candidate output of the product `c01 * c12` for one admissible fiber shift `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductCandidate {
    /// Power of the monodromy applied to the second chord.
    pub k: i64,
    /// Endpoint `A^k q2` of the composite chord.
    pub target: TorusPoint,
    /// Translation vector `w01 + A^k w12`, exact.
    pub vector: [String; 2],
    /// Lattice translate of the composite from `p0` to `A^k q2`.
    pub translate: (i64, i64),
    /// `translate - class(c01) - A^k class(c12)`; vanishes when all endpoints lift to the origin.
    pub class_correction: (i64, i64),
    /// Fiber coordinates of `c01`, of `A^k c12`, and of the composite before reduction.
    pub slope_first: f64,
    pub slope_second: f64,
    pub slope_unreduced: f64,
    /// Composite fiber coordinate reduced into `[0, log_dilation)`, and the number of periods removed.
    pub slope_reduced: f64,
    pub fiber_shift: i64,
    /// The composite slope lies between the two input slopes.
    pub interpolates: bool,
}

fn matrix_power(a: &IntMatrix, k: i64) -> IntMatrix {
    if k >= 0 {
        a.pow(k as u32)
    } else {
        a.unimodular_inverse().expect("SL(2,Z)").pow((-k) as u32)
    }
}

fn int_vec(v: &[BigRational]) -> Option<(i64, i64)> {
    if !v[0].is_integer() || !v[1].is_integer() {
        return None;
    }
    Some((v[0].to_integer().to_i64()?, v[1].to_integer().to_i64()?))
}

fn unreduced_slope(e: &EigenData, sign: i64, w: &[BigRational; 2]) -> f64 {
    let wq = [e.lift(&w[0]), e.lift(&w[1])];
    let (a, b) = e.eigen_coordinates(&wq);
    let sa = &a * &QuadNum::from_int(sign, &e.radicand);
    0.5 * (&b / &sa).to_f64().ln()
}

/// Lists the composite chords `p0 -> A^k q2` obtained by concatenating `c01` with
/// `A^k c12`, one per `k` in `k1 + |orbit| Z` with `|k| <= window`, where `A^{k1}` carries
/// the source of `c12` to the target of `c01` along `orbit`.
pub fn product_candidates(
    e: &EigenData,
    c01: &Chord,
    c12: &Chord,
    orbit: &PeriodicOrbit,
    window: i64,
) -> Result<Vec<ProductCandidate>, ChordError> {
    if c01.sign != c12.sign {
        return Err(ChordError::IncompatibleEndpoints("chords carry different signs".into()));
    }
    let k1 = orbit.step_between(&c12.source, &c01.target).ok_or_else(|| {
        ChordError::IncompatibleEndpoints("middle endpoints do not lie on the given orbit".into())
    })? as i64;
    let period = orbit.points.len() as i64;
    let sign = c01.sign.factor();
    let w01 = c01.vector();
    let w12 = c12.vector();
    let z01 = unreduced_slope(e, sign, &w01);
    let z12 = unreduced_slope(e, sign, &w12);
    let nu = e.log_dilation;

    let first = k1 - period * ((k1 + window).div_euclid(period));
    let mut out = Vec::new();
    let mut k = first;
    while k <= window {
        if k >= -window {
            let ak = matrix_power(&e.matrix, k);
            let moved = ak.apply_rational(&w12);
            let w02 = [&w01[0] + &moved[0], &w01[1] + &moved[1]];
            let target = c12.target.apply(&ak);
            let p0 = c01.source.lift();
            let tl = target.lift();
            let tr = [&w02[0] - &tl[0] + &p0[0], &w02[1] - &tl[1] + &p0[1]];
            let translate = int_vec(&tr).expect("composite lands on a lattice translate");
            let t12 = ak.apply_int(&[BigInt::from(c12.translate.0), BigInt::from(c12.translate.1)]);
            let naive = (c01.translate.0 + t12[0].to_i64().unwrap_or(0), c01.translate.1 + t12[1].to_i64().unwrap_or(0));
            let z02 = unreduced_slope(e, sign, &w02);
            let z2 = z12 - k as f64 * nu;
            let (lo, hi) = if z01 <= z2 { (z01, z2) } else { (z2, z01) };
            let tol = 1e-12 * (1.0 + hi.abs());
            let shift = (z02 / nu).floor() as i64;
            out.push(ProductCandidate {
                k,
                target,
                vector: [w02[0].to_string(), w02[1].to_string()],
                translate,
                class_correction: (translate.0 - naive.0, translate.1 - naive.1),
                slope_first: z01,
                slope_second: z2,
                slope_unreduced: z02,
                slope_reduced: z02 - shift as f64 * nu,
                fiber_shift: shift,
                interpolates: z02 >= lo - tol && z02 <= hi + tol,
            });
        }
        k += period;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::{enumerate_chords, Sign};
    use crate::toral::{eigen_data, orbits_up_to_period};

    #[test]
    fn single_candidate_at_fixed_point() {
        let e = eigen_data(&IntMatrix::two_by_two(2, 1, 1, 1)).unwrap();
        let o = TorusPoint::origin();
        let orbit = &orbits_up_to_period(&e.matrix, 1).unwrap()[0];
        let set = enumerate_chords(&e, &o, &o, Sign::Plus, 4);
        let c = &set.chords[0];
        let d = &set.chords[1];
        let cands = product_candidates(&e, c, d, orbit, 0).unwrap();
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].class_correction, (0, 0));
        assert!(cands[0].interpolates);
        let cands = product_candidates(&e, c, d, orbit, 3).unwrap();
        assert_eq!(cands.iter().map(|x| x.k).collect::<Vec<_>>(), vec![-3, -2, -1, 0, 1, 2, 3]);
        assert!(cands.iter().all(|x| x.interpolates && x.class_correction == (0, 0)));
    }

    #[test]
    fn incompatible_endpoints() {
        let e = eigen_data(&IntMatrix::two_by_two(2, 1, 1, 1)).unwrap();
        let o = TorusPoint::origin();
        let orbits = orbits_up_to_period(&e.matrix, 2).unwrap();
        let plus = enumerate_chords(&e, &o, &o, Sign::Plus, 3);
        let minus = enumerate_chords(&e, &o, &o, Sign::Minus, 3);
        assert!(product_candidates(&e, &plus.chords[0], &minus.chords[0], &orbits[0], 1).is_err());
        assert!(product_candidates(&e, &plus.chords[0], &plus.chords[0], &orbits[1], 1).is_err());
    }

    #[test]
    fn period_two_orbit_steps() {
        let e = eigen_data(&IntMatrix::two_by_two(2, 1, 1, 1)).unwrap();
        let orbit = orbits_up_to_period(&e.matrix, 2).unwrap()[1].clone();
        let (p, q) = (orbit.points[0].clone(), orbit.points[1].clone());
        let c01 = enumerate_chords(&e, &TorusPoint::origin(), &q, Sign::Plus, 3).chords[0].clone();
        let c12 = enumerate_chords(&e, &p, &TorusPoint::origin(), Sign::Plus, 3).chords[0].clone();
        let cands = product_candidates(&e, &c01, &c12, &orbit, 4).unwrap();
        assert_eq!(cands.iter().map(|x| x.k).collect::<Vec<_>>(), vec![-3, -1, 1, 3]);
        assert!(cands.iter().all(|x| x.interpolates));
    }
}
