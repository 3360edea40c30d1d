use std::cmp::Ordering;

use anosovlab::chords::{compare_slopes, count_chords, enumerate_chords, enumerate_rational_fibers, fibers_pairwise_distinct, Cone, Sign};
use anosovlab::exact::IntMatrix;
use anosovlab::oracle::ConeOracle;
use anosovlab::toral::{eigen_data, TorusPoint};
use num_integer::Integer;
use proptest::prelude::*;

fn matrices() -> Vec<IntMatrix> {
    vec![IntMatrix::two_by_two(2, 1, 1, 1), IntMatrix::two_by_two(3, 1, 2, 1), IntMatrix::two_by_two(5, 2, 2, 1)]
}

fn sign() -> impl Strategy<Value = Sign> {
    prop::sample::select(Sign::both().to_vec())
}

proptest! {
    #[test]
    fn membership_is_precision_independent(i in 0usize..3, s in sign(), m in -150i64..=150, n in -150i64..=150) {
        prop_assume!(m != 0 || n != 0);
        let a = &matrices()[i];
        let cone = Cone::new(&eigen_data(a).unwrap(), s);
        let exact = cone.contains_int(m, n);
        prop_assert_eq!(cone.contains_f64([m as f64, n as f64]), exact);
        prop_assert_eq!(cone.contains_fixed200([m, n]), exact);
        prop_assert_eq!(ConeOracle::new(a, s).contains(m, n), exact);
    }

    #[test]
    fn filtration_is_monotone(i in 0usize..3, s in sign(), k in 1u64..25, px in 0i64..5, py in 0i64..5) {
        let e = eigen_data(&matrices()[i]).unwrap();
        let p = TorusPoint::origin();
        let q = TorusPoint::from_fractions(px, 5, py, 5);
        let set = enumerate_chords(&e, &p, &q, s, k);
        prop_assert!(set.counts_by_k.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(&set.counts_by_k, &count_chords(&e, &p, &q, s, k));
        let smaller = enumerate_chords(&e, &p, &q, s, k - 1);
        prop_assert_eq!(&set.chords[..smaller.chords.len()], &smaller.chords[..]);
        prop_assert!(set.chords.iter().all(|c| c.box_length <= k && c.slope >= 0.0 && c.slope < e.log_dilation));
    }

    #[test]
    fn slope_is_injective_on_primitive_vectors(i in 0usize..3, s in sign(), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let e = eigen_data(&matrices()[i]).unwrap();
        let fibers = enumerate_rational_fibers(&e, s, 12);
        let (u, w) = (x.get(&fibers), y.get(&fibers));
        prop_assume!((u.m, u.n) != (w.m, w.n));
        prop_assert_ne!(compare_slopes(&e, s, (u.m, u.n), (w.m, w.n)), Ordering::Equal);
        prop_assert!(u.m.gcd(&u.n) == 1 && Cone::new(&e, s).contains_int(u.m, u.n));
    }
}

#[test]
fn fibers_are_distinct_and_counted_by_the_oracle() {
    for a in matrices() {
        let e = eigen_data(&a).unwrap();
        for s in Sign::both() {
            let fibers = enumerate_rational_fibers(&e, s, 15);
            assert!(fibers_pairwise_distinct(&e, s, &fibers));
            assert_eq!(fibers.len() as u64, ConeOracle::new(&a, s).primitive_count(15));
            assert!(fibers.windows(2).all(|f| compare_slopes(&e, s, (f[0].m, f[0].n), (f[1].m, f[1].n)) == Ordering::Less));
        }
    }
}

#[test]
fn growth_is_quadratic_for_every_endpoint_pair() {
    let endpoints = [
        (TorusPoint::origin(), TorusPoint::origin()),
        (TorusPoint::origin(), TorusPoint::from_fractions(1, 2, 1, 3)),
        (TorusPoint::from_fractions(1, 5, 2, 5), TorusPoint::from_fractions(3, 7, 1, 7)),
        (TorusPoint::from_fractions(2, 3, 0, 1), TorusPoint::from_fractions(1, 4, 3, 4)),
    ];
    for a in matrices() {
        let e = eigen_data(&a).unwrap();
        for (p, q) in &endpoints {
            for s in Sign::both() {
                let c = count_chords(&e, p, q, s, 240);
                let (r1, r2) = (c[120] as f64 / 120f64.powi(2), c[240] as f64 / 240f64.powi(2));
                assert!((r2 / r1 - 1.0).abs() < 0.05, "{a:?} {p} {q} {s:?}: {r1} vs {r2}");
            }
        }
    }
}
