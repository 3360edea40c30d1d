use anosovlab::exact::{cokernel, smith_normal_form, Fixed, IntMatrix, QuadNum, Real};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    IntMatrix::from_i64(rows, cols, &entries[..rows * cols]).unwrap()
}

/// Unimodular matrix as a product of elementary moves `(i, j, c)`: row i += c * row j,
/// with a sign flip on row 0 when `flip`.
fn unimodular(n: usize, moves: &[(usize, usize, i64)], flip: bool) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for &(i, j, c) in moves {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = IntMatrix::identity(n);
        e.set(i, j, c.into());
        u = e.checked_mul(&u).unwrap();
    }
    if flip {
        let mut e = IntMatrix::identity(n);
        e.set(0, 0, (-1).into());
        u = e.checked_mul(&u).unwrap();
    }
    u
}

proptest! {
    #[test]
    fn smith_form_reconstructs(rows in 1usize..6, cols in 1usize..6, e in prop::collection::vec(-20i64..21, 25)) {
        let m = matrix(rows, cols, &e);
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.u.checked_mul(&m).unwrap().checked_mul(&f.v).unwrap(), f.s.clone());
        prop_assert!(f.u.det().abs().is_one() && f.v.det().abs().is_one());
        let d = f.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn cokernel_is_invariant_under_unimodular_change(
        n in 1usize..5,
        e in prop::collection::vec(-9i64..10, 16),
        left in prop::collection::vec((0usize..4, 0usize..4, -3i64..4), 0..8),
        right in prop::collection::vec((0usize..4, 0usize..4, -3i64..4), 0..8),
        flips in (any::<bool>(), any::<bool>()),
    ) {
        let m = matrix(n, n, &e);
        let p = unimodular(n, &left, flips.0);
        let q = unimodular(n, &right, flips.1);
        let moved = p.checked_mul(&m).unwrap().checked_mul(&q).unwrap();
        prop_assert_eq!(cokernel(&moved), cokernel(&m));
    }

    #[test]
    fn quadratic_sign_matches_fixed_point_shadow(
        a in -100_000i64..100_000, den in 1i64..1000, b in -1000i64..1000, d in prop::sample::select(vec![2i64, 3, 5, 13, 17, 21, 101]),
    ) {
        let x = QuadNum::new(BigRational::new(a.into(), den.into()), BigRational::from_integer(b.into()), d.into()).unwrap();
        type F = Fixed<200>;
        let shadow = F::from_i64(a) / F::from_i64(den) + F::from_i64(b) * F::from_i64(d).sqrt();
        let s = shadow.signum();
        prop_assert_eq!(x.sign(), s);
    }
}

#[test]
fn near_cancellation_is_decided_exactly() {
    // 19601 - 13860 sqrt 2 = (3 - 2 sqrt 2)^6 > 0, about 2.6e-5.
    let x = QuadNum::new(BigRational::from_integer(19601.into()), BigRational::from_integer((-13860).into()), BigInt::from(2)).unwrap();
    assert_eq!(x.sign(), 1);
    assert_eq!(x.conj().sign(), 1);
    assert_eq!((-x).sign(), -1);
}
