use anosovlab::chords::{enumerate_rational_fibers, Sign};
use anosovlab::exact::IntMatrix;
use anosovlab::homology::{circle_bundle_cohomology, hh_c_ranks, hochschild_dual_numbers, mapping_torus_cohomology, sh_mcduff, sh_torus_bundle};
use anosovlab::oracle::{cellular_mapping_torus_cohomology, ConeOracle};
use anosovlab::toral::eigen_data;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

/// Hyperbolic matrices `[[p, q], [r, s]]` with `ps - qr = 1`, from a random first row.
fn hyperbolic_matrix() -> impl Strategy<Value = IntMatrix> {
    (1i64..12, 1i64..12, 0i64..12).prop_filter_map("unimodular and hyperbolic", |(p, q, s)| {
        // r = (ps - 1) / q must be integral
        let num = p * s - 1;
        (num % q == 0 && p + s > 2).then(|| IntMatrix::two_by_two(p, q, num / q, s))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mapping_torus_duality_and_torsion(a in hyperbolic_matrix()) {
        let h = mapping_torus_cohomology(&a).unwrap();
        let b: Vec<u64> = (0..=3).map(|k| h.free_rank(k)).collect();
        prop_assert_eq!(b[0], b[3]);
        prop_assert_eq!(b[1], b[2]);
        prop_assert_eq!(h.euler_characteristic(), 0);
        prop_assert_eq!(h.get(2).torsion_order(), (a.trace() - BigInt::from(2)).abs());
        prop_assert_eq!(&cellular_mapping_torus_cohomology(&a), &h);
    }

    #[test]
    fn hochschild_support_and_copies(n in 1u32..=50, orbits in 0u64..6) {
        let t = hochschild_dual_numbers(n).unwrap();
        prop_assert!(t.support_total_degrees().iter().all(|d| *d == 0 || *d == 1));
        prop_assert_eq!(hh_c_ranks(orbits, n).unwrap(), t.copies(orbits));
    }

    #[test]
    fn side_blocks_count_fibers(a in hyperbolic_matrix(), max_norm in 1u64..12) {
        let sh = sh_torus_bundle(&a, max_norm).unwrap();
        let e = eigen_data(&a).unwrap();
        for (block, sign) in [(&sh.minus, Sign::Minus), (&sh.plus, Sign::Plus)] {
            prop_assert_eq!(block.sign, sign);
            let fibers = enumerate_rational_fibers(&e, sign, max_norm).len() as u64;
            prop_assert_eq!(block.orbit_count, fibers);
            prop_assert_eq!(block.orbit_count, ConeOracle::new(&a, sign).primitive_count(max_norm));
            prop_assert_eq!(block.ranks.free_rank(0), fibers);
            prop_assert_eq!(block.ranks.free_rank(1), fibers);
        }
        prop_assert_eq!(&sh.middle, &mapping_torus_cohomology(&a).unwrap());
    }
}

#[test]
fn unit_cotangent_bundles() {
    for g in 2..6u32 {
        let h = circle_bundle_cohomology(g).unwrap();
        let two_g = 2 * g as u64;
        assert_eq!((0..=3).map(|k| h.free_rank(k)).collect::<Vec<_>>(), vec![1, two_g, two_g, 1]);
        assert_eq!(h.get(2).torsion_order().to_u64(), Some(2 * g as u64 - 2));
        let mcduff = sh_mcduff(g, 3, &["a1".to_string(), "b1".to_string()]).unwrap();
        assert_eq!(mcduff.negative_total, h.copies(3));
        assert_eq!(mcduff.positive.orbit_count, 2);
    }
    assert!(circle_bundle_cohomology(1).is_err());
}
