use std::f64::consts::PI;

use anosovlab::hyperbolic::{distance, intersect, orthogeodesic, triangle_enumerate, Geodesic, Mobius};
use anosovlab::oracle::{orthogeodesic_length_by_search, triangle_count_by_sampling};
use num_complex::Complex64;
use proptest::prelude::*;

fn mobius() -> impl Strategy<Value = Mobius> {
    (0.3f64..3.0, -3.0f64..3.0, -2.0f64..2.0).prop_map(|(a, b, c)| Mobius::new(a, b, c, (1.0 + b * c) / a).unwrap())
}

fn point() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, 0.1f64..4.0).prop_map(|(x, y)| Complex64::new(x, y))
}

fn geodesic() -> impl Strategy<Value = Geodesic> {
    (-4.0f64..4.0, -4.0f64..4.0).prop_filter_map("distinct endpoints", |(a, b)| ((a - b).abs() > 0.05).then(|| Geodesic::finite(a, b).unwrap()))
}

proptest! {
    #[test]
    fn mobius_maps_are_isometries(m in mobius(), z in point(), w in point()) {
        let d = distance(z, w);
        prop_assert!((distance(m.apply(z), m.apply(w)) - d).abs() < 1e-10 * d.max(1.0));
    }

    #[test]
    fn orthogeodesic_formula_and_search_agree(a in 0.01f64..10.0, gap in 0.01f64..10.0, m in mobius()) {
        let b = a + gap;
        let (g1, g2) = (Geodesic::imaginary_axis(), Geodesic::finite(a, b).unwrap());
        let o = orthogeodesic(&g1, &g2).unwrap();
        let c = (b + a) / (b - a);
        prop_assert!((o.length.cosh() - c).abs() < 1e-9 * c);
        prop_assert!((o.length - orthogeodesic_length_by_search(&g1, &g2)).abs() < 1e-9);
        // the feet realise the length and the common perpendicular is invariant under isometries
        prop_assert!((distance(o.foot_first, o.foot_second) - o.length).abs() < 1e-9 * o.length.max(1.0));
        let moved = orthogeodesic(&g1.image(&m), &g2.image(&m)).unwrap();
        prop_assert!((moved.length - o.length).abs() < 1e-9 * o.length.max(1.0));
    }

    #[test]
    fn triangle_counts_are_conjugation_invariant(r in 0.3f64..3.0, s in 0.5f64..2.0, g2 in geodesic(), l1 in 0.3f64..1.5, m in mobius()) {
        let g0 = Geodesic::finite(-r * s, r).unwrap();
        let g1 = Geodesic::imaginary_axis();
        let Ok(base) = triangle_enumerate(&g0, &g1, &g2, l1, 5) else { return Ok(()) };
        let Ok(moved) = triangle_enumerate(&g0.image(&m), &g1.image(&m), &g2.image(&m), l1, 5) else { return Ok(()) };
        prop_assert_eq!(base.count, moved.count);
        prop_assert_eq!(base.count, triangle_count_by_sampling(&g0, &g1, &g2, l1, 5));
        for p in &base.patterns {
            prop_assert!(p.area > 0.0);
            prop_assert!((p.area - (PI - p.angles.iter().sum::<f64>())).abs() < 1e-12);
            prop_assert!(p.angles.iter().all(|&t| t > 0.0 && t < PI));
        }
    }

    #[test]
    fn intersection_angle_is_preserved(g in geodesic(), h in geodesic(), m in mobius()) {
        prop_assume!(!g.same_as(&h));
        let before = intersect(&g, &h).unwrap();
        let after = intersect(&g.image(&m), &h.image(&m)).unwrap();
        prop_assert_eq!(before.is_some(), after.is_some());
        if let (Some(x), Some(y)) = (before, after) {
            prop_assert!((x.angle - y.angle).abs() < 1e-8);
            prop_assert!((m.apply(x.point) - y.point).norm() < 1e-8 * y.point.norm().max(1.0));
        }
    }
}
