use anosovlab::exact::Fixed;
use anosovlab::oracle::{intersection_by_folding, is_identity_by_matrices};
use anosovlab::surface::{free_reduce, geodesic_length, intersection_number, FuchsianRep, SurfacePresentation, Word};
use proptest::prelude::*;

const GENUS: u32 = 2;

fn letter() -> impl Strategy<Value = i8> {
    (1i8..=4, any::<bool>()).prop_map(|(x, inv)| if inv { -x } else { x })
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(Word)
}

/// Product of conjugates of the relator or its inverse.
fn trivial_word() -> impl Strategy<Value = Word> {
    prop::collection::vec((word(5), any::<bool>(), 0usize..8), 1..4).prop_map(|parts| {
        let p = SurfacePresentation::new(GENUS).unwrap();
        let w = parts.iter().fold(Word::empty(), |acc, (u, inv, rot)| {
            let r = if *inv { p.relator().inverse() } else { p.relator().clone() }.rotate(*rot);
            acc.concat(&u.concat(&r).concat(&u.inverse()))
        });
        free_reduce(&w)
    })
}

fn nontrivial(p: &SurfacePresentation, w: &Word) -> bool {
    !p.cyclic_dehn_reduce(w).is_empty()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dehn_agrees_with_matrices_on_random_words(w in word(40)) {
        let p = SurfacePresentation::new(GENUS).unwrap();
        let rep = FuchsianRep::<Fixed<512>>::regular(GENUS).unwrap();
        prop_assert_eq!(p.is_trivial(&w), is_identity_by_matrices(&rep, &w, 1e-6));
    }

    #[test]
    fn relator_products_are_trivial(w in trivial_word(), u in word(6)) {
        let p = SurfacePresentation::new(GENUS).unwrap();
        let rep = FuchsianRep::<Fixed<512>>::regular(GENUS).unwrap();
        prop_assert!(p.is_trivial(&w));
        prop_assert!(is_identity_by_matrices(&rep, &w, 1e-6));
        // inserting a trivial word never changes the element
        let x = u.concat(&w).concat(&u);
        prop_assert_eq!(p.is_trivial(&x), p.is_trivial(&u.concat(&u)));
    }

    #[test]
    fn conjugates_share_the_class_key(w in word(7), conjugators in prop::collection::vec(word(6), 20)) {
        let p = SurfacePresentation::new(GENUS).unwrap();
        let key = p.class_key(&w);
        for u in &conjugators {
            prop_assert_eq!(&p.class_key(&u.concat(&w).concat(&u.inverse())), &key);
        }
        prop_assert_eq!(&p.class_key(&w.rotate(1)), &key);
    }

    #[test]
    fn length_is_a_class_function(w in word(8), u in word(3)) {
        let p = SurfacePresentation::new(GENUS).unwrap();
        prop_assume!(nontrivial(&p, &w));
        let rep = FuchsianRep::<f64>::regular(GENUS).unwrap();
        let a = geodesic_length(&w, &rep).unwrap();
        let b = geodesic_length(&u.concat(&w).concat(&u.inverse()), &rep).unwrap();
        let c = geodesic_length(&w.inverse(), &rep).unwrap();
        prop_assert!((a - b).abs() < 1e-10 && (a - c).abs() < 1e-10, "{} {} {}", a, b, c);
    }
}

/// Primitive classes used for the intersection checks.
const CURVES: [&str; 10] = ["a1", "b1", "a2", "b2", "a1b1", "a1B1", "a1a2", "a1b2", "b1a2", "a1a1b1"];

fn parse(s: &str) -> Word {
    Word::parse(s, GENUS).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn intersection_number_is_symmetric(i in 0usize..CURVES.len(), j in 0usize..CURVES.len()) {
        let rep = FuchsianRep::<f64>::regular(GENUS).unwrap();
        let (g, b) = (parse(CURVES[i]), parse(CURVES[j]));
        prop_assert_eq!(intersection_number(&g, &b, &rep).unwrap(), intersection_number(&b, &g, &rep).unwrap());
        prop_assert_eq!(intersection_number(&g, &b, &rep).unwrap(), intersection_number(&g.inverse(), &b, &rep).unwrap());
    }
}

#[test]
fn intersections_match_the_folding_oracle() {
    let rep = FuchsianRep::<f64>::regular(GENUS).unwrap();
    let pairs = [("a1", "b1"), ("a1", "a2"), ("a1B1", "a1"), ("a1a2", "b1"), ("a1b1a2", "b2"), ("a1b2", "b1a2"), ("a1a1B2", "b1"), ("a1b1A1b1", "a1b1A1b1")];
    for (g, b) in pairs {
        let (g, b) = (parse(g), parse(b));
        assert_eq!(intersection_number(&g, &b, &rep).unwrap(), intersection_by_folding(&g, &b, &rep, 3000), "{g} {b}");
    }
}
