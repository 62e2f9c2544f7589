mod common;

use common::{any_member, any_space, brute_aut, brute_canon, brute_member};
use mhg_core::{
    automorphism_count, bipartite_decompose, canonical_form, is_asymmetric, validate, ClassId, MetricSpace,
};
use proptest::prelude::*;

#[test]
fn text_format_examples() {
    let s: MetricSpace = "n=3\n0 1 2\n1 0 3\n2 3 0\n".parse().unwrap();
    assert_eq!(s.to_string(), "n=3\n0 1 2\n1 0 3\n2 3 0\n");
    assert!("n=2\n0 1\n2 0\n".parse::<MetricSpace>().is_err(), "asymmetric");
    assert!("n=2\n0 4\n4 0\n".parse::<MetricSpace>().is_err(), "out of range");
    assert!("n=2\n1 1\n1 0\n".parse::<MetricSpace>().is_err(), "nonzero diagonal");
    assert!("n=2\n0 1\n".parse::<MetricSpace>().is_err(), "missing row");
    assert_eq!("n=0\n".parse::<MetricSpace>().unwrap(), MetricSpace::empty());
}

#[test]
fn membership_examples() {
    let s = MetricSpace::from_upper(3, &[1, 1, 1]).unwrap();
    let w = validate(&s, ClassId::A2).witness().expect("(1,1,1) is forbidden");
    assert_eq!(w.vertices, [0, 1, 2]);
    let s = MetricSpace::from_upper(3, &[2, 3, 3]).unwrap();
    assert!(!validate(&s, ClassId::A1).is_member());
    assert!(validate(&s, ClassId::A2).is_member());
}

#[test]
fn decomposition_examples() {
    let s = MetricSpace::uniform(3, 2).unwrap();
    let f = bipartite_decompose(&s, ClassId::A1).unwrap();
    assert_eq!((f.small.len(), f.large.len()), (0, 3));
    let s = MetricSpace::from_upper(4, &[1, 2, 1, 1, 2, 1]).unwrap();
    let f = bipartite_decompose(&s, ClassId::A1).unwrap();
    assert_eq!((f.small.len(), f.large.len()), (2, 2));
    assert!(f.large.contains(&0), "balanced split lists vertex 0 in the second part");
}

#[test]
fn membership_agrees_with_brute_force_exhaustively() {
    for n in 0..=5 {
        for upper in itertools::Itertools::multi_cartesian_product((0..n * (n.max(1) - 1) / 2).map(|_| 1u8..=3)) {
            let s = common::space_from_upper(n, &upper);
            for class in [ClassId::A1, ClassId::A2] {
                assert_eq!(validate(&s, class).is_member(), brute_member(&s, class), "{s}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_round_trip(s in any_space(0, 9)) {
        let back: MetricSpace = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn canonical_key_is_permutation_invariant(s in any_space(1, 7), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut order: Vec<usize> = (0..s.n()).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(canonical_form(&s.permuted(&order)), canonical_form(&s));
    }

    #[test]
    fn canonical_key_decides_isometry(a in any_member(ClassId::A2, 1, 6), b in any_member(ClassId::A2, 1, 6)) {
        let same = a.n() == b.n() && brute_canon(&a) == brute_canon(&b);
        prop_assert_eq!(canonical_form(&a) == canonical_form(&b), same);
        prop_assert_eq!(canonical_form(&a).to_space().n(), a.n());
        prop_assert_eq!(canonical_form(&canonical_form(&a).to_space()), canonical_form(&a));
    }

    #[test]
    fn automorphisms_match_brute_force(s in any_space(0, 6)) {
        prop_assert_eq!(automorphism_count(&s), brute_aut(&s).into());
        prop_assert_eq!(is_asymmetric(&s), brute_aut(&s) == 1);
    }

    #[test]
    fn members_recompose(s in any_member(ClassId::A2, 0, 9)) {
        prop_assert!(brute_member(&s, ClassId::A2));
        let f = bipartite_decompose(&s, ClassId::A2).unwrap();
        prop_assert!(f.small.len() <= f.large.len());
        prop_assert_eq!(f.small.len() + f.large.len(), s.n());
        prop_assert_eq!(f.to_space(), s);
    }

    #[test]
    fn a1_is_contained_in_a2(s in any_space(0, 6)) {
        if validate(&s, ClassId::A1).is_member() {
            prop_assert!(validate(&s, ClassId::A2).is_member());
        }
    }

    #[test]
    fn a1_generator_stays_in_a1(s in any_member(ClassId::A1, 0, 9)) {
        prop_assert!(brute_member(&s, ClassId::A1));
        let f = bipartite_decompose(&s, ClassId::A1).unwrap();
        prop_assert!(f.cross.is_partial_matching());
    }

    #[test]
    fn swapping_ones_and_threes_preserves_a2(s in any_member(ClassId::A2, 0, 9)) {
        let t = s.swap_ones_threes();
        prop_assert!(validate(&t, ClassId::A2).is_member());
        prop_assert_eq!(automorphism_count(&t), automorphism_count(&s));
        prop_assert_eq!(t.swap_ones_threes(), s);
    }
}
