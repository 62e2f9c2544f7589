mod common;

use std::collections::BTreeMap;

use mhg_core::enumeration::{
    a1_automorphism_order, balanced_paper_term, count_labeled_exact, count_labeled_paper, count_report,
    count_unlabeled_exact, count_unlabeled_paper, enumerate_labeled_oracle, enumerate_labeled_oracle_with,
    enumerate_labeled_structured, enumerate_unlabeled, enumerate_unlabeled_with, factorial, EnumError, Labeling,
    Methods,
};
use mhg_core::{automorphism_count, canonical_form, ClassId, Strategy};
use num_bigint::BigUint;

fn big(x: u64) -> BigUint {
    x.into()
}

/// Labeled counts from the brute-force sweep in the shared test oracles,
/// frozen here for n = 0..=6.
const A1_LABELED: [u64; 7] = [1, 1, 3, 10, 38, 156, 692];
const A2_LABELED: [u64; 7] = [1, 1, 3, 13, 81, 721, 9_153];

/// Isometry classes by brute-force canonical forms, n = 0..=6.
const A1_UNLABELED: [u64; 7] = [1, 1, 3, 3, 6, 6, 10];
const A2_UNLABELED: [u64; 7] = [1, 1, 3, 4, 11, 19, 55];

fn brute_multiset(spaces: &[mhg_core::MetricSpace]) -> BTreeMap<Vec<u8>, usize> {
    let mut m = BTreeMap::new();
    for s in spaces {
        *m.entry(common::brute_canon(s)).or_insert(0) += 1;
    }
    m
}

#[test]
fn brute_force_sweep_matches_frozen_counts() {
    for n in 0..=6 {
        assert_eq!(common::brute_labeled(n, ClassId::A1).len() as u64, A1_LABELED[n], "A1 n={n}");
        assert_eq!(common::brute_labeled(n, ClassId::A2).len() as u64, A2_LABELED[n], "A2 n={n}");
        let a1 = brute_multiset(&common::brute_labeled(n, ClassId::A1));
        let a2 = brute_multiset(&common::brute_labeled(n, ClassId::A2));
        assert_eq!(a1.len() as u64, A1_UNLABELED[n]);
        assert_eq!(a2.len() as u64, A2_UNLABELED[n]);
    }
}

#[test]
fn exact_counters_match_frozen_counts() {
    for n in 0..=6 {
        assert_eq!(count_labeled_exact(n, ClassId::A1), big(A1_LABELED[n]));
        assert_eq!(count_labeled_exact(n, ClassId::A2), big(A2_LABELED[n]));
        assert_eq!(count_unlabeled_exact(n, ClassId::A1).unwrap(), big(A1_UNLABELED[n]));
        assert_eq!(count_unlabeled_exact(n, ClassId::A2).unwrap(), big(A2_UNLABELED[n]));
    }
}

#[test]
fn oracle_equals_brute_force_sweep() {
    for class in [ClassId::A1, ClassId::A2] {
        for n in 0..=5 {
            let mut ours = enumerate_labeled_oracle(n, class, false).unwrap();
            let mut theirs = common::brute_labeled(n, class);
            ours.sort_by(|a, b| a.as_matrix().cmp(b.as_matrix()));
            theirs.sort_by(|a, b| a.as_matrix().cmp(b.as_matrix()));
            assert_eq!(ours, theirs, "{class} n={n}");
        }
    }
}

#[test]
fn structured_equals_oracle_as_multisets() {
    for class in [ClassId::A1, ClassId::A2] {
        for n in 0..=6 {
            let mut a: Vec<_> = enumerate_labeled_structured(n, class).map(|s| canonical_form(&s)).collect();
            let mut b: Vec<_> = enumerate_labeled_oracle(n, class, false).unwrap().iter().map(canonical_form).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{class} n={n}");
        }
    }
}

#[test]
fn structured_output_is_duplicate_free_members() {
    for class in [ClassId::A1, ClassId::A2] {
        let all: Vec<_> = enumerate_labeled_structured(6, class).collect();
        let distinct: std::collections::BTreeSet<_> = all.iter().map(|s| s.as_matrix().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.iter().all(|s| common::brute_member(s, class)));
    }
}

#[test]
fn orbit_counting_identity() {
    for class in [ClassId::A1, ClassId::A2] {
        for n in 0..=7 {
            let total: BigUint = enumerate_unlabeled(n, class)
                .unwrap()
                .iter()
                .map(|d| factorial(n) / &d.aut_order)
                .sum();
            assert_eq!(total, count_labeled_exact(n, class), "{class} n={n}");
        }
    }
}

#[test]
fn descriptors_carry_true_group_orders() {
    for class in [ClassId::A1, ClassId::A2] {
        for n in 0..=6 {
            for d in enumerate_unlabeled(n, class).unwrap() {
                assert_eq!(d.aut_order, big(common::brute_aut(&d.representative)));
                assert_eq!(d.aut_order, automorphism_count(&d.representative));
                if class == ClassId::A1 {
                    let j = d.j.unwrap();
                    assert_eq!(a1_automorphism_order(n, d.k, j), d.aut_order, "n={n} k={} j={j}", d.k);
                }
            }
        }
    }
}

#[test]
fn unlabeled_counts_agree_across_methods() {
    for class in [ClassId::A1, ClassId::A2] {
        for n in 0..=7 {
            let listed = enumerate_unlabeled(n, class).unwrap().len();
            assert_eq!(big(listed as u64), count_unlabeled_exact(n, class).unwrap(), "{class} n={n}");
        }
    }
    // Burnside well past the listing limit.
    assert!(count_unlabeled_exact(40, ClassId::A2).is_ok());
    assert!(matches!(count_unlabeled_exact(41, ClassId::A2), Err(EnumError::Capacity { .. })));
}

#[test]
fn paper_formula_values() {
    assert_eq!(count_unlabeled_paper(5, ClassId::A1), big(6));
    assert_eq!(count_unlabeled_paper(5, ClassId::A2), big(16));
    assert_eq!(count_labeled_paper(4, ClassId::A1), big(59));
    assert_eq!(count_labeled_paper(4, ClassId::A2), big(129));
    assert_eq!(balanced_paper_term(4, ClassId::A1), big(42));
}

#[test]
fn paper_labeled_sum_parity() {
    for class in [ClassId::A1, ClassId::A2] {
        for n in 0..=12 {
            let paper = count_labeled_paper(n, class);
            let exact = count_labeled_exact(n, class);
            if n % 2 == 1 {
                assert_eq!(paper, exact, "{class} n={n}");
            } else if n > 0 {
                assert_eq!(&paper - &exact, balanced_paper_term(n, class) / 2u32, "{class} n={n}");
            }
        }
    }
}

#[test]
fn a1_unlabeled_formula_agrees_with_exact() {
    for n in 0..=30 {
        assert_eq!(count_unlabeled_paper(n, ClassId::A1), count_unlabeled_exact(n, ClassId::A1).unwrap());
    }
}

#[test]
fn oracle_guard() {
    assert_eq!(enumerate_labeled_oracle(7, ClassId::A1, false).unwrap_err(), EnumError::OracleGuard { n: 7, max: 6 });
    assert!(enumerate_labeled_oracle(10, ClassId::A1, true).is_err());
}

#[test]
fn strategies_agree() {
    for class in [ClassId::A1, ClassId::A2] {
        let a = enumerate_labeled_oracle_with(5, class, false, Strategy::Sequential).unwrap();
        let b = enumerate_labeled_oracle_with(5, class, false, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
        let a = enumerate_unlabeled_with(7, class, Strategy::Sequential).unwrap();
        let b = enumerate_unlabeled_with(7, class, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn report_rows() {
    let r = count_report(3, ClassId::A2, Labeling::Labeled, Methods::ALL, false, Strategy::default()).unwrap();
    assert_eq!((r.paper, r.exact, r.oracle), (Some(big(13)), Some(big(13)), Some(big(13))));
    let r = count_report(4, ClassId::A1, Labeling::Labeled, Methods::ALL, false, Strategy::default()).unwrap();
    assert!(r.has_paper_discrepancy() && !r.has_oracle_mismatch());
}
