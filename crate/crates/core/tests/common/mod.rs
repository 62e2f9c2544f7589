//! Brute-force oracles shared by the integration tests. They use none of
//! the library's algorithms: only the matrix accessors of `MetricSpace`.

#![allow(dead_code)]

use itertools::Itertools;
use mhg_core::{ClassId, MetricSpace};
use proptest::prelude::*;

/// Sorted side lengths of the allowed triangles.
pub fn allowed_triangles(class: ClassId) -> &'static [[u8; 3]] {
    match class {
        ClassId::A1 => &[[1, 1, 2], [1, 2, 3], [2, 2, 2]],
        ClassId::A2 => &[[1, 1, 2], [1, 2, 3], [2, 2, 2], [2, 3, 3]],
    }
}

pub fn brute_member(s: &MetricSpace, class: ClassId) -> bool {
    let allowed = allowed_triangles(class);
    (0..s.n()).tuple_combinations().all(|(a, b, c)| {
        let mut t = [s.get(a, b), s.get(a, c), s.get(b, c)];
        t.sort_unstable();
        allowed.contains(&t)
    })
}

pub fn pairs_of(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

pub fn space_from_upper(n: usize, upper: &[u8]) -> MetricSpace {
    let idx = pairs_of(n);
    MetricSpace::from_fn(n, |i, j| {
        let (a, b) = (i.min(j), i.max(j));
        upper[idx.iter().position(|&p| p == (a, b)).unwrap()]
    })
    .unwrap()
}

/// Every distance matrix on `n` points with entries in {1,2,3}, filtered
/// by brute-force membership.
pub fn brute_labeled(n: usize, class: ClassId) -> Vec<MetricSpace> {
    let m = n * (n.saturating_sub(1)) / 2;
    (0..m)
        .map(|_| 1u8..=3)
        .multi_cartesian_product()
        .map(|upper| space_from_upper(n, &upper))
        .filter(|s| brute_member(s, class))
        .collect()
}

fn relabel(s: &MetricSpace, perm: &[usize]) -> Vec<u8> {
    let n = s.n();
    (0..n).tuple_combinations().map(|(i, j)| s.get(perm[i], perm[j])).collect()
}

/// Least upper-triangle word over all relabelings.
pub fn brute_canon(s: &MetricSpace) -> Vec<u8> {
    (0..s.n()).permutations(s.n()).map(|p| relabel(s, &p)).min().unwrap_or_default()
}

/// Number of permutations preserving every distance.
pub fn brute_aut(s: &MetricSpace) -> u64 {
    let id = relabel(s, &(0..s.n()).collect::<Vec<_>>());
    (0..s.n()).permutations(s.n()).filter(|p| relabel(s, p) == id).count() as u64
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn degree(s: &MetricSpace, v: usize, d: u8) -> usize {
    (0..s.n()).filter(|&u| u != v && s.get(u, v) == d).count()
}

fn three_free(s: &MetricSpace) -> Vec<usize> {
    (0..s.n()).filter(|&v| degree(s, v, 3) == 0).collect()
}

/// Reference semantics of the sentence families, by exhaustive search.
pub mod mini {
    use super::*;

    pub fn pairs(s: &MetricSpace, p: usize) -> bool {
        let n = s.n();
        (0..n).permutations(p).any(|us| {
            (0..n).permutations(p).any(|vs| us.iter().zip(&vs).all(|(&u, &v)| u != v && s.get(u, v) == 3))
        })
    }

    pub fn ones_unlabeled(s: &MetricSpace, p: usize) -> bool {
        three_free(s).len() >= 2 * p
    }

    pub fn ones_labeled(s: &MetricSpace, p: usize) -> bool {
        three_free(s).len() >= p
    }

    pub fn gloss(s: &MetricSpace, p: usize) -> bool {
        let free = three_free(s);
        free.iter().copied().combinations(p).any(|us| {
            free.iter().copied().filter(|v| !us.contains(v)).combinations(p).any(|vs| {
                us.iter().all(|&u| vs.iter().all(|&v| s.get(u, v) != 2))
            })
        })
    }

    pub fn min_degree(s: &MetricSpace, d: u8, p: usize) -> bool {
        (0..s.n()).all(|v| degree(s, v, d) >= p)
    }

    pub fn witness(s: &MetricSpace) -> bool {
        min_degree(s, 3, 1)
    }

    fn two_clique(s: &MetricSpace, set: &[usize]) -> bool {
        set.iter().tuple_combinations().all(|(&a, &b)| s.get(a, b) == 2)
    }

    fn no_cross_two(s: &MetricSpace, a: &[usize], b: &[usize]) -> bool {
        a.iter().all(|&x| b.iter().all(|&y| x != y && s.get(x, y) != 2))
    }

    pub fn extension(s: &MetricSpace, q: usize, p: usize, r: usize) -> bool {
        let n = s.n();
        for xs in (0..n).combinations(q).filter(|x| two_clique(s, x)) {
            for ys in (0..n).combinations(p).filter(|y| two_clique(s, y) && no_cross_two(s, &xs, y)) {
                for zs in (0..n)
                    .combinations(r)
                    .filter(|z| two_clique(s, z) && no_cross_two(s, &xs, z) && no_cross_two(s, &ys, z))
                {
                    let ok = (0..n).any(|w| {
                        xs.iter().all(|&x| w != x && s.get(w, x) == 1)
                            && ys.iter().all(|&y| w != y && s.get(w, y) == 2)
                            && zs.iter().all(|&z| w != z && s.get(w, z) == 3)
                    });
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Arbitrary distance matrix on `lo..=hi` points with entries in {1,2,3}.
pub fn any_space(lo: usize, hi: usize) -> impl Strategy<Value = MetricSpace> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(1u8..=3, n * n.saturating_sub(1) / 2).prop_map(move |u| space_from_upper(n, &u))
    })
}

/// Arbitrary member of `class` on `lo..=hi` points, built from a random
/// bipartition and cross pattern.
pub fn any_member(class: ClassId, lo: usize, hi: usize) -> impl Strategy<Value = MetricSpace> {
    (lo..=hi)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n), proptest::collection::vec(any::<bool>(), n * n)))
        .prop_map(move |(n, side, coins)| {
            let cross = |i: usize, j: usize| -> u8 { if coins[i * n + j] { 3 } else { 1 } };
            let mut d = vec![0u8; n * n];
            // For A1 keep only a matching of 3s: the first 3 per row and column.
            let mut row_used = vec![false; n];
            let mut col_used = vec![false; n];
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    d[i * n + j] = if side[i] == side[j] {
                        2
                    } else {
                        let (a, b) = if side[i] { (i, j) } else { (j, i) };
                        let c = cross(a, b);
                        if class == ClassId::A1 && c == 3 {
                            if i < j && !row_used[a] && !col_used[b] {
                                row_used[a] = true;
                                col_used[b] = true;
                                3
                            } else if i > j {
                                d[j * n + i]
                            } else {
                                1
                            }
                        } else {
                            c
                        }
                    };
                }
            }
            MetricSpace::from_matrix(n, d).unwrap()
        })
}
