//! Direct evaluation of the sentence families on a single space.

use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use super::SentenceId;
use crate::space::MetricSpace;

/// Per-distance neighbourhoods: `by_dist[d - 1][v]` holds the points at
/// distance `d` from `v`. A point is never its own neighbour.
struct Neighborhoods {
    by_dist: [Vec<FixedBitSet>; 3],
    not_two: Vec<FixedBitSet>,
}

impl Neighborhoods {
    fn new(space: &MetricSpace) -> Self {
        let n = space.n();
        let mut by_dist: [Vec<FixedBitSet>; 3] = std::array::from_fn(|_| vec![FixedBitSet::with_capacity(n); n]);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    by_dist[space.get(u, v) as usize - 1][u].insert(v);
                }
            }
        }
        let not_two = (0..n)
            .map(|v| {
                let mut s = by_dist[0][v].clone();
                s.union_with(&by_dist[2][v]);
                s
            })
            .collect();
        Neighborhoods { by_dist, not_two }
    }

    fn at(&self, d: u8, v: usize) -> &FixedBitSet {
        &self.by_dist[d as usize - 1][v]
    }
}

fn full(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub fn eval_sentence(space: &MetricSpace, s: SentenceId) -> bool {
    let n = space.n();
    match s {
        SentenceId::A1Distances | SentenceId::A2Distances => {
            (0..n).tuple_combinations().all(|(u, v)| (1..=3).contains(&space.get(u, v)))
        }
        SentenceId::A1NoTwoThrees => (0..n).all(|u| space.degree(u, 3) < 2),
        SentenceId::A1Parts | SentenceId::A2Parts => (0..n).tuple_combinations().all(|(a, b, c)| {
            let twos = [space.get(a, b), space.get(a, c), space.get(b, c)].iter().filter(|&&d| d == 2).count();
            twos == 3 || twos == 1
        }),
        SentenceId::A1Pairs(p) => three_arc_matching(space) >= p,
        SentenceId::A1OnesUnlabeled(p) => three_free(space).count_ones(..) >= 2 * p,
        SentenceId::A1OnesUnlabeledGloss(p) => ones_on_both_sides(space, p),
        SentenceId::A1OnesLabeled(p) => three_free(space).count_ones(..) >= p,
        SentenceId::A2MinOnes(p) => (0..n).all(|u| space.degree(u, 1) >= p),
        SentenceId::A2MinThrees(p) => (0..n).all(|u| space.degree(u, 3) >= p),
        SentenceId::Extension { q, p, r } => eval_extension_axiom(space, q, p, r),
        SentenceId::DivergenceWitness => check_divergence_witness(space),
    }
}

/// `∀u ∃v d(u, v) = 3`.
pub fn check_divergence_witness(space: &MetricSpace) -> bool {
    (0..space.n()).all(|u| space.degree(u, 3) > 0)
}

fn three_free(space: &MetricSpace) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(space.n());
    s.extend((0..space.n()).filter(|&u| space.degree(u, 3) == 0));
    s
}

/// Largest set of 3-arcs `(u_i, v_i)` with distinct tails and distinct
/// heads: a maximum matching between two copies of the point set.
fn three_arc_matching(space: &MetricSpace) -> usize {
    let n = space.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|u| (0..n).filter(|&v| u != v && space.get(u, v) == 3).collect()).collect();
    let mut head_of: Vec<Option<usize>> = vec![None; n];
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], head_of: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if head_of[v].map_or(true, |w| augment(w, adj, seen, head_of)) {
                    head_of[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    (0..n).filter(|&u| augment(u, &adj, &mut vec![false; n], &mut head_of)).count()
}

/// `p` points `U` and `p` further points `V`, all free of 3-edges, with
/// every distance between `U` and `V` different from 2.
fn ones_on_both_sides(space: &MetricSpace, p: usize) -> bool {
    if p == 0 {
        return true;
    }
    let nb = Neighborhoods::new(space);
    let free = three_free(space);
    fn grow(nb: &Neighborhoods, p: usize, cand_u: &FixedBitSet, common: &FixedBitSet, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == p {
            let mut v = common.clone();
            for &u in chosen.iter() {
                v.set(u, false);
            }
            return v.count_ones(..) >= p;
        }
        if common.count_ones(..) < p {
            return false;
        }
        for u in cand_u.ones() {
            let mut next_cand = cand_u.clone();
            next_cand.set_range(..u + 1, false);
            let mut next_common = common.clone();
            next_common.intersect_with(&nb.not_two[u]);
            chosen.push(u);
            if grow(nb, p, &next_cand, &next_common, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    grow(&nb, p, &free, &free, &mut Vec::new())
}

/// A premise instance of the extension axiom with no extension point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFailure {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

impl fmt::Display for ExtensionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X={:?} Y={:?} Z={:?} has no extension point", self.x, self.y, self.z)
    }
}

pub fn eval_extension_axiom(space: &MetricSpace, q: usize, p: usize, r: usize) -> bool {
    find_extension_failure(space, q, p, r).is_none()
}

/// First premise `(X, Y, Z)` in lexicographic order with no extension.
///
/// `X`, `Y`, `Z` are 2-cliques of sizes `q`, `p`, `r` with every distance
/// between different sets other than 2 (which makes the sets disjoint).
/// An extension is a point `w` with `d(w, X) = 1`, `d(w, Y) = 2` and
/// `d(w, Z) = 3`.
pub fn find_extension_failure(space: &MetricSpace, q: usize, p: usize, r: usize) -> Option<ExtensionFailure> {
    let nb = Neighborhoods::new(space);
    let mut search = ExtSearch { nb: &nb, n: space.n(), sizes: [q, p, r], chosen: Default::default() };
    let start = full(space.n());
    search.pick(0, &start)
}

struct ExtSearch<'a> {
    nb: &'a Neighborhoods,
    n: usize,
    sizes: [usize; 3],
    chosen: [Vec<usize>; 3],
}

impl ExtSearch<'_> {
    fn pick(&mut self, block: usize, cand: &FixedBitSet) -> Option<ExtensionFailure> {
        if block == 3 {
            if self.extension_exists() {
                return None;
            }
            let [x, y, z] = self.chosen.clone();
            return Some(ExtensionFailure { x, y, z });
        }
        let need = self.sizes[block] - self.chosen[block].len();
        if need == 0 {
            let mut next = full(self.n);
            for v in self.chosen.iter().flatten() {
                next.intersect_with(&self.nb.not_two[*v]);
            }
            return self.pick(block + 1, &next);
        }
        if cand.count_ones(..) < need {
            return None;
        }
        for v in cand.ones() {
            let mut next = cand.clone();
            next.set_range(..v + 1, false);
            next.intersect_with(self.nb.at(2, v));
            self.chosen[block].push(v);
            let found = self.pick(block, &next);
            self.chosen[block].pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn extension_exists(&self) -> bool {
        let mut w = full(self.n);
        for (block, d) in [1u8, 2, 3].into_iter().enumerate() {
            for &v in &self.chosen[block] {
                w.intersect_with(self.nb.at(d, v));
            }
        }
        !w.is_clear()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: u8, b: u8, c: u8) -> MetricSpace {
        MetricSpace::from_upper(3, &[a, b, c]).unwrap()
    }

    #[test]
    fn spec_examples() {
        let two = MetricSpace::uniform(2, 3).unwrap();
        assert!(eval_sentence(&two, SentenceId::A1Pairs(1)));
        assert!(eval_sentence(&two, SentenceId::A1Pairs(2)));
        assert!(!eval_sentence(&two, SentenceId::A1Pairs(3)));
        assert!(!eval_sentence(&tri(1, 2, 3), SentenceId::A2MinThrees(1)));
        assert!(eval_sentence(&tri(2, 3, 3), SentenceId::A2MinThrees(1)));
        assert!(!eval_sentence(&MetricSpace::empty(), SentenceId::Extension { q: 0, p: 0, r: 0 }));
        assert!(eval_sentence(&tri(2, 2, 2), SentenceId::Extension { q: 0, p: 0, r: 0 }));
        for (q, p, r) in [(1, 0, 0), (0, 2, 1), (2, 2, 2)] {
            assert!(eval_extension_axiom(&MetricSpace::empty(), q, p, r));
        }
        assert!(!check_divergence_witness(&tri(2, 2, 2)));
        assert!(check_divergence_witness(&MetricSpace::empty()));
    }

    #[test]
    fn structural_families_on_triangles() {
        assert!(eval_sentence(&tri(1, 1, 2), SentenceId::A1Parts));
        assert!(!eval_sentence(&tri(1, 1, 1), SentenceId::A1Parts));
        assert!(!eval_sentence(&tri(2, 2, 1), SentenceId::A2Parts));
        assert!(!eval_sentence(&tri(2, 3, 3), SentenceId::A1NoTwoThrees));
        assert!(eval_sentence(&tri(1, 2, 3), SentenceId::A1NoTwoThrees));
    }

    #[test]
    fn ones_variants() {
        // parts {0,1,2} | {3,4,5}; 3-edge 0-3; free points 1,2,4,5.
        let s = MetricSpace::from_fn(6, |i, j| {
            if (i < 3) == (j < 3) {
                2
            } else if i == 0 && j == 3 {
                3
            } else {
                1
            }
        })
        .unwrap();
        assert!(eval_sentence(&s, SentenceId::A1OnesLabeled(4)));
        assert!(!eval_sentence(&s, SentenceId::A1OnesLabeled(5)));
        assert!(eval_sentence(&s, SentenceId::A1OnesUnlabeled(2)));
        assert!(eval_sentence(&s, SentenceId::A1OnesUnlabeledGloss(2)));
        assert!(!eval_sentence(&s, SentenceId::A1OnesUnlabeledGloss(3)));

        // one part only: free points exist but none across.
        let clique = MetricSpace::uniform(4, 2).unwrap();
        assert!(eval_sentence(&clique, SentenceId::A1OnesUnlabeled(2)));
        assert!(!eval_sentence(&clique, SentenceId::A1OnesUnlabeledGloss(1)));
        assert!(eval_sentence(&clique, SentenceId::A1OnesUnlabeledGloss(0)));
    }

    #[test]
    fn extension_on_a1_two_threes_fails() {
        // k = 3, j = 2: Z = {0, 1} is a 2-clique; w would need two 3-edges.
        let s = MetricSpace::from_fn(6, |i, j| {
            if (i < 3) == (j < 3) {
                2
            } else if j == i + 3 && i < 2 {
                3
            } else {
                1
            }
        })
        .unwrap();
        let failure = find_extension_failure(&s, 0, 0, 2).unwrap();
        assert_eq!(failure.z, vec![0, 1]);
        assert_eq!(find_extension_failure(&s, 0, 0, 1).unwrap().z, vec![2]);
        assert!(eval_extension_axiom(&s, 0, 2, 0));
        // X and Z sit in different parts, so no w can be at 1 from X and 3 from Z.
        assert!(!eval_extension_axiom(&s, 1, 0, 1));
        // three mutually cross sets cannot exist in two parts.
        assert!(eval_extension_axiom(&s, 1, 1, 1));
    }
}
