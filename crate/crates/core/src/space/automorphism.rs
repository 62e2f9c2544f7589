//! Isometry group order by individualization and refinement.
//!
//! The group is counted through a stabilizer chain: refine the current
//! ordered partition to an equitable one, pick the first non-singleton cell,
//! and multiply the order of the stabilizer of its first vertex by the size
//! of that vertex's orbit. Orbit membership of each other vertex of the cell
//! is decided by an isomorphism search between the two individualized
//! partitions. Refinement is isomorphism-invariant, so colour classes are
//! preserved by every automorphism of the coloured space.

use num_bigint::BigUint;
use num_traits::One;

use super::MetricSpace;

type Colors = Vec<u32>;
/// Sorted distinct signatures with multiplicities, one entry per round.
type Trace = Vec<Vec<(Vec<u32>, usize)>>;

/// Order of the isometry group of `space`.
pub fn automorphism_count(space: &MetricSpace) -> BigUint {
    if space.n() <= 1 {
        return BigUint::one();
    }
    let (colors, _) = refine(space, vec![0; space.n()]);
    count(space, colors)
}

/// Whether the identity is the only isometry.
pub fn is_asymmetric(space: &MetricSpace) -> bool {
    automorphism_count(space).is_one()
}

fn count(space: &MetricSpace, colors: Colors) -> BigUint {
    let Some(cell_color) = first_nonsingleton(&colors) else {
        return BigUint::one();
    };
    let cell: Vec<usize> = (0..colors.len()).filter(|&v| colors[v] == cell_color).collect();
    let v = cell[0];
    let (pv, tv) = refine(space, individualize(&colors, v));
    let mut orbit = 1u64;
    for &w in &cell[1..] {
        let (pw, tw) = refine(space, individualize(&colors, w));
        if tw == tv && isomorphic(space, &pv, &pw) {
            orbit += 1;
        }
    }
    count(space, pv) * BigUint::from(orbit)
}

/// Whether some colour-preserving isometry maps partition `p` onto `q`.
/// Both partitions must be equitable with equal refinement traces.
fn isomorphic(space: &MetricSpace, p: &Colors, q: &Colors) -> bool {
    let Some(cell_color) = first_nonsingleton(p) else {
        let n = p.len();
        let mut image = vec![0usize; n];
        let mut by_color = vec![0usize; n];
        for (b, &c) in q.iter().enumerate() {
            by_color[c as usize] = b;
        }
        for a in 0..n {
            image[a] = by_color[p[a] as usize];
        }
        return (0..n).all(|a| (a + 1..n).all(|b| space.get(a, b) == space.get(image[a], image[b])));
    };
    let v = (0..p.len()).find(|&x| p[x] == cell_color).expect("cell is non-empty");
    let (pv, tv) = refine(space, individualize(p, v));
    for w in (0..q.len()).filter(|&x| q[x] == cell_color) {
        let (qw, tw) = refine(space, individualize(q, w));
        if tw == tv && isomorphic(space, &pv, &qw) {
            return true;
        }
    }
    false
}

fn first_nonsingleton(colors: &Colors) -> Option<u32> {
    let mut sizes = vec![0usize; colors.len()];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes.iter().position(|&s| s > 1).map(|c| c as u32)
}

/// Splits `v` off its cell, placing it just before the rest of the cell.
fn individualize(colors: &Colors, v: usize) -> Colors {
    let cv = colors[v];
    colors
        .iter()
        .enumerate()
        .map(|(u, &c)| if c > cv || (c == cv && u != v) { c + 1 } else { c })
        .collect()
}

/// Refines to the coarsest equitable partition below `colors`. Each vertex
/// is signed by its colour and its counts of neighbours per (colour,
/// distance); new colours are the ranks of the signatures.
fn refine(space: &MetricSpace, mut colors: Colors) -> (Colors, Trace) {
    let n = space.n();
    let mut trace = Trace::new();
    let mut num_colors = colors.iter().max().map_or(0, |&m| m as usize + 1);
    loop {
        let sigs: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                let mut sig = vec![0u32; 1 + 3 * num_colors];
                sig[0] = colors[v];
                for u in 0..n {
                    if u != v {
                        let d = space.get(v, u) as usize;
                        sig[1 + colors[u] as usize * 3 + d - 1] += 1;
                    }
                }
                sig
            })
            .collect();
        let mut distinct: Vec<&Vec<u32>> = sigs.iter().collect();
        distinct.sort();
        let mut round: Vec<(Vec<u32>, usize)> = Vec::new();
        for s in distinct {
            match round.last_mut() {
                Some((last, count)) if last == s => *count += 1,
                _ => round.push((s.clone(), 1)),
            }
        }
        let new_count = round.len();
        colors = sigs
            .iter()
            .map(|s| round.binary_search_by(|(r, _)| r.cmp(s)).expect("signature present") as u32)
            .collect();
        trace.push(round);
        if new_count == num_colors {
            return (colors, trace);
        }
        num_colors = new_count;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aut(rows: &[&[u8]]) -> u64 {
        let s = MetricSpace::from_rows(rows).unwrap();
        automorphism_count(&s).try_into().unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(aut(&[&[0, 3], &[3, 0]]), 2);
        assert_eq!(aut(&[&[0, 1, 2], &[1, 0, 3], &[2, 3, 0]]), 1);
        assert_eq!(aut(&[&[0, 2, 2], &[2, 0, 2], &[2, 2, 0]]), 6);
        assert_eq!(automorphism_count(&MetricSpace::empty()), BigUint::one());
        assert!(!is_asymmetric(&MetricSpace::uniform(2, 1).unwrap()));
        assert!(is_asymmetric(&MetricSpace::from_upper(3, &[1, 2, 3]).unwrap()));
    }

    #[test]
    fn uniform_spaces_have_full_symmetric_group() {
        let s = MetricSpace::uniform(10, 2).unwrap();
        assert_eq!(automorphism_count(&s), BigUint::from(3_628_800u32));
    }

    #[test]
    fn a1_matching_example() {
        // parts {0,1} and {2,3}; one 3-edge 0-2.
        let s = MetricSpace::from_rows(&[[0, 2, 3, 1], [2, 0, 1, 1], [3, 1, 0, 2], [1, 1, 2, 0]]).unwrap();
        assert_eq!(automorphism_count(&s), BigUint::from(2u32));
    }
}
