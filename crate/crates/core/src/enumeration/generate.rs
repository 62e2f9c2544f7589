//! Labeled oracle sweep, structured labeled generator and unlabeled
//! descriptors.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::EnumError;
use crate::exec::{self, Strategy};
use crate::space::{automorphism_count, BipartiteForm, ClassId, CrossMatrix, MetricSpace};

use super::counts::is_balanced;
use super::IsoClassDescriptor;

/// Largest `n` swept by the brute-force oracle without an override.
pub const ORACLE_MAX_N: usize = 6;
/// Hard ceiling for the oracle even with an override (`3^36` sweeps).
pub const ORACLE_FORCED_MAX_N: usize = 9;
/// Largest cross matrix (in cells) whose A2 isometry classes are listed.
pub const UNLABELED_A2_MAX_CELLS: usize = 24;
/// Largest `n` whose every split fits [`UNLABELED_A2_MAX_CELLS`].
pub const UNLABELED_A2_MAX_N: usize = 9;
/// Leading upper-triangle digits fixed per oracle work unit.
const ORACLE_PREFIX_DIGITS: usize = 4;

/// Every symmetric {1,2,3} matrix on `n` points in `class`, in
/// lexicographic order of the row-major upper triangle.
pub fn enumerate_labeled_oracle(n: usize, class: ClassId, force: bool) -> Result<Vec<MetricSpace>, EnumError> {
    enumerate_labeled_oracle_with(n, class, force, Strategy::default())
}

pub fn enumerate_labeled_oracle_with(
    n: usize,
    class: ClassId,
    force: bool,
    strategy: Strategy,
) -> Result<Vec<MetricSpace>, EnumError> {
    if n > ORACLE_MAX_N && !force {
        return Err(EnumError::OracleGuard { n, max: ORACLE_MAX_N });
    }
    let cells = n * n.saturating_sub(1) / 2;
    if n > ORACLE_FORCED_MAX_N {
        return Err(EnumError::Capacity { what: "labeled oracle", n, max: ORACLE_FORCED_MAX_N });
    }
    let spec = class.spec();
    let mut index = vec![vec![0usize; n]; n];
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            index[i][j] = t;
            index[j][i] = t;
            t += 1;
        }
    }
    let triples: Vec<[usize; 3]> = (0..n)
        .tuple_combinations()
        .map(|(i, j, k)| [index[i][j], index[i][k], index[j][k]])
        .collect();

    let prefix = cells.min(ORACLE_PREFIX_DIGITS);
    let suffix = cells - prefix;
    let chunks = 3usize.pow(prefix as u32);
    let suffix_count = 3u64.pow(suffix as u32);
    Ok(exec::flat_map_range(strategy, chunks, |chunk| {
        let mut digits = vec![1u8; cells];
        let mut c = chunk;
        for slot in (0..prefix).rev() {
            digits[slot] = (c % 3) as u8 + 1;
            c /= 3;
        }
        let mut out = Vec::new();
        for step in 0..suffix_count {
            if step > 0 {
                let mut pos = cells - 1;
                while digits[pos] == 3 {
                    digits[pos] = 1;
                    pos -= 1;
                }
                digits[pos] += 1;
            }
            if triples.iter().all(|&[a, b, c]| spec.allows_sides(digits[a], digits[b], digits[c])) {
                out.push(MetricSpace::from_upper(n, &digits).expect("digits are in 1..=3"));
            }
        }
        out
    }))
}

/// All legal cross matrices for a `rows × cols` split, in a fixed order.
fn cross_patterns(class: ClassId, rows: usize, cols: usize) -> Vec<CrossMatrix> {
    match class {
        ClassId::A1 => {
            let mut out = Vec::new();
            let mut assignment: Vec<Option<usize>> = vec![None; rows];
            partial_matchings(0, cols, &mut vec![false; cols], &mut assignment, &mut out);
            out.into_iter()
                .map(|a| CrossMatrix::from_fn(rows, cols, |r, c| if a[r] == Some(c) { 3 } else { 1 }))
                .collect()
        }
        ClassId::A2 => {
            let cells = rows * cols;
            let mut out = Vec::with_capacity(1 << cells.min(20));
            let mut data = vec![1u8; cells];
            loop {
                out.push(CrossMatrix::new(rows, cols, data.clone()));
                let Some(pos) = data.iter().rposition(|&d| d == 1) else { break };
                data[pos] = 3;
                data[pos + 1..].fill(1);
            }
            out
        }
    }
}

fn partial_matchings(
    row: usize,
    cols: usize,
    used: &mut Vec<bool>,
    assignment: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<Option<usize>>>,
) {
    if row == assignment.len() {
        out.push(assignment.clone());
        return;
    }
    assignment[row] = None;
    partial_matchings(row + 1, cols, used, assignment, out);
    for c in 0..cols {
        if !used[c] {
            used[c] = true;
            assignment[row] = Some(c);
            partial_matchings(row + 1, cols, used, assignment, out);
            used[c] = false;
        }
    }
    assignment[row] = None;
}

/// Each labeled member of `class` on `n` points exactly once, by split
/// size `k`, then small part (lexicographic), then cross matrix. Splits
/// with equal parts only use small parts that avoid vertex 0.
pub fn enumerate_labeled_structured(n: usize, class: ClassId) -> impl Iterator<Item = MetricSpace> {
    (0..=n / 2).flat_map(move |k| {
        let patterns = cross_patterns(class, k, n - k);
        let balanced = is_balanced(n, k);
        let pool: Vec<usize> = if balanced { (1..n).collect() } else { (0..n).collect() };
        pool.into_iter().combinations(k).flat_map(move |small| {
            let large: Vec<usize> = (0..n).filter(|v| !small.contains(v)).collect();
            patterns
                .clone()
                .into_iter()
                .map(move |cross| BipartiteForm::from_parts(small.clone(), large.clone(), cross).to_space())
        })
    })
}

/// One descriptor per isometry class, ordered by `k` then canonical cross
/// matrix.
pub fn enumerate_unlabeled(n: usize, class: ClassId) -> Result<Vec<IsoClassDescriptor>, EnumError> {
    enumerate_unlabeled_with(n, class, Strategy::default())
}

pub fn enumerate_unlabeled_with(
    n: usize,
    class: ClassId,
    strategy: Strategy,
) -> Result<Vec<IsoClassDescriptor>, EnumError> {
    let mut shapes: Vec<(usize, Option<usize>, CrossMatrix)> = Vec::new();
    for k in 0..=n / 2 {
        match class {
            ClassId::A1 => {
                for j in 0..=k {
                    let cross = CrossMatrix::from_fn(k, n - k, |r, c| if r == c && r < j { 3 } else { 1 });
                    shapes.push((k, Some(j), cross));
                }
            }
            ClassId::A2 => {
                if k * (n - k) > UNLABELED_A2_MAX_CELLS {
                    return Err(EnumError::Capacity { what: "A2 isometry class listing", n, max: UNLABELED_A2_MAX_N });
                }
                for cross in a2_canonical_crosses(k, n - k, strategy) {
                    shapes.push((k, None, cross));
                }
            }
        }
    }
    Ok(exec::map_slice(strategy, &shapes, |(k, j, cross)| {
        let representative = representative(n, *k, cross.clone());
        let aut_order = automorphism_count(&representative);
        IsoClassDescriptor { class, k: *k, j: *j, cross: cross.clone(), representative, aut_order }
    }))
}

/// Space with large part `0..n-k` and small part `n-k..n`.
fn representative(n: usize, k: usize, cross: CrossMatrix) -> MetricSpace {
    BipartiteForm::from_parts((n - k..n).collect(), (0..n - k).collect(), cross).to_space()
}

/// Canonical `rows × cols` {1,3}-matrices, one per orbit of row and column
/// permutations (and transposition when square). Every orbit has a member
/// with non-decreasing rows, so only row multisets are canonicalized.
fn a2_canonical_crosses(rows: usize, cols: usize, strategy: Strategy) -> Vec<CrossMatrix> {
    let patterns: Vec<Vec<u8>> = (0..1u64 << cols)
        .map(|mask| (0..cols).map(|c| if mask >> (cols - 1 - c) & 1 == 1 { 3 } else { 1 }).collect())
        .collect();
    let multisets: Vec<Vec<usize>> = (0..patterns.len()).combinations_with_replacement(rows).collect();
    let canon = exec::map_slice(strategy, &multisets, |choice| {
        let data: Vec<u8> = choice.iter().flat_map(|&p| patterns[p].iter().copied()).collect();
        crate::space::canonical_cross_up_to_swap(&CrossMatrix::new(rows, cols, data))
    });
    canon.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}
