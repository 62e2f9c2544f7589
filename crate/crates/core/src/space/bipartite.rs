use thiserror::Error;

use super::{validate, ClassId, CrossMatrix, ForbiddenTriple, Membership, MetricSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("space is not a member of {class}: {witness}")]
    NotMember { class: ClassId, witness: ForbiddenTriple },
}

/// Decomposition of a member space into its (at most two) maximal
/// 2-cliques.
///
/// `small` has `k` vertices and `large` has `n - k`, with `k <= n - k`; both
/// are sorted ascending. When the parts have equal size, the part holding
/// vertex 0 is `large`. `cross[r][c]` is the distance between `small[r]` and
/// `large[c]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteForm {
    pub n: usize,
    pub k: usize,
    /// 0 for vertices of `small`, 1 for `large`.
    pub part_of: Vec<u8>,
    pub small: Vec<usize>,
    pub large: Vec<usize>,
    pub cross: CrossMatrix,
}

impl BipartiteForm {
    /// Assembles a form from a partition and a cross matrix.
    ///
    /// # Panics
    /// If the parts do not partition `0..n` or the matrix shape disagrees.
    pub fn from_parts(small: Vec<usize>, large: Vec<usize>, cross: CrossMatrix) -> Self {
        let n = small.len() + large.len();
        assert_eq!(cross.rows(), small.len());
        assert_eq!(cross.cols(), large.len());
        let mut part_of = vec![u8::MAX; n];
        for &v in &small {
            part_of[v] = 0;
        }
        for &v in &large {
            assert_eq!(part_of[v], u8::MAX, "vertex {v} in both parts");
            part_of[v] = 1;
        }
        assert!(part_of.iter().all(|&p| p <= 1), "parts do not cover 0..{n}");
        BipartiteForm { n, k: small.len(), part_of, small, large, cross }
    }

    /// Rebuilds the distance matrix: 2 inside parts, cross entries between.
    pub fn to_space(&self) -> MetricSpace {
        let mut small_idx = vec![usize::MAX; self.n];
        let mut large_idx = vec![usize::MAX; self.n];
        for (r, &v) in self.small.iter().enumerate() {
            small_idx[v] = r;
        }
        for (c, &v) in self.large.iter().enumerate() {
            large_idx[v] = c;
        }
        MetricSpace::from_fn(self.n, |i, j| {
            if self.part_of[i] == self.part_of[j] {
                2
            } else if self.part_of[i] == 0 {
                self.cross.get(small_idx[i], large_idx[j])
            } else {
                self.cross.get(small_idx[j], large_idx[i])
            }
        })
        .expect("cross entries are 1 or 3")
    }

    /// Number of 3-entries in the cross matrix.
    pub fn threes(&self) -> usize {
        self.cross.threes()
    }
}

/// Splits a member space into its two maximal 2-cliques.
pub fn bipartite_decompose(space: &MetricSpace, class: ClassId) -> Result<BipartiteForm, DecomposeError> {
    if let Membership::Forbidden(witness) = validate(space, class) {
        return Err(DecomposeError::NotMember { class, witness });
    }
    Ok(decompose_member(space))
}

/// Decomposition without the membership check; callers guarantee the space
/// lies in A2 (hence every vertex outside the 2-clique of vertex 0 forms the
/// other 2-clique).
pub(crate) fn decompose_member(space: &MetricSpace) -> BipartiteForm {
    let n = space.n();
    if n == 0 {
        return BipartiteForm::from_parts(Vec::new(), Vec::new(), CrossMatrix::all_ones(0, 0));
    }
    let (with_zero, rest): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| v == 0 || space.get(0, v) == 2);
    let (small, large) = if rest.len() <= with_zero.len() { (rest, with_zero) } else { (with_zero, rest) };
    debug_assert!(small.iter().all(|&a| small.iter().all(|&b| a == b || space.get(a, b) == 2)));
    let cross = CrossMatrix::from_fn(small.len(), large.len(), |r, c| space.get(small[r], large[c]));
    BipartiteForm::from_parts(small, large, cross)
}
