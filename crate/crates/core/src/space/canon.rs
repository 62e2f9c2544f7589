use std::cmp::Ordering;
use std::fmt;

use super::bipartite::decompose_member;
use super::{validate, ClassId, CrossMatrix, MetricSpace};

/// Largest `n` canonicalized by searching over all vertex orderings.
pub const EXHAUSTIVE_CANON_MAX_N: usize = 8;

/// Isometry-invariant key of a metric space.
///
/// Bytes: `n` as big-endian u32, then the upper triangle of a canonical
/// representative in column order `(0,1), (0,2), (1,2), (0,3), …`. Two keys
/// are equal exactly when the spaces are isometric, and keys of spaces with
/// different `n` order by `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        u32::from_be_bytes(self.0[..4].try_into().expect("key header")) as usize
    }

    /// The canonical representative encoded by this key.
    pub fn to_space(&self) -> MetricSpace {
        let n = self.n();
        let mut dist = vec![0u8; n * n];
        let mut it = self.0[4..].iter();
        for j in 1..n {
            for i in 0..j {
                let d = *it.next().expect("key length");
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        MetricSpace::from_matrix(n, dist).expect("keys encode well-formed spaces")
    }

    fn encode(space: &MetricSpace, order: &[usize]) -> Self {
        let n = space.n();
        let mut bytes = Vec::with_capacity(4 + n * n.saturating_sub(1) / 2);
        bytes.extend_from_slice(&(n as u32).to_be_bytes());
        for j in 1..n {
            for i in 0..j {
                bytes.push(space.get(order[i], order[j]));
            }
        }
        CanonicalKey(bytes)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(&self.0))
    }
}

/// Canonical key of a space.
///
/// For `n <= 8` the key is the lexicographic minimum over every vertex
/// ordering. Larger members of A2 (hence of A1) are canonicalized through
/// their bipartite form: the smaller part first, each part ordered by the
/// minimal arrangement of the cross matrix, trying both orientations when
/// the parts have equal size. Larger non-members fall back to the ordering
/// search.
pub fn canonical_form(space: &MetricSpace) -> CanonicalKey {
    if space.n() > EXHAUSTIVE_CANON_MAX_N && validate(space, ClassId::A2).is_member() {
        bipartite_key(space)
    } else {
        CanonicalKey::encode(space, &min_ordering(space))
    }
}

fn bipartite_key(space: &MetricSpace) -> CanonicalKey {
    let form = decompose_member(space);
    let straight = form.cross.canonical();
    let mut order: Vec<usize> = straight.row_order.iter().map(|&r| form.small[r]).collect();
    order.extend(straight.col_order.iter().map(|&c| form.large[c]));
    if form.k == form.n - form.k && form.k > 0 {
        let flipped = form.cross.transpose().canonical();
        if flipped.matrix < straight.matrix {
            order = flipped.row_order.iter().map(|&r| form.large[r]).collect();
            order.extend(flipped.col_order.iter().map(|&c| form.small[c]));
        }
    }
    CanonicalKey::encode(space, &order)
}

/// Vertex ordering minimizing the column-order upper triangle.
///
/// Depth-first over orderings; placing a vertex at position `t` appends the
/// column `d(order[0..t], v)`. Only vertices yielding the smallest column are
/// expanded and any prefix exceeding the incumbent is cut.
fn min_ordering(space: &MetricSpace) -> Vec<usize> {
    let n = space.n();
    let mut search = OrderSearch {
        space,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        cur: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.run();
    search.best.map(|(_, order)| order).unwrap_or_default()
}

struct OrderSearch<'a> {
    space: &'a MetricSpace,
    order: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl OrderSearch<'_> {
    fn run(&mut self) {
        let n = self.space.n();
        if self.order.len() == n {
            if self.best.as_ref().map_or(true, |(b, _)| self.cur < *b) {
                self.best = Some((self.cur.clone(), self.order.clone()));
            }
            return;
        }
        let column = |v: usize| -> Vec<u8> { self.order.iter().map(|&u| self.space.get(u, v)).collect() };
        let mut min_col: Option<Vec<u8>> = None;
        let mut candidates = Vec::new();
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let col = column(v);
            match min_col.as_ref().map(|m| col.cmp(m)) {
                None | Some(Ordering::Less) => {
                    min_col = Some(col);
                    candidates.clear();
                    candidates.push(v);
                }
                Some(Ordering::Equal) => candidates.push(v),
                Some(Ordering::Greater) => {}
            }
        }
        let min_col = min_col.expect("an unused vertex remains");
        let start = self.cur.len();
        if let Some((best, _)) = &self.best {
            let prefix = &best[..start + min_col.len()];
            if self.cur.iter().chain(min_col.iter()).cmp(prefix.iter()) == Ordering::Greater {
                return;
            }
        }
        for v in candidates {
            self.used[v] = true;
            self.order.push(v);
            self.cur.extend_from_slice(&min_col);
            self.run();
            self.cur.truncate(start);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

/// Canonical cross matrix of a member, folding in the part swap when the
/// parts have equal size.
pub(crate) fn canonical_cross_up_to_swap(cross: &CrossMatrix) -> CrossMatrix {
    let straight = cross.canonical().matrix;
    if cross.rows() == cross.cols() && cross.rows() > 0 {
        let flipped = cross.transpose().canonical().matrix;
        straight.min(flipped)
    } else {
        straight
    }
}
