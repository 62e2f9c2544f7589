//! Finite metric spaces with distances in {1, 2, 3}.
//!
//! A [`MetricSpace`] is a value object: a square symmetric matrix with a
//! zero diagonal and off-diagonal entries in {1, 2, 3}. Well-formedness is
//! checked once at construction, so every other operation in the crate can
//! assume it.

mod automorphism;
mod bipartite;
mod canon;
mod class;
mod cross;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use automorphism::{automorphism_count, is_asymmetric};
pub use bipartite::{bipartite_decompose, BipartiteForm, DecomposeError};
pub use canon::{canonical_form, CanonicalKey, EXHAUSTIVE_CANON_MAX_N};
pub use class::{validate, ClassId, ClassParams, ClassSpec, ForbiddenTriple, Membership, Triangle};
pub use cross::{CanonicalCross, CrossMatrix};
pub(crate) use canon::canonical_cross_up_to_swap;

/// Structural problems with a distance matrix or its text encoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("expected {expected} matrix entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("diagonal entry ({i},{i}) is {value}, expected 0")]
    BadDiagonal { i: usize, value: u8 },
    #[error("entry ({i},{j}) is {value}, expected 1, 2 or 3")]
    BadEntry { i: usize, j: usize, value: u8 },
    #[error("matrix is not symmetric at ({i},{j}): {upper} vs {lower}")]
    Asymmetric { i: usize, j: usize, upper: u8, lower: u8 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A finite metric space on vertices `0..n` with distances in {1, 2, 3}.
///
/// The derived ordering compares `n` first and then the row-major matrix,
/// which for symmetric matrices is the lexicographic order of the upper
/// triangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetricSpace {
    n: usize,
    dist: Vec<u8>,
}

impl MetricSpace {
    /// The space with no points.
    pub fn empty() -> Self {
        MetricSpace { n: 0, dist: Vec::new() }
    }

    /// The `n`-point space with every distance equal to `d`.
    pub fn uniform(n: usize, d: u8) -> Result<Self, SpaceError> {
        Self::from_fn(n, |_, _| d)
    }

    /// Builds a space from a row-major `n × n` matrix.
    pub fn from_matrix(n: usize, dist: Vec<u8>) -> Result<Self, SpaceError> {
        if dist.len() != n * n {
            return Err(SpaceError::Shape { expected: n * n, found: dist.len() });
        }
        for i in 0..n {
            let value = dist[i * n + i];
            if value != 0 {
                return Err(SpaceError::BadDiagonal { i, value });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let upper = dist[i * n + j];
                let lower = dist[j * n + i];
                if !(1..=3).contains(&upper) {
                    return Err(SpaceError::BadEntry { i, j, value: upper });
                }
                if !(1..=3).contains(&lower) {
                    return Err(SpaceError::BadEntry { i: j, j: i, value: lower });
                }
                if upper != lower {
                    return Err(SpaceError::Asymmetric { i, j, upper, lower });
                }
            }
        }
        Ok(MetricSpace { n, dist })
    }

    /// Builds a space from explicit rows.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, SpaceError> {
        let n = rows.len();
        let mut dist = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(SpaceError::Shape { expected: n * n, found: n * (n - 1) + row.len() });
            }
            dist.extend_from_slice(row);
        }
        Self::from_matrix(n, dist)
    }

    /// Builds a space from its upper triangle in row-major order
    /// `(0,1), (0,2), …, (0,n-1), (1,2), …`.
    pub fn from_upper(n: usize, upper: &[u8]) -> Result<Self, SpaceError> {
        let expected = n * n.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(SpaceError::Shape { expected, found: upper.len() });
        }
        let mut it = upper.iter();
        let mut dist = vec![0u8; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = *it.next().expect("length checked above");
                if !(1..=3).contains(&d) {
                    return Err(SpaceError::BadEntry { i, j, value: d });
                }
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(MetricSpace { n, dist })
    }

    /// Builds a space whose distance `d(i, j)` for `i < j` is `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self, SpaceError> {
        let mut dist = vec![0u8; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                if !(1..=3).contains(&d) {
                    return Err(SpaceError::BadEntry { i, j, value: d });
                }
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(MetricSpace { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    /// Row-major matrix including the zero diagonal.
    pub fn as_matrix(&self) -> &[u8] {
        &self.dist
    }

    /// Upper triangle in row-major order.
    pub fn upper(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| self.get(i, j)))
    }

    /// Number of vertices at distance `d` from `v`.
    pub fn degree(&self, v: usize, d: u8) -> usize {
        self.row(v).iter().filter(|&&x| x == d).count()
    }

    /// The space relabeled so that new vertex `i` is old vertex `order[i]`.
    ///
    /// # Panics
    /// If `order` is not a permutation of `0..n`.
    pub fn permuted(&self, order: &[usize]) -> MetricSpace {
        assert_eq!(order.len(), self.n, "permutation length mismatch");
        let mut seen = vec![false; self.n];
        for &v in order {
            assert!(v < self.n && !seen[v], "not a permutation");
            seen[v] = true;
        }
        let n = self.n;
        let mut dist = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                dist[i * n + j] = self.get(order[i], order[j]);
            }
        }
        MetricSpace { n, dist }
    }

    /// The induced subspace on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> MetricSpace {
        let m = vertices.len();
        let mut dist = vec![0u8; m * m];
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate() {
                dist[a * m + b] = self.get(i, j);
            }
        }
        MetricSpace { n: m, dist }
    }

    /// Exchanges every 1-edge with a 3-edge and vice versa.
    pub fn swap_ones_threes(&self) -> MetricSpace {
        let dist = self
            .dist
            .iter()
            .map(|&d| match d {
                1 => 3,
                3 => 1,
                other => other,
            })
            .collect();
        MetricSpace { n: self.n, dist }
    }

    /// Parses every space in a text made of blank-line separated blocks.
    pub fn parse_many(text: &str) -> Result<Vec<MetricSpace>, SpaceError> {
        let mut out = Vec::new();
        let mut block = String::new();
        let mut block_start = 1;
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                if !block.is_empty() {
                    out.push(parse_block(&block, block_start)?);
                    block.clear();
                }
                block_start = idx + 2;
            } else {
                block.push_str(line);
                block.push('\n');
            }
        }
        if !block.is_empty() {
            out.push(parse_block(&block, block_start)?);
        }
        Ok(out)
    }
}

/// Text format: `n=<int>` followed by `n` lines of `n` space separated digits.
impl fmt::Display for MetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for MetricSpace {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_block(s, 1)
    }
}

fn parse_block(s: &str, first_line: usize) -> Result<MetricSpace, SpaceError> {
    let err = |line: usize, message: String| SpaceError::Parse { line: first_line + line, message };
    let mut lines = s.lines();
    let header = lines.next().ok_or_else(|| err(0, "missing header".into()))?;
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|rest| rest.parse().ok())
        .ok_or_else(|| err(0, format!("bad header {header:?}, expected n=<int>")))?;
    let mut dist = Vec::with_capacity(n * n);
    for i in 0..n {
        let line = lines.next().ok_or_else(|| err(i + 1, format!("missing row {i}")))?;
        let mut count = 0;
        for token in line.split(' ') {
            let value = match token.as_bytes() {
                [b @ b'0'..=b'9'] => b - b'0',
                _ => return Err(err(i + 1, format!("bad entry {token:?}"))),
            };
            dist.push(value);
            count += 1;
        }
        if count != n {
            return Err(err(i + 1, format!("row {i} has {count} entries, expected {n}")));
        }
    }
    if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
        return Err(err(n + 1, format!("trailing content {extra:?}")));
    }
    MetricSpace::from_matrix(n, dist)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format_round_trip() {
        let s = MetricSpace::from_rows(&[[0, 1, 2], [1, 0, 3], [2, 3, 0]]).unwrap();
        let text = s.to_string();
        assert_eq!(text, "n=3\n0 1 2\n1 0 3\n2 3 0\n");
        assert_eq!(text.parse::<MetricSpace>().unwrap(), s);
    }

    #[test]
    fn empty_space_text() {
        let e = MetricSpace::empty();
        assert_eq!(e.to_string(), "n=0\n");
        assert_eq!("n=0\n".parse::<MetricSpace>().unwrap(), e);
    }

    #[test]
    fn parser_rejects_malformed_input() {
        assert!(matches!(
            "n=2\n0 1\n3 0\n".parse::<MetricSpace>(),
            Err(SpaceError::Asymmetric { i: 0, j: 1, upper: 1, lower: 3 })
        ));
        assert!(matches!(
            "n=2\n0 4\n4 0\n".parse::<MetricSpace>(),
            Err(SpaceError::BadEntry { value: 4, .. })
        ));
        assert!(matches!(
            "n=2\n1 2\n2 0\n".parse::<MetricSpace>(),
            Err(SpaceError::BadDiagonal { i: 0, value: 1 })
        ));
        assert!(matches!("n=2\n0 2\n".parse::<MetricSpace>(), Err(SpaceError::Parse { .. })));
        assert!(matches!("n=2\n0 2 1\n2 0\n".parse::<MetricSpace>(), Err(SpaceError::Parse { .. })));
        assert!(matches!("n=2\n0  2\n2 0\n".parse::<MetricSpace>(), Err(SpaceError::Parse { .. })));
        assert!(matches!("m=2\n".parse::<MetricSpace>(), Err(SpaceError::Parse { .. })));
        assert!(matches!("n=1\n0\n0\n".parse::<MetricSpace>(), Err(SpaceError::Parse { .. })));
    }

    #[test]
    fn parse_many_blocks() {
        let a = MetricSpace::uniform(2, 3).unwrap();
        let b = MetricSpace::uniform(3, 2).unwrap();
        let text = format!("{a}\n{b}\n");
        assert_eq!(MetricSpace::parse_many(&text).unwrap(), vec![a, b]);
    }

    #[test]
    fn permutation_relabels() {
        let s = MetricSpace::from_rows(&[[0, 1, 2], [1, 0, 3], [2, 3, 0]]).unwrap();
        let p = s.permuted(&[2, 0, 1]);
        assert_eq!(p.get(0, 1), 2);
        assert_eq!(p.get(0, 2), 3);
        assert_eq!(p.get(1, 2), 1);
    }

    #[test]
    fn ordering_follows_upper_triangle() {
        let a = MetricSpace::from_upper(3, &[1, 2, 3]).unwrap();
        let b = MetricSpace::from_upper(3, &[1, 3, 2]).unwrap();
        assert!(a < b);
        assert_eq!(a.upper().collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}
