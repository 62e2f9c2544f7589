use std::fmt;

/// The between-parts block of a bipartite space: `rows × cols` entries,
/// each 1 or 3. Rows index the smaller part.
///
/// Ordered by shape, then row-major entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// A cross matrix in its lexicographically minimal arrangement under row
/// and column permutations, together with the arrangement that produced it:
/// `matrix[r][c] == source[row_order[r]][col_order[c]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCross {
    pub matrix: CrossMatrix,
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
}

impl CrossMatrix {
    /// # Panics
    /// If the length is wrong or an entry is not 1 or 3.
    pub fn new(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "cross matrix shape mismatch");
        assert!(data.iter().all(|&d| d == 1 || d == 3), "cross entries must be 1 or 3");
        CrossMatrix { rows, cols, data }
    }

    pub fn all_ones(rows: usize, cols: usize) -> Self {
        CrossMatrix { rows, cols, data: vec![1; rows * cols] }
    }

    /// Entry `i` in row-major order is 3 iff bit `i` of `mask` is set.
    pub fn from_mask(rows: usize, cols: usize, mask: u64) -> Self {
        assert!(rows * cols <= 64, "mask too narrow for {rows}x{cols}");
        let data = (0..rows * cols).map(|i| if mask >> i & 1 == 1 { 3 } else { 1 }).collect();
        CrossMatrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    pub fn transpose(&self) -> CrossMatrix {
        CrossMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Number of entries equal to 3.
    pub fn threes(&self) -> usize {
        self.data.iter().filter(|&&d| d == 3).count()
    }

    pub fn row_threes(&self, r: usize) -> usize {
        self.row(r).iter().filter(|&&d| d == 3).count()
    }

    pub fn col_threes(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c) == 3).count()
    }

    /// Whether every row and every column holds at most one 3.
    pub fn is_partial_matching(&self) -> bool {
        (0..self.rows).all(|r| self.row_threes(r) <= 1) && (0..self.cols).all(|c| self.col_threes(c) <= 1)
    }

    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> CrossMatrix {
        CrossMatrix::from_fn(self.rows, self.cols, |r, c| self.get(row_order[r], col_order[c]))
    }

    /// Lexicographically minimal row-major arrangement under independent row
    /// and column permutations.
    ///
    /// Branch and bound over row orders. Once the row order is fixed the best
    /// column order is the lexicographic sort of the columns, so the search
    /// keeps the columns as an ordered partition into blocks that agree on
    /// the rows chosen so far. Only rows producing the smallest next row are
    /// expanded, and rows with identical content are tried once.
    pub fn canonical(&self) -> CanonicalCross {
        if self.rows == 0 || self.cols == 0 {
            return CanonicalCross {
                matrix: self.clone(),
                row_order: (0..self.rows).collect(),
                col_order: (0..self.cols).collect(),
            };
        }
        let mut search = CanonSearch {
            m: self,
            best: None,
            chosen: Vec::with_capacity(self.rows),
            used: vec![false; self.rows],
            cur: Vec::with_capacity(self.rows * self.cols),
        };
        search.run(vec![(0..self.cols).collect()]);
        let (data, row_order, col_order) = search.best.expect("non-empty search space");
        CanonicalCross {
            matrix: CrossMatrix { rows: self.rows, cols: self.cols, data },
            row_order,
            col_order,
        }
    }
}

type Best = (Vec<u8>, Vec<usize>, Vec<usize>);

struct CanonSearch<'a> {
    m: &'a CrossMatrix,
    best: Option<Best>,
    chosen: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
}

impl CanonSearch<'_> {
    fn segment(&self, row: usize, blocks: &[Vec<usize>]) -> Vec<u8> {
        let mut seg = Vec::with_capacity(self.m.cols);
        for block in blocks {
            let ones = block.iter().filter(|&&c| self.m.get(row, c) == 1).count();
            seg.extend(std::iter::repeat(1).take(ones));
            seg.extend(std::iter::repeat(3).take(block.len() - ones));
        }
        seg
    }

    fn run(&mut self, blocks: Vec<Vec<usize>>) {
        if self.chosen.len() == self.m.rows {
            let better = match &self.best {
                None => true,
                Some((data, _, _)) => self.cur < *data,
            };
            if better {
                let cols = blocks.iter().flatten().copied().collect();
                self.best = Some((self.cur.clone(), self.chosen.clone(), cols));
            }
            return;
        }

        let mut candidates: Vec<(usize, Vec<u8>)> = Vec::new();
        let mut seen_rows: Vec<&[u8]> = Vec::new();
        for r in 0..self.m.rows {
            if self.used[r] || seen_rows.contains(&self.m.row(r)) {
                continue;
            }
            seen_rows.push(self.m.row(r));
            candidates.push((r, self.segment(r, &blocks)));
        }
        let min_seg = candidates.iter().map(|(_, s)| s).min().expect("unused row exists").clone();

        let start = self.cur.len();
        if let Some((data, _, _)) = &self.best {
            let best_prefix = &data[..start + min_seg.len()];
            let ord = self.cur.iter().chain(min_seg.iter()).cmp(best_prefix.iter());
            if ord == std::cmp::Ordering::Greater {
                return;
            }
        }

        for (r, seg) in candidates {
            if seg != min_seg {
                continue;
            }
            let mut next = Vec::with_capacity(blocks.len() * 2);
            for block in &blocks {
                let (ones, threes): (Vec<usize>, Vec<usize>) =
                    block.iter().partition(|&&c| self.m.get(r, c) == 1);
                if !ones.is_empty() {
                    next.push(ones);
                }
                if !threes.is_empty() {
                    next.push(threes);
                }
            }
            self.used[r] = true;
            self.chosen.push(r);
            self.cur.extend_from_slice(&seg);
            self.run(next);
            self.cur.truncate(start);
            self.chosen.pop();
            self.used[r] = false;
        }
    }
}

impl fmt::Display for CrossMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("/")?;
            }
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}
