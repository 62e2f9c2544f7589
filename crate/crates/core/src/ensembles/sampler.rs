//! Seeded samplers over labeled members.

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumeration::counts::{a1_labeled_weight, a2_ordered_term, binomial, factorial, is_balanced};
use crate::space::{BipartiteForm, ClassId, CrossMatrix, MetricSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerModel {
    /// Exactly uniform over all labeled members on `n` points.
    UniformLabeled,
    /// Small part `0..k`, large part `k..n`. A2 cross entries are
    /// independent fair coins over {1,3}; A1 cross matrices are uniform
    /// over partial matchings.
    FixedPartition { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub n: usize,
    pub class: ClassId,
    pub model: SamplerModel,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("fixed partition needs 0 <= k <= n - k (got k = {k}, n = {n})")]
    InvalidPartition { k: usize, n: usize },
}

/// Draws one space; the seed fully determines the result.
pub fn sample(config: &SamplerConfig) -> Result<MetricSpace, SampleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    match config.model {
        SamplerModel::UniformLabeled => Ok(UniformSampler::new(config.n, config.class).draw(&mut rng)),
        SamplerModel::FixedPartition { k } => {
            let n = config.n;
            if 2 * k > n {
                return Err(SampleError::InvalidPartition { k, n });
            }
            let cross = match config.class {
                ClassId::A2 => coin_cross(k, n - k, &mut rng),
                ClassId::A1 => {
                    let weights: Vec<BigUint> =
                        (0..=k).map(|j| binomial(k, j) * binomial(n - k, j) * factorial(j)).collect();
                    let j = pick_weighted(&weights, &mut rng);
                    matching_cross(k, n - k, j, &mut rng)
                }
            };
            Ok(BipartiteForm::from_parts((0..k).collect(), (k..n).collect(), cross).to_space())
        }
    }
}

/// Index `i` with probability `weights[i] / Σ weights`.
fn pick_weighted<R: Rng>(weights: &[BigUint], rng: &mut R) -> usize {
    let total: BigUint = weights.iter().sum();
    let mut r = rng.gen_biguint_below(&total);
    for (i, w) in weights.iter().enumerate() {
        if r < *w {
            return i;
        }
        r -= w;
    }
    unreachable!("draw below total weight")
}

fn coin_cross<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CrossMatrix {
    CrossMatrix::from_fn(rows, cols, |_, _| if rng.gen::<bool>() { 3 } else { 1 })
}

/// Uniform cross matrix with exactly `j` 3-entries forming a matching.
fn matching_cross<R: Rng>(rows: usize, cols: usize, j: usize, rng: &mut R) -> CrossMatrix {
    let mut rs = index::sample(rng, rows, j).into_vec();
    rs.sort_unstable();
    let mut cs = index::sample(rng, cols, j).into_vec();
    cs.sort_unstable();
    cs.shuffle(rng);
    let mut data = vec![1u8; rows * cols];
    for (&r, &c) in rs.iter().zip(&cs) {
        data[r * cols + c] = 3;
    }
    CrossMatrix::new(rows, cols, data)
}

/// Inverse-transform sampler over the labeled members on `n` points.
///
/// Cells are split sizes `k` (and matching sizes `j` for A1) weighted by
/// their exact labeled counts; inside a cell the partition and cross
/// matrix are uniform.
#[derive(Debug, Clone)]
pub struct UniformSampler {
    n: usize,
    class: ClassId,
    cells: Vec<(usize, usize)>,
    weights: Vec<BigUint>,
}

impl UniformSampler {
    pub fn new(n: usize, class: ClassId) -> Self {
        let mut cells = Vec::new();
        let mut weights = Vec::new();
        for k in 0..=n / 2 {
            match class {
                ClassId::A1 => {
                    for j in 0..=k {
                        cells.push((k, j));
                        weights.push(a1_labeled_weight(n, k, j));
                    }
                }
                ClassId::A2 => {
                    let t = a2_ordered_term(n, k);
                    cells.push((k, 0));
                    weights.push(if is_balanced(n, k) { t >> 1 } else { t });
                }
            }
        }
        debug_assert!(weights.iter().all(|w| !w.is_zero()));
        UniformSampler { n, class, cells, weights }
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> MetricSpace {
        let n = self.n;
        let (k, j) = self.cells[pick_weighted(&self.weights, rng)];
        let small: Vec<usize> = if is_balanced(n, k) {
            index::sample(rng, n - 1, k).into_iter().map(|v| v + 1).collect()
        } else {
            index::sample(rng, n, k).into_vec()
        };
        let mut small = small;
        small.sort_unstable();
        let large: Vec<usize> = (0..n).filter(|v| small.binary_search(v).is_err()).collect();
        let cross = match self.class {
            ClassId::A1 => matching_cross(k, n - k, j, rng),
            ClassId::A2 => coin_cross(k, n - k, rng),
        };
        BipartiteForm::from_parts(small, large, cross).to_space()
    }
}
