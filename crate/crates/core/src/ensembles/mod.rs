//! Seeded samplers, asymmetry statistics, limit-structure truncations and
//! the amalgamation spot-check.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`. Monte Carlo
//! work is cut into fixed chunks of [`CHUNK_SIZE`] draws; chunk `c` uses
//! ChaCha stream `c`, so results do not depend on the thread count or on
//! the execution strategy.

mod amalgamation;
mod sampler;
mod truncation;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumeration::{count_labeled_exact, enumerate_unlabeled_with, factorial, EnumError};
use crate::exec::{self, Strategy};
use crate::space::{is_asymmetric, ClassId};

pub use amalgamation::{amalgamation_check, AmalgamationFailure, AmalgamationMode, AmalgamationReport};
pub use sampler::{sample, SampleError, SamplerConfig, SamplerModel, UniformSampler};
pub use truncation::{build_truncation, TruncationSpec};

/// Draws per Monte Carlo work unit.
pub const CHUNK_SIZE: usize = 256;

/// Largest `n` for the exact asymmetric fraction without an override.
pub const EXACT_ASYMMETRY_MAX_N: usize = 6;

/// RNG for Monte Carlo chunk `chunk` of a run seeded with `seed`.
pub fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymmetryMode {
    MonteCarlo,
    Exact,
}

/// `hits` asymmetric members out of `samples`; in exact mode `samples` is
/// the number of labeled members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymmetryReport {
    pub n: usize,
    pub class: ClassId,
    pub mode: AsymmetryMode,
    pub hits: BigUint,
    pub samples: BigUint,
    pub estimate: BigRational,
}

impl AsymmetryReport {
    fn new(n: usize, class: ClassId, mode: AsymmetryMode, hits: BigUint, samples: BigUint) -> Self {
        let estimate = BigRational::new(BigInt::from(hits.clone()), BigInt::from(samples.clone()));
        AsymmetryReport { n, class, mode, hits, samples, estimate }
    }

    pub fn estimate_f64(&self) -> f64 {
        ratio_f64(&self.hits, &self.samples)
    }
}

fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    use num_traits::ToPrimitive;
    let r = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
    r.to_f64().unwrap_or(f64::NAN)
}

/// Fraction of uniformly drawn labeled members that are asymmetric.
pub fn estimate_asymmetric_fraction(
    n: usize,
    class: ClassId,
    samples: usize,
    seed: u64,
    strategy: Strategy,
) -> AsymmetryReport {
    assert!(samples >= 1, "at least one sample is required");
    let sampler = UniformSampler::new(n, class);
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let hits: usize = exec::map_range(strategy, chunks, |c| {
        let mut rng = chunk_rng(seed, c);
        let draws = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
        (0..draws).filter(|_| is_asymmetric(&sampler.draw(&mut rng))).count()
    })
    .into_iter()
    .sum();
    AsymmetryReport::new(n, class, AsymmetryMode::MonteCarlo, hits.into(), samples.into())
}

/// Exact fraction of asymmetric labeled members: each asymmetric isometry
/// class contributes `n!` labelings.
pub fn exact_asymmetric_fraction(
    n: usize,
    class: ClassId,
    force: bool,
    strategy: Strategy,
) -> Result<AsymmetryReport, EnumError> {
    if n > EXACT_ASYMMETRY_MAX_N && !force {
        return Err(EnumError::Capacity { what: "exact asymmetric fraction", n, max: EXACT_ASYMMETRY_MAX_N });
    }
    let descriptors = enumerate_unlabeled_with(n, class, strategy)?;
    let nf = factorial(n);
    let hits = descriptors
        .iter()
        .filter(|d| d.aut_order.is_one())
        .fold(BigUint::zero(), |acc, _| acc + &nf);
    Ok(AsymmetryReport::new(n, class, AsymmetryMode::Exact, hits, count_labeled_exact(n, class)))
}
