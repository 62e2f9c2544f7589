//! Exact satisfaction proportions over the labeled and unlabeled ensembles.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{eval_sentence, LogicError, SentenceId};
use crate::enumeration::{
    a1_labeled_weight, binomial, enumerate_unlabeled_with, factorial, IsoClassDescriptor, Labeling,
};
use crate::exec::{self, Strategy};
use crate::space::{ClassId, CrossMatrix};

/// A proportion counts as converged once it reaches `99/100`.
pub const CONVERGENCE_THRESHOLD: (u32, u32) = (99, 100);

/// How satisfaction is decided per isometry class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProportionMethod {
    /// Closed-form predicates where available, direct evaluation otherwise.
    #[default]
    Auto,
    /// Closed-form predicates on `(k, j)` for A1 and on cross-matrix
    /// margins for A2; fails for families without one.
    Analytic,
    /// Evaluate the sentence on a representative of every class.
    Direct,
}

/// Proportion of members of `class` on `n` points satisfying `sentence`.
/// `numerator` and `denominator` are raw counts; `value` is reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProportionRow {
    pub n: usize,
    pub class: ClassId,
    pub sentence: SentenceId,
    pub ensemble: Labeling,
    pub numerator: BigUint,
    pub denominator: BigUint,
    pub value: BigRational,
}

impl ProportionRow {
    /// `value` rounded half-up to `digits` decimal places.
    pub fn decimal(&self, digits: u32) -> String {
        let scale = BigUint::from(10u32).pow(digits);
        let (q, r) = (&self.numerator * &scale).div_rem(&self.denominator);
        let q = if r * 2u32 >= self.denominator { q + 1u32 } else { q };
        let (int, frac) = q.div_rem(&scale);
        if digits == 0 {
            return int.to_string();
        }
        format!("{int}.{:0>width$}", frac.to_string(), width = digits as usize)
    }

    pub fn reaches_threshold(&self) -> bool {
        let (a, b) = CONVERGENCE_THRESHOLD;
        &self.numerator * b >= &self.denominator * a
    }
}

/// Rows over a range of `n` with the least `n` whose value reaches
/// [`CONVERGENCE_THRESHOLD`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceTable {
    pub rows: Vec<ProportionRow>,
    pub first_n_reaching: Option<usize>,
}

pub fn proportion(n: usize, class: ClassId, sentence: SentenceId, ensemble: Labeling) -> Result<ProportionRow, LogicError> {
    proportion_with(n, class, sentence, ensemble, ProportionMethod::Auto, Strategy::default())
}

pub fn proportion_with(
    n: usize,
    class: ClassId,
    sentence: SentenceId,
    ensemble: Labeling,
    method: ProportionMethod,
    strategy: Strategy,
) -> Result<ProportionRow, LogicError> {
    let analytic = match method {
        ProportionMethod::Direct => false,
        ProportionMethod::Analytic => true,
        ProportionMethod::Auto => has_analytic_path(class, sentence),
    };
    if analytic && !has_analytic_path(class, sentence) {
        return Err(LogicError::NoAnalyticPath { sentence, class });
    }
    let (numerator, denominator) = if analytic && class == ClassId::A1 {
        a1_analytic_counts(n, sentence, ensemble)
    } else {
        let descriptors = enumerate_unlabeled_with(n, class, strategy)?;
        let nf = factorial(n);
        let weighed = exec::map_slice(strategy, &descriptors, |d| {
            let sat = if analytic {
                margin_predicate(&d.cross, sentence).expect("analytic path checked")
            } else {
                eval_sentence(&d.representative, sentence)
            };
            (sat, weight(&nf, d, ensemble))
        });
        weighed.into_iter().fold((BigUint::zero(), BigUint::zero()), |(num, den), (sat, w)| {
            (if sat { num + &w } else { num }, den + w)
        })
    };
    let value = BigRational::new(BigInt::from(numerator.clone()), BigInt::from(denominator.clone()));
    Ok(ProportionRow { n, class, sentence, ensemble, numerator, denominator, value })
}

pub fn convergence_table(
    class: ClassId,
    sentence: SentenceId,
    n_from: usize,
    n_to: usize,
    ensemble: Labeling,
    method: ProportionMethod,
    strategy: Strategy,
) -> Result<ConvergenceTable, LogicError> {
    let ns: Vec<usize> = (n_from..=n_to).collect();
    let rows = exec::map_slice(strategy, &ns, |&n| proportion_with(n, class, sentence, ensemble, method, strategy))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let first_n_reaching = rows.iter().find(|r| r.reaches_threshold()).map(|r| r.n);
    Ok(ConvergenceTable { rows, first_n_reaching })
}

fn weight(nf: &BigUint, d: &IsoClassDescriptor, ensemble: Labeling) -> BigUint {
    match ensemble {
        Labeling::Unlabeled => BigUint::one(),
        Labeling::Labeled => nf / &d.aut_order,
    }
}

fn has_analytic_path(class: ClassId, sentence: SentenceId) -> bool {
    match class {
        ClassId::A1 => a1_predicate(0, 0, 0, sentence).is_some(),
        ClassId::A2 => margin_predicate(&CrossMatrix::all_ones(0, 0), sentence).is_some(),
    }
}

fn a1_analytic_counts(n: usize, sentence: SentenceId, ensemble: Labeling) -> (BigUint, BigUint) {
    let mut num = BigUint::zero();
    let mut den = BigUint::zero();
    for k in 0..=n / 2 {
        for j in 0..=k {
            let w = match ensemble {
                Labeling::Unlabeled => BigUint::one(),
                Labeling::Labeled => a1_labeled_weight(n, k, j),
            };
            if a1_predicate(n, k, j, sentence).expect("analytic path checked") {
                num += &w;
            }
            den += w;
        }
    }
    (num, den)
}

/// Satisfaction on the A1 class with parts `k ≤ n - k` and `j` 3-edges.
fn a1_predicate(n: usize, k: usize, j: usize, sentence: SentenceId) -> Option<bool> {
    let m = n - k;
    // (present, 1-degree, 3-degree) for unmatched/matched points of each part.
    let kinds = [(k > j, m, 0), (j > 0, m.saturating_sub(1), 1), (m > j, k, 0), (j > 0, k.saturating_sub(1), 1)];
    let min_over = |f: fn(&(bool, usize, usize)) -> usize, p: usize| kinds.iter().filter(|t| t.0).all(|t| f(t) >= p);
    Some(match sentence {
        SentenceId::A1Distances
        | SentenceId::A2Distances
        | SentenceId::A1NoTwoThrees
        | SentenceId::A1Parts
        | SentenceId::A2Parts => true,
        SentenceId::A1Pairs(p) => 2 * j >= p,
        SentenceId::A1OnesUnlabeled(p) => n - 2 * j >= 2 * p,
        SentenceId::A1OnesUnlabeledGloss(p) => p == 0 || (k - j >= p && m - j >= p),
        SentenceId::A1OnesLabeled(p) => n - 2 * j >= p,
        SentenceId::A2MinOnes(p) => min_over(|t| t.1, p),
        SentenceId::A2MinThrees(p) => min_over(|t| t.2, p),
        SentenceId::DivergenceWitness => n == 2 * j,
        SentenceId::Extension { .. } => return None,
    })
}

/// Satisfaction on the bipartite member with cross matrix `cross`, read off
/// its row and column margins.
fn margin_predicate(cross: &CrossMatrix, sentence: SentenceId) -> Option<bool> {
    let (rows, cols) = (cross.rows(), cross.cols());
    let threes: Vec<usize> = (0..rows).map(|r| cross.row_threes(r)).chain((0..cols).map(|c| cross.col_threes(c))).collect();
    let ones: Vec<usize> = (0..rows).map(|r| cols - threes[r]).chain((0..cols).map(|c| rows - threes[rows + c])).collect();
    let free_rows = threes[..rows].iter().filter(|&&t| t == 0).count();
    let free_cols = threes[rows..].iter().filter(|&&t| t == 0).count();
    Some(match sentence {
        SentenceId::A1Distances | SentenceId::A2Distances | SentenceId::A1Parts | SentenceId::A2Parts => true,
        SentenceId::A1NoTwoThrees => threes.iter().all(|&t| t < 2),
        SentenceId::A1OnesUnlabeled(p) => free_rows + free_cols >= 2 * p,
        SentenceId::A1OnesUnlabeledGloss(p) => p == 0 || (free_rows >= p && free_cols >= p),
        SentenceId::A1OnesLabeled(p) => free_rows + free_cols >= p,
        SentenceId::A2MinOnes(p) => ones.iter().all(|&o| o >= p),
        SentenceId::A2MinThrees(p) => threes.iter().all(|&t| t >= p),
        SentenceId::DivergenceWitness => threes.iter().all(|&t| t >= 1),
        SentenceId::A1Pairs(_) | SentenceId::Extension { .. } => return None,
    })
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// The published unlabeled A1 ratio for the pairs and "only 1-edges across"
/// families: `Σ_{k=p}^{K} (k-p+1) / Σ_{i=1}^{K+1} i` with `K = ⌊n/2⌋`.
pub fn paper_a1_unlabeled_ratio(n: usize, p: usize) -> BigRational {
    let big_k = n / 2;
    let num: usize = (p..=big_k).map(|k| k - p + 1).sum();
    let den: usize = (1..=big_k + 1).sum();
    ratio(num.into(), den.into())
}

fn a1_published_sum(n: usize, js: impl Fn(usize) -> std::ops::RangeInclusive<usize>) -> BigUint {
    (0..=n / 2)
        .flat_map(|k| js(k).map(move |j| (k, j)))
        .map(|(k, j)| binomial(k, j) * binomial(n - k, j) * factorial(j))
        .sum()
}

/// The published labeled A1 ratio for the pairs family:
/// `Σ_k Σ_{j≥p} C(k,j)C(n-k,j)j! / Σ_k Σ_j C(k,j)C(n-k,j)j!`.
pub fn paper_a1_labeled_pairs_ratio(n: usize, p: usize) -> BigRational {
    ratio(a1_published_sum(n, |k| p..=k), a1_published_sum(n, |k| 0..=k))
}

/// The published labeled A1 ratio for the "only 1-edges across" family:
/// the inner sum runs over `j ≤ k - p`.
pub fn paper_a1_labeled_ones_ratio(n: usize, p: usize) -> BigRational {
    #[allow(clippy::reversed_empty_ranges)]
    let upto = |k: usize| if k >= p { 0..=k - p } else { 1..=0 };
    ratio(a1_published_sum(n, upto), a1_published_sum(n, |k| 0..=k))
}
