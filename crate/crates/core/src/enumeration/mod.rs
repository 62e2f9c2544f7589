//! Exhaustive oracles, structured generators and exact counters for the
//! labeled and unlabeled members of A1 and A2.

pub mod burnside;
pub mod counts;
mod generate;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, Strategy};
use crate::space::{canonical_form, ClassId, CrossMatrix, MetricSpace};

pub use counts::{
    a1_automorphism_order, a1_labeled_weight, balanced_paper_term, binomial, count_labeled_exact,
    count_labeled_paper, count_unlabeled_exact, count_unlabeled_paper, factorial, BURNSIDE_MAX_N,
};
pub use generate::{
    enumerate_labeled_oracle, enumerate_labeled_oracle_with, enumerate_labeled_structured, enumerate_unlabeled,
    enumerate_unlabeled_with, ORACLE_FORCED_MAX_N, ORACLE_MAX_N, UNLABELED_A2_MAX_CELLS, UNLABELED_A2_MAX_N,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("the brute-force oracle is limited to n <= {max} (got n = {n}); use force to override")]
    OracleGuard { n: usize, max: usize },
    #[error("{what} is limited to n <= {max} (got n = {n})")]
    Capacity { what: &'static str, n: usize, max: usize },
}

/// Whether structures are counted on a fixed vertex set or up to isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Labeling {
    Labeled,
    Unlabeled,
}

impl Labeling {
    pub fn as_str(self) -> &'static str {
        match self {
            Labeling::Labeled => "labeled",
            Labeling::Unlabeled => "unlabeled",
        }
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Labeling {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "labeled" => Ok(Labeling::Labeled),
            "unlabeled" => Ok(Labeling::Unlabeled),
            other => Err(format!("unknown mode '{other}' (expected labeled or unlabeled)")),
        }
    }
}

/// One isometry class: its split size, its cross pattern and a
/// representative with the order of its isometry group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClassDescriptor {
    pub class: ClassId,
    pub k: usize,
    /// Matching size, for A1 classes.
    pub j: Option<usize>,
    pub cross: CrossMatrix,
    pub representative: MetricSpace,
    pub aut_order: BigUint,
}

/// Which counting methods a report runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Methods {
    pub formula: bool,
    pub exact: bool,
    pub oracle: bool,
}

impl Methods {
    pub const ALL: Methods = Methods { formula: true, exact: true, oracle: true };
}

/// Side-by-side counts of one `(n, class, mode)` cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub class: ClassId,
    pub mode: Labeling,
    pub paper: Option<BigUint>,
    pub exact: Option<BigUint>,
    pub oracle: Option<BigUint>,
    /// Published formula against the exact count (or the oracle when the
    /// exact counter was not run).
    pub agrees_paper: Option<bool>,
    /// Exact counter against the oracle.
    pub agrees_oracle: Option<bool>,
}

impl CountReport {
    /// Assembles a report and derives the agreement flags.
    pub fn from_parts(
        n: usize,
        class: ClassId,
        mode: Labeling,
        paper: Option<BigUint>,
        exact: Option<BigUint>,
        oracle: Option<BigUint>,
    ) -> Self {
        let reference = exact.as_ref().or(oracle.as_ref());
        let agrees_paper = paper.as_ref().zip(reference).map(|(p, r)| p == r);
        let agrees_oracle = exact.as_ref().zip(oracle.as_ref()).map(|(e, o)| e == o);
        CountReport { n, class, mode, paper, exact, oracle, agrees_paper, agrees_oracle }
    }

    /// The published formula disagrees with an independent count.
    pub fn has_paper_discrepancy(&self) -> bool {
        self.agrees_paper == Some(false)
    }

    /// The exact counter disagrees with the oracle, which is a defect.
    pub fn has_oracle_mismatch(&self) -> bool {
        self.agrees_oracle == Some(false)
    }
}

/// Published formula for one cell.
pub fn paper_count(n: usize, class: ClassId, mode: Labeling) -> BigUint {
    match mode {
        Labeling::Labeled => count_labeled_paper(n, class),
        Labeling::Unlabeled => count_unlabeled_paper(n, class),
    }
}

/// Exact counter for one cell.
pub fn exact_count(n: usize, class: ClassId, mode: Labeling) -> Result<BigUint, EnumError> {
    match mode {
        Labeling::Labeled => Ok(count_labeled_exact(n, class)),
        Labeling::Unlabeled => count_unlabeled_exact(n, class),
    }
}

/// Labeled oracle count, or the number of distinct canonical keys among the
/// oracle's spaces when unlabeled.
pub fn oracle_count(
    n: usize,
    class: ClassId,
    mode: Labeling,
    force: bool,
    strategy: Strategy,
) -> Result<BigUint, EnumError> {
    let spaces = enumerate_labeled_oracle_with(n, class, force, strategy)?;
    Ok(match mode {
        Labeling::Labeled => BigUint::from(spaces.len()),
        Labeling::Unlabeled => BigUint::from(distinct_keys(&spaces, strategy)),
    })
}

/// Number of isometry classes among `spaces`.
pub fn distinct_keys(spaces: &[MetricSpace], strategy: Strategy) -> usize {
    exec::map_slice(strategy, spaces, canonical_form).into_iter().collect::<BTreeSet<_>>().len()
}

pub fn count_report(
    n: usize,
    class: ClassId,
    mode: Labeling,
    methods: Methods,
    force: bool,
    strategy: Strategy,
) -> Result<CountReport, EnumError> {
    let paper = methods.formula.then(|| paper_count(n, class, mode));
    let exact = if methods.exact { Some(exact_count(n, class, mode)?) } else { None };
    let oracle = if methods.oracle { Some(oracle_count(n, class, mode, force, strategy)?) } else { None };
    Ok(CountReport::from_parts(n, class, mode, paper, exact, oracle))
}
