//! First-order sentence families over {1,2,3}-metric spaces and their exact
//! satisfaction proportions.
//!
//! Distance atoms on an identical pair are false for every value, so a
//! negated atom on an identical pair is true. Universally quantified
//! vertices in the "only 1-edges across" families skip the witness whose
//! atom they would otherwise degenerate.

mod eval;
mod proportion;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::enumeration::EnumError;

pub use eval::{
    check_divergence_witness, eval_extension_axiom, eval_sentence, find_extension_failure, ExtensionFailure,
};
pub use proportion::{
    convergence_table, paper_a1_labeled_ones_ratio, paper_a1_labeled_pairs_ratio, paper_a1_unlabeled_ratio,
    proportion, proportion_with, ConvergenceTable, ProportionMethod, ProportionRow, CONVERGENCE_THRESHOLD,
};

/// A sentence family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SentenceId {
    /// Every pair of distinct points is at distance 1, 2 or 3.
    A1Distances,
    /// No point has two 3-edges.
    A1NoTwoThrees,
    /// Every triple has three 2-edges or exactly one.
    A1Parts,
    /// Distinct `u_1..u_p`, distinct `v_1..v_p` with `d(u_i, v_i) = 3`.
    A1Pairs(usize),
    /// `2p` distinct points with only 1- and 2-edges.
    A1OnesUnlabeled(usize),
    /// As [`SentenceId::A1OnesUnlabeled`], plus `d(u_i, v_j) ≠ 2`: `p`
    /// such points on each side.
    A1OnesUnlabeledGloss(usize),
    /// `p` distinct points with only 1- and 2-edges.
    A1OnesLabeled(usize),
    A2Distances,
    A2Parts,
    /// Every point has at least `p` 1-edges.
    A2MinOnes(usize),
    /// Every point has at least `p` 3-edges.
    A2MinThrees(usize),
    /// Every premise `(X, Y, Z)` of sizes `(q, p, r)` has a one-point
    /// extension at distances 1, 2, 3 respectively.
    Extension { q: usize, p: usize, r: usize },
    /// Every point has a 3-edge.
    DivergenceWitness,
}

impl SentenceId {
    /// Families whose members are satisfied by every space of the class.
    pub fn is_structural(self) -> bool {
        matches!(
            self,
            SentenceId::A1Distances
                | SentenceId::A1NoTwoThrees
                | SentenceId::A1Parts
                | SentenceId::A2Distances
                | SentenceId::A2Parts
        )
    }

    fn family(self) -> &'static str {
        match self {
            SentenceId::A1Distances => "a1.distances",
            SentenceId::A1NoTwoThrees => "a1.no_two_threes",
            SentenceId::A1Parts => "a1.parts",
            SentenceId::A1Pairs(_) => "a1.pairs",
            SentenceId::A1OnesUnlabeled(_) => "a1.ones_unlabeled",
            SentenceId::A1OnesUnlabeledGloss(_) => "a1.ones_unlabeled_gloss",
            SentenceId::A1OnesLabeled(_) => "a1.ones_labeled",
            SentenceId::A2Distances => "a2.distances",
            SentenceId::A2Parts => "a2.parts",
            SentenceId::A2MinOnes(_) => "a2.min_ones",
            SentenceId::A2MinThrees(_) => "a2.min_threes",
            SentenceId::Extension { .. } => "ext",
            SentenceId::DivergenceWitness => "divergence_witness",
        }
    }
}

impl fmt::Display for SentenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family())?;
        match *self {
            SentenceId::A1Pairs(p)
            | SentenceId::A1OnesUnlabeled(p)
            | SentenceId::A1OnesUnlabeledGloss(p)
            | SentenceId::A1OnesLabeled(p)
            | SentenceId::A2MinOnes(p)
            | SentenceId::A2MinThrees(p) => write!(f, "?p={p}"),
            SentenceId::Extension { q, p, r } => write!(f, "?q={q}&p={p}&r={r}"),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SentenceParseError {
    #[error("unknown sentence family '{0}'")]
    UnknownFamily(String),
    #[error("sentence '{id}' expects parameters [{expected}]")]
    Parameters { id: String, expected: &'static str },
}

impl FromStr for SentenceId {
    type Err = SentenceParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (family, query) = match s.split_once('?') {
            Some((f, q)) => (f, Some(q)),
            None => (s, None),
        };
        let mut params: Vec<(&str, usize)> = Vec::new();
        let bad = |expected| SentenceParseError::Parameters { id: s.to_string(), expected };
        for pair in query.into_iter().flat_map(|q| q.split('&')) {
            let (key, value) = pair.split_once('=').ok_or_else(|| bad("key=value"))?;
            let value = value.parse::<usize>().map_err(|_| bad("non-negative integers"))?;
            if params.iter().any(|(k, _)| *k == key) {
                return Err(bad("distinct keys"));
            }
            params.push((key, value));
        }
        let take = |names: &[&str], expected: &'static str| -> Result<Vec<usize>, SentenceParseError> {
            if params.len() != names.len() {
                return Err(bad(expected));
            }
            names
                .iter()
                .map(|name| params.iter().find(|(k, _)| k == name).map(|&(_, v)| v).ok_or_else(|| bad(expected)))
                .collect()
        };
        let none = || take(&[], "none");
        let p = || take(&["p"], "p").map(|v| v[0]);
        Ok(match family {
            "a1.distances" => none().map(|_| SentenceId::A1Distances)?,
            "a1.no_two_threes" => none().map(|_| SentenceId::A1NoTwoThrees)?,
            "a1.parts" => none().map(|_| SentenceId::A1Parts)?,
            "a1.pairs" => SentenceId::A1Pairs(p()?),
            "a1.ones_unlabeled" => SentenceId::A1OnesUnlabeled(p()?),
            "a1.ones_unlabeled_gloss" => SentenceId::A1OnesUnlabeledGloss(p()?),
            "a1.ones_labeled" => SentenceId::A1OnesLabeled(p()?),
            "a2.distances" => none().map(|_| SentenceId::A2Distances)?,
            "a2.parts" => none().map(|_| SentenceId::A2Parts)?,
            "a2.min_ones" => SentenceId::A2MinOnes(p()?),
            "a2.min_threes" => SentenceId::A2MinThrees(p()?),
            "ext" => {
                let v = take(&["q", "p", "r"], "q, p, r")?;
                SentenceId::Extension { q: v[0], p: v[1], r: v[2] }
            }
            "divergence_witness" => none().map(|_| SentenceId::DivergenceWitness)?,
            other => return Err(SentenceParseError::UnknownFamily(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error("no closed-form evaluation of {sentence} over {class}")]
    NoAnalyticPath { sentence: SentenceId, class: crate::space::ClassId },
}
