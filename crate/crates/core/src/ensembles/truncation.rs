//! Finite truncations of the three limit structures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::space::{validate, BipartiteForm, ClassId, CrossMatrix, MetricSpace};

/// Which limit structure to truncate, with its sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationSpec {
    /// Two parts of `m` points, 3-edges a perfect matching.
    Gamma378 { m: usize },
    /// Two parts of `t + u` points, 3-edges a matching of size `t`.
    GammaAs { t: usize, u: usize },
    /// Two parts of `m` points, cross entries independent fair coins.
    Gamma3710 { m: usize, seed: u64 },
}

impl TruncationSpec {
    pub fn class(&self) -> ClassId {
        match self {
            TruncationSpec::Gamma378 { .. } | TruncationSpec::GammaAs { .. } => ClassId::A1,
            TruncationSpec::Gamma3710 { .. } => ClassId::A2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TruncationSpec::Gamma378 { .. } => "g378",
            TruncationSpec::GammaAs { .. } => "gas",
            TruncationSpec::Gamma3710 { .. } => "g3710",
        }
    }
}

/// Builds the truncation with parts `0..s` and `s..2s`; matched pairs are
/// `(i, s + i)`.
pub fn build_truncation(spec: &TruncationSpec) -> MetricSpace {
    let (side, cross) = match *spec {
        TruncationSpec::Gamma378 { m } => (m, CrossMatrix::from_fn(m, m, |r, c| if r == c { 3 } else { 1 })),
        TruncationSpec::GammaAs { t, u } => {
            (t + u, CrossMatrix::from_fn(t + u, t + u, |r, c| if r == c && r < t { 3 } else { 1 }))
        }
        TruncationSpec::Gamma3710 { m, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (m, CrossMatrix::from_fn(m, m, |_, _| if rng.gen::<bool>() { 3 } else { 1 }))
        }
    };
    let space = BipartiteForm::from_parts((0..side).collect(), (side..2 * side).collect(), cross).to_space();
    assert!(validate(&space, spec.class()).is_member(), "{} truncation left its class", spec.name());
    space
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::check_divergence_witness;

    #[test]
    fn sizes_and_witness() {
        let g = build_truncation(&TruncationSpec::Gamma378 { m: 3 });
        assert_eq!(g.n(), 6);
        assert!(check_divergence_witness(&g));
        let g = build_truncation(&TruncationSpec::GammaAs { t: 2, u: 2 });
        assert_eq!(g.n(), 8);
        assert!(!check_divergence_witness(&g));
        for seed in 0..20 {
            let g = build_truncation(&TruncationSpec::Gamma3710 { m: 1, seed });
            assert_eq!(g.n(), 2);
            assert!(matches!(g.get(0, 1), 1 | 3));
        }
        assert_eq!(build_truncation(&TruncationSpec::Gamma378 { m: 0 }), MetricSpace::empty());
    }

    #[test]
    fn seeded_generic_truncation_is_reproducible() {
        let spec = TruncationSpec::Gamma3710 { m: 16, seed: 7 };
        assert_eq!(build_truncation(&spec), build_truncation(&spec));
        assert_ne!(build_truncation(&spec), build_truncation(&TruncationSpec::Gamma3710 { m: 16, seed: 8 }));
    }
}
