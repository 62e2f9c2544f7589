//! Spot-check of the amalgamation property over small bases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniformSampler;
use crate::enumeration::{enumerate_labeled_oracle, EnumError};
use crate::exec::{self, Strategy};
use crate::space::{validate, ClassId, MetricSpace};

/// Bases searched by [`amalgamation_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmalgamationMode {
    /// Every labeled base up to the size limit, every pair of extensions.
    Exhaustive,
    /// Random bases of random size up to the limit, a random pair each.
    Trials { count: usize, seed: u64 },
}

/// A base with two one-point extensions that no distance `d(x, y)` joins
/// and that cannot be identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamationFailure {
    pub base: MetricSpace,
    /// `x[i] = d(x, b_i)`.
    pub x: Vec<u8>,
    pub y: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamationReport {
    pub class: ClassId,
    pub base_max: usize,
    pub bases: usize,
    pub pairs: usize,
    /// Pairs joined only by identifying `x` with `y`.
    pub identified: usize,
    pub failures: Vec<AmalgamationFailure>,
}

/// Checks that any two one-point extensions of a base amalgamate: either
/// some `d(x, y) ∈ {1,2,3}` keeps `B ∪ {x, y}` in the class, or `x` and `y`
/// have the same distances to the base and are identified.
pub fn amalgamation_check(
    class: ClassId,
    base_max: usize,
    mode: AmalgamationMode,
    strategy: Strategy,
) -> Result<AmalgamationReport, EnumError> {
    let mut bases = Vec::new();
    let mut picks: Vec<Option<(usize, usize)>> = Vec::new();
    match mode {
        AmalgamationMode::Exhaustive => {
            for b in 0..=base_max {
                for base in enumerate_labeled_oracle(b, class, false)? {
                    bases.push(base);
                    picks.push(None);
                }
            }
        }
        AmalgamationMode::Trials { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let b = rng.gen_range(0..=base_max);
                bases.push(UniformSampler::new(b, class).draw(&mut rng));
                picks.push(Some((rng.gen(), rng.gen())));
            }
        }
    }
    let work: Vec<(MetricSpace, Option<(usize, usize)>)> = bases.into_iter().zip(picks).collect();
    let per_base = exec::map_slice(strategy, &work, |(base, pick)| check_base(class, base, *pick));
    let mut report =
        AmalgamationReport { class, base_max, bases: work.len(), pairs: 0, identified: 0, failures: Vec::new() };
    for (pairs, identified, failures) in per_base {
        report.pairs += pairs;
        report.identified += identified;
        report.failures.extend(failures);
    }
    Ok(report)
}

/// Distance profiles `p` for which `base ∪ {x}` with `d(x, b_i) = p[i]` is
/// in the class.
fn extensions(class: ClassId, base: &MetricSpace) -> Vec<Vec<u8>> {
    let b = base.n();
    let mut out = Vec::new();
    let mut profile = vec![1u8; b];
    loop {
        if validate(&extend(base, &[&profile], None), class).is_member() {
            out.push(profile.clone());
        }
        let Some(pos) = profile.iter().rposition(|&d| d < 3) else { break };
        profile[pos] += 1;
        profile[pos + 1..].fill(1);
    }
    out
}

/// `base` plus one point per profile; `d(x, y)` between the first two added
/// points when given.
fn extend(base: &MetricSpace, profiles: &[&[u8]], dxy: Option<u8>) -> MetricSpace {
    let b = base.n();
    MetricSpace::from_fn(b + profiles.len(), |i, j| {
        if j < b {
            base.get(i, j)
        } else if i < b {
            profiles[j - b][i]
        } else {
            dxy.expect("distance between added points")
        }
    })
    .expect("profiles hold distances in 1..=3")
}

fn check_base(
    class: ClassId,
    base: &MetricSpace,
    pick: Option<(usize, usize)>,
) -> (usize, usize, Vec<AmalgamationFailure>) {
    let exts = extensions(class, base);
    let pairs: Vec<(usize, usize)> = match pick {
        None => (0..exts.len()).flat_map(|a| (a..exts.len()).map(move |c| (a, c))).collect(),
        Some((a, c)) if !exts.is_empty() => vec![(a % exts.len(), c % exts.len())],
        Some(_) => Vec::new(),
    };
    let mut identified = 0;
    let mut failures = Vec::new();
    for &(a, c) in &pairs {
        let (x, y) = (&exts[a], &exts[c]);
        let joined = [1u8, 2, 3].iter().any(|&d| validate(&extend(base, &[x, y], Some(d)), class).is_member());
        if joined {
            continue;
        }
        if x == y {
            identified += 1;
        } else {
            failures.push(AmalgamationFailure { base: base.clone(), x: x.clone(), y: y.clone() });
        }
    }
    (pairs.len(), identified, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small_bases() {
        let r = amalgamation_check(ClassId::A1, 2, AmalgamationMode::Exhaustive, Strategy::default()).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert!(r.identified > 0);
        let r = amalgamation_check(ClassId::A2, 2, AmalgamationMode::Exhaustive, Strategy::default()).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.identified, 0);
    }

    #[test]
    fn empty_base_joins_at_any_distance() {
        let exts = extensions(ClassId::A1, &MetricSpace::empty());
        assert_eq!(exts, vec![Vec::<u8>::new()]);
        for d in 1..=3 {
            assert!(validate(&extend(&MetricSpace::empty(), &[&[], &[]], Some(d)), ClassId::A1).is_member());
        }
    }

    #[test]
    fn trials_are_reproducible() {
        let mode = AmalgamationMode::Trials { count: 200, seed: 3 };
        let a = amalgamation_check(ClassId::A2, 6, mode, Strategy::Sequential).unwrap();
        let b = amalgamation_check(ClassId::A2, 6, mode, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.failures.is_empty());
    }
}
