//! Closed-form counts: the published finite sums and the corrected ones.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::burnside::{matrices_up_to_row_col, square_matrices_up_to_swap};
use super::EnumError;
use crate::space::ClassId;

/// Largest `n` accepted by the Burnside counter.
pub const BURNSIDE_MAX_N: usize = 40;

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Whether the partition with small part `k` has two parts of equal,
/// non-zero size, so that ordered side choices count it twice.
pub(crate) fn is_balanced(n: usize, k: usize) -> bool {
    n > 0 && 2 * k == n
}

/// `C(n,k) C(k,j) C(n-k,j) j!`: labeled A1 spaces with a chosen small side
/// of size `k` and `j` 3-edges, counting ordered side choices.
pub fn a1_ordered_term(n: usize, k: usize, j: usize) -> BigUint {
    binomial(n, k) * binomial(k, j) * binomial(n - k, j) * factorial(j)
}

/// Labeled A1 members with parts `k ≤ n-k` and `j` 3-edges.
pub fn a1_labeled_weight(n: usize, k: usize, j: usize) -> BigUint {
    let t = a1_ordered_term(n, k, j);
    if is_balanced(n, k) {
        t >> 1
    } else {
        t
    }
}

/// Isometry group order of the A1 class with parameters `(k, j)`:
/// `j! (k-j)! (n-k-j)!`, doubled by the part swap when `k = n - k`.
pub fn a1_automorphism_order(n: usize, k: usize, j: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    if is_balanced(n, k) {
        factorial(j) * factorial(k - j).pow(2) * 2u32
    } else {
        factorial(j) * factorial(k - j) * factorial(n - k - j)
    }
}

/// `C(n,k) 2^{k(n-k)}`: labeled A2 spaces with a chosen small side of size
/// `k`, counting ordered side choices.
pub fn a2_ordered_term(n: usize, k: usize) -> BigUint {
    binomial(n, k) << (k * (n - k))
}

/// The published per-`k` summand of the labeled count (ordered side choices).
pub fn labeled_paper_term(n: usize, k: usize, class: ClassId) -> BigUint {
    match class {
        ClassId::A1 => (0..=k).map(|j| a1_ordered_term(n, k, j)).sum(),
        ClassId::A2 => a2_ordered_term(n, k),
    }
}

/// The published labeled sums, evaluated verbatim:
/// A1 `Σ_k Σ_j C(n,k)C(k,j)C(n-k,j)j!`, A2 `Σ_k C(n,k)2^{k(n-k)}`.
pub fn count_labeled_paper(n: usize, class: ClassId) -> BigUint {
    (0..=n / 2).map(|k| labeled_paper_term(n, k, class)).sum()
}

/// Number of labeled members: the published sum with the balanced
/// (`k = n/2`) term halved, since an unordered pair of equal parts was
/// counted once per side.
pub fn count_labeled_exact(n: usize, class: ClassId) -> BigUint {
    (0..=n / 2)
        .map(|k| {
            let t = labeled_paper_term(n, k, class);
            if is_balanced(n, k) {
                t >> 1
            } else {
                t
            }
        })
        .sum()
}

/// The balanced summand of the published labeled sum (zero for odd `n`).
pub fn balanced_paper_term(n: usize, class: ClassId) -> BigUint {
    if n % 2 == 0 && n > 0 {
        labeled_paper_term(n, n / 2, class)
    } else {
        BigUint::zero()
    }
}

/// The published unlabeled counts.
///
/// A1: `⌊n/2⌋²/2 + 3⌊n/2⌋/2 + 1`; A2: `Σ_k ∏_{i=1}^{k}(n-k+i) / k!`.
pub fn count_unlabeled_paper(n: usize, class: ClassId) -> BigUint {
    let half = n / 2;
    match class {
        ClassId::A1 => {
            let h = BigUint::from(half);
            let twice = &h * &h + h * 3u32 + 2u32;
            let (q, r) = twice.div_rem(&BigUint::from(2u32));
            debug_assert!(r.is_zero());
            q
        }
        ClassId::A2 => (0..=half)
            .map(|k| {
                let prod: BigUint = (1..=k).fold(BigUint::one(), |acc, i| acc * (n - k + i));
                let (q, r) = prod.div_rem(&factorial(k));
                debug_assert!(r.is_zero());
                q
            })
            .sum(),
    }
}

/// Number of isometry classes.
///
/// A1: `Σ_k (k+1)`, one class per matching size. A2: Burnside over row and
/// column permutations for each split, with the part swap folded in when
/// the parts have equal size.
pub fn count_unlabeled_exact(n: usize, class: ClassId) -> Result<BigUint, EnumError> {
    match class {
        ClassId::A1 => Ok((0..=n / 2).map(|k| BigUint::from(k + 1)).sum()),
        ClassId::A2 => {
            if n > BURNSIDE_MAX_N {
                return Err(EnumError::Capacity { what: "Burnside class count", n, max: BURNSIDE_MAX_N });
            }
            Ok((0..=n / 2)
                .map(|k| if 2 * k == n { square_matrices_up_to_swap(k) } else { matrices_up_to_row_col(k, n - k) })
                .sum())
        }
    }
}
