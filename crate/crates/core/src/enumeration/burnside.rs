//! Orbit counting for {1,3}-matrices under row and column permutations.
//!
//! The number of orbits of a group acting on `2^cells` colourings is the
//! average of `2^(cycles of g on cells)`. Cycle counts only depend on the
//! conjugacy class of `g`, so the sum runs over pairs of integer partitions
//! weighted by class sizes.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::counts::factorial;

/// All partitions of `k` as non-increasing part lists.
pub fn integer_partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// Number of permutations of `k` points with cycle type `parts`:
/// `k! / ∏ i^{m_i} m_i!`.
pub fn conjugacy_class_size(parts: &[usize]) -> BigUint {
    let k: usize = parts.iter().sum();
    let mut z = BigUint::one();
    let mut i = 0;
    while i < parts.len() {
        let len = parts[i];
        let mult = parts[i..].iter().take_while(|&&p| p == len).count();
        z *= BigUint::from(len).pow(mult as u32) * factorial(mult);
        i += mult;
    }
    let (q, r) = factorial(k).div_rem(&z);
    debug_assert!(r.is_zero());
    q
}

fn gcd_exponent(rows: &[usize], cols: &[usize]) -> u64 {
    rows.iter().flat_map(|&a| cols.iter().map(move |&b| a.gcd(&b) as u64)).sum()
}

/// Sum over all (σ, τ) ∈ S_rows × S_cols of `2^(cycles on cells)`.
fn product_group_fixed_sum(rows: usize, cols: usize) -> BigUint {
    let row_types = integer_partitions(rows);
    let col_types = integer_partitions(cols);
    let col_sizes: Vec<BigUint> = col_types.iter().map(|t| conjugacy_class_size(t)).collect();
    let mut total = BigUint::zero();
    for rt in &row_types {
        let rs = conjugacy_class_size(rt);
        for (ct, cs) in col_types.iter().zip(&col_sizes) {
            total += (BigUint::one() << gcd_exponent(rt, ct)) * &rs * cs;
        }
    }
    total
}

/// Cycles of `(a, b) ↦ (γ(b), a)` on a `k × k` grid, where `γ` has cycle
/// type `parts`. This is the cell action of a part-swapping vertex
/// permutation after identifying the two parts.
fn swap_cell_cycles(parts: &[usize]) -> u64 {
    let k: usize = parts.iter().sum();
    let mut gamma = vec![0usize; k];
    let mut start = 0;
    for &len in parts {
        for i in 0..len {
            gamma[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    let mut seen = vec![false; k * k];
    let mut cycles = 0;
    for cell in 0..k * k {
        if seen[cell] {
            continue;
        }
        cycles += 1;
        let mut c = cell;
        while !seen[c] {
            seen[c] = true;
            let (a, b) = (c / k, c % k);
            c = gamma[b] * k + a;
        }
    }
    cycles
}

/// Number of `rows × cols` {1,3}-matrices up to row and column permutations.
pub fn matrices_up_to_row_col(rows: usize, cols: usize) -> BigUint {
    let order = factorial(rows) * factorial(cols);
    let (q, r) = product_group_fixed_sum(rows, cols).div_rem(&order);
    debug_assert!(r.is_zero());
    q
}

/// Number of `k × k` {1,3}-matrices up to row and column permutations and
/// transposition (the part swap of a balanced bipartite space).
pub fn square_matrices_up_to_swap(k: usize) -> BigUint {
    let kf = factorial(k);
    let mut swapped = BigUint::zero();
    for t in integer_partitions(k) {
        swapped += (BigUint::one() << swap_cell_cycles(&t)) * conjugacy_class_size(&t);
    }
    let total = product_group_fixed_sum(k, k) + swapped * &kf;
    let order = kf.pow(2) * 2u32;
    let (q, r) = total.div_rem(&order);
    debug_assert!(r.is_zero());
    q
}
