//! Longest increasing subsequences: the O(n log n) algorithm, uniform
//! samplers for permutations and fixed-point-free involutions, and exact
//! small-n distributions by exhaustive enumeration.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Length of the longest strictly increasing subsequence, by patience
/// sorting: `tops[k]` holds the smallest possible tail of an increasing
/// subsequence of length k+1.
pub fn lis<T: PartialOrd>(seq: &[T]) -> usize {
    let mut tops: Vec<&T> = Vec::new();
    for x in seq {
        let pos = tops.partition_point(|&t| t < x);
        if pos == tops.len() {
            tops.push(x);
        } else {
            tops[pos] = x;
        }
    }
    tops.len()
}

/// Uniform random permutation of {0, …, n−1} (Fisher–Yates).
pub fn sample_permutation(n: usize, rng: &mut impl Rng) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    perm
}

/// Uniform random fixed-point-free involution of {0, …, two_n−1}: repeatedly
/// match the smallest unmatched index with a uniformly chosen free partner.
/// Every perfect matching arises with probability 1/(two_n−1)!!.
pub fn sample_fpf_involution(two_n: usize, rng: &mut impl Rng) -> Result<Vec<u32>> {
    if two_n % 2 != 0 {
        return Err(Error::domain(
            "fixed-point-free involutions need an even ground set",
        ));
    }
    let mut perm = vec![0u32; two_n];
    let mut free: Vec<u32> = (0..two_n as u32).collect();
    while !free.is_empty() {
        let i = free[0];
        let pick = rng.gen_range(1..free.len());
        let j = free[pick];
        perm[i as usize] = j;
        perm[j as usize] = i;
        free.swap_remove(pick);
        free.remove(0);
    }
    Ok(perm)
}

/// Which family [`exact_lis_distribution`] enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LisKind {
    Permutation,
    FpfInvolution,
}

const PERMUTATION_CAP: u32 = 10;
const INVOLUTION_CAP: u32 = 12;

/// Exact distribution of the LIS length over all permutations of size n
/// (n ≤ 10) or all fixed-point-free involutions of {1..n} (n even, ≤ 12).
///
/// Entry l−1 of the result is Pr(L ≤ l) as an exact fraction
/// (favorable count, total count), for l = 1..=n.
pub fn exact_lis_distribution(n: usize, kind: LisKind) -> Result<Vec<(u64, u64)>> {
    let mut tally = vec![0u64; n.max(1)];
    let total = match kind {
        LisKind::Permutation => {
            if n as u32 > PERMUTATION_CAP {
                return Err(Error::SizeLimit {
                    weight: n as u32,
                    limit: PERMUTATION_CAP,
                });
            }
            let mut total = 0u64;
            for_each_permutation(n, |perm| {
                tally[lis(perm).max(1) - 1] += 1;
                total += 1;
            });
            total
        }
        LisKind::FpfInvolution => {
            if n % 2 != 0 {
                return Err(Error::domain(
                    "fixed-point-free involutions need an even ground set",
                ));
            }
            if n as u32 > INVOLUTION_CAP {
                return Err(Error::SizeLimit {
                    weight: n as u32,
                    limit: INVOLUTION_CAP,
                });
            }
            let mut total = 0u64;
            let mut perm = vec![0u32; n];
            let free: Vec<u32> = (0..n as u32).collect();
            enumerate_matchings(free, &mut perm, &mut |perm| {
                tally[lis(perm).max(1) - 1] += 1;
                total += 1;
            });
            total
        }
    };

    let mut cumulative = 0;
    Ok(tally
        .into_iter()
        .map(|count| {
            cumulative += count;
            (cumulative, total)
        })
        .collect())
}

/// Heap's algorithm; visits all n! orderings of {0, …, n−1}.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[u32])) {
    let mut arr: Vec<u32> = (0..n as u32).collect();
    if n == 0 {
        visit(&arr);
        return;
    }
    let mut counters = vec![0usize; n];
    visit(&arr);
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                arr.swap(0, i);
            } else {
                arr.swap(counters[i], i);
            }
            visit(&arr);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Visit every perfect matching of the given free indices (as involutions
/// written into `perm`).
fn enumerate_matchings(free: Vec<u32>, perm: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if free.is_empty() {
        visit(perm);
        return;
    }
    let i = free[0];
    for pick in 1..free.len() {
        let j = free[pick];
        perm[i as usize] = j;
        perm[j as usize] = i;
        let rest: Vec<u32> = free[1..]
            .iter()
            .copied()
            .filter(|&k| k != j)
            .collect();
        enumerate_matchings(rest, perm, visit);
    }
}

/// Number of standard Young tableaux of the given shape, |λ|!/∏ hooks.
///
/// Exact in integer arithmetic; intended for enumeration-scale weights
/// (|λ| ≤ 32 is always safe).
pub fn hook_length_count(lambda: &Partition) -> u64 {
    let n = lambda.weight();
    assert!(n <= 32, "hook_length_count is for small weights");
    let conjugate = lambda.conjugate();
    let mut factorial: u128 = 1;
    for k in 2..=n as u128 {
        factorial *= k;
    }
    let mut hooks: u128 = 1;
    for (row, col) in lambda.boxes() {
        let arm = lambda.parts()[row] as u128 - col as u128 - 1;
        let leg = conjugate.parts()[col] as u128 - row as u128 - 1;
        hooks *= arm + leg + 1;
    }
    (factorial / hooks) as u64
}
