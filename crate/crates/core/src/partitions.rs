//! Integer partitions and the Jack-polynomial normalization products built
//! from them.
//!
//! Everything here is exact combinatorics: partitions `kappa` are weakly
//! decreasing sequences of positive parts, and the quantities attached to
//! them (`d_prime`, `h_norm`, `gen_pochhammer`, `c_at_identity`) are finite
//! products over the boxes of the Young diagram. The functions are generic
//! over a [`Scalar`] so the same code runs in `f64` for speed and in exact
//! rationals inside tests.

use crate::error::{Error, Result};
use num_traits::{FromPrimitive, One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar types the combinatorial layer can compute in: `f32`, `f64`, or an
/// exact rational type. Only ring/field operations and conversion from small
/// integers are required.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + FromPrimitive
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + PartialOrd
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
        + FromPrimitive
{
}

/// The Jack parameter `alpha`, validated to be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParam<S>(S);

impl<S: Scalar> AlphaParam<S> {
    pub fn new(alpha: S) -> Result<Self> {
        if alpha > S::zero() {
            Ok(AlphaParam(alpha))
        } else {
            Err(Error::domain("alpha must be strictly positive"))
        }
    }

    pub fn value(&self) -> &S {
        &self.0
    }
}

/// Convenience alias for the common floating-point case.
pub type Alpha = AlphaParam<f64>;

/// A partition: weakly decreasing positive parts. The empty partition is
/// allowed and has weight 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::domain("partition parts must be weakly decreasing"));
            }
        }
        if parts.last() == Some(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Conjugate partition (diagram transposed).
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0) as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 0..cols {
            parts.push(self.parts.iter().filter(|&&p| p as usize > j).count() as u32);
        }
        Partition { parts }
    }

    /// Iterate the boxes of the diagram as 0-based (row, column) pairs.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }
}

const WEIGHT_LIMIT: u32 = 64;

/// All partitions of `weight` with at most `max_parts` parts, in decreasing
/// lexicographic order. Errors with [`Error::SizeLimit`] for weight > 64.
pub fn iter_partitions(weight: u32, max_parts: u32) -> Result<PartitionIter> {
    if weight > WEIGHT_LIMIT {
        return Err(Error::SizeLimit {
            weight,
            limit: WEIGHT_LIMIT,
        });
    }
    Ok(PartitionIter::unchecked(weight, max_parts))
}

/// Iterator over partitions in decreasing lexicographic order.
pub struct PartitionIter {
    max_parts: usize,
    current: Option<Vec<u32>>,
}

impl PartitionIter {
    /// No weight cap; internal callers (hypergeometric level sums) manage
    /// their own limits.
    pub(crate) fn unchecked(weight: u32, max_parts: u32) -> Self {
        let current = if weight == 0 {
            Some(Vec::new())
        } else if max_parts == 0 {
            None
        } else {
            Some(vec![weight])
        };
        PartitionIter {
            max_parts: max_parts as usize,
            current,
        }
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.take()?;
        self.current = successor(&parts, self.max_parts);
        Some(Partition { parts })
    }
}

/// The next partition after `p` in decreasing lexicographic order among
/// partitions of the same weight with at most `max_parts` parts.
///
/// Scanning from the right, lower some part to `v = p[k] - 1` and refill the
/// tail sum greedily with parts of size at most `v`; the refill fits iff
/// `v * (max_parts - k) >= tail sum`, and shrinking `v` further only loses
/// capacity, so the first feasible `k` gives the answer.
fn successor(p: &[u32], max_parts: usize) -> Option<Vec<u32>> {
    let mut tail: u64 = 0;
    for k in (0..p.len()).rev() {
        tail += u64::from(p[k]);
        if p[k] < 2 {
            continue;
        }
        let v = p[k] - 1;
        let slots = (max_parts - k) as u64;
        if u64::from(v) * slots >= tail {
            // Greedy refill with parts capped at v yields the largest
            // continuation below the current suffix.
            let mut next = p[..k].to_vec();
            let mut rem = tail;
            while rem > 0 {
                let part = rem.min(u64::from(v)) as u32;
                next.push(part);
                rem -= u64::from(part);
            }
            return Some(next);
        }
    }
    None
}

/// `d'_kappa(alpha)`: the product over boxes of `alpha * (arm + 1) + leg`.
pub fn d_prime<S: Scalar>(kappa: &Partition, alpha: &AlphaParam<S>) -> S {
    let conj = kappa.conjugate();
    let mut prod = S::one();
    for (i, j) in kappa.boxes() {
        let arm = S::from_u32(kappa.parts()[i] - 1 - j as u32).unwrap();
        let leg = S::from_u32(conj.parts()[j] - 1 - i as u32).unwrap();
        prod = prod * (alpha.0.clone() * (arm + S::one()) + leg);
    }
    prod
}

/// `h_kappa(alpha)`: the product over boxes of `alpha * arm + leg + 1`.
pub fn h_norm<S: Scalar>(kappa: &Partition, alpha: &AlphaParam<S>) -> S {
    let conj = kappa.conjugate();
    let mut prod = S::one();
    for (i, j) in kappa.boxes() {
        let arm = S::from_u32(kappa.parts()[i] - 1 - j as u32).unwrap();
        let leg = S::from_u32(conj.parts()[j] - 1 - i as u32).unwrap();
        prod = prod * (alpha.0.clone() * arm + leg + S::one());
    }
    prod
}

/// Generalized Pochhammer symbol `[u]_kappa^(alpha)` as the finite product
/// `prod_j prod_{m=0}^{kappa_j - 1} (u - (j-1)/alpha + m)` over rows `j`.
///
/// Evaluating the product directly (never as a ratio of gamma values) keeps
/// the symbol exact for rational scalars and well-defined at the negative
/// integer arguments that terminate hypergeometric series.
pub fn gen_pochhammer<S: Scalar>(u: &S, kappa: &Partition, alpha: &AlphaParam<S>) -> S {
    let mut prod = S::one();
    for (row, &part) in kappa.parts().iter().enumerate() {
        let offset = S::from_usize(row).unwrap() / alpha.0.clone();
        for m in 0..part {
            let m = S::from_u32(m).unwrap();
            prod = prod * (u.clone() - offset.clone() + m);
        }
    }
    prod
}

/// The Jack polynomial `C_kappa^(alpha)` evaluated at `n` unit arguments:
/// `|kappa|! * alpha^(2|kappa|) * [n/alpha]_kappa / (h_kappa * d'_kappa)`.
///
/// Zero when the partition has more parts than there are variables.
pub fn c_at_identity<S: Scalar>(kappa: &Partition, alpha: &AlphaParam<S>, n: u32) -> S {
    if kappa.len() > n as usize {
        return S::zero();
    }
    let weight = kappa.weight();
    let mut num = S::one();
    for k in 1..=weight {
        num = num * S::from_u32(k).unwrap();
    }
    for _ in 0..2 * weight {
        num = num * alpha.0.clone();
    }
    let u = S::from_u32(n).unwrap() / alpha.0.clone();
    num = num * gen_pochhammer(&u, kappa, alpha);
    num / (h_norm(kappa, alpha) * d_prime(kappa, alpha))
}

/// `ln d'_kappa(alpha)` for `f64`; every factor is positive.
pub(crate) fn ln_d_prime(kappa: &Partition, alpha: f64) -> f64 {
    let conj = kappa.conjugate();
    let mut sum = 0.0;
    for (i, j) in kappa.boxes() {
        let arm = (kappa.parts()[i] - 1 - j as u32) as f64;
        let leg = (conj.parts()[j] - 1 - i as u32) as f64;
        sum += (alpha * (arm + 1.0) + leg).ln();
    }
    sum
}

/// `ln h_kappa(alpha)` for `f64`; every factor is positive.
pub(crate) fn ln_h_norm(kappa: &Partition, alpha: f64) -> f64 {
    let conj = kappa.conjugate();
    let mut sum = 0.0;
    for (i, j) in kappa.boxes() {
        let arm = (kappa.parts()[i] - 1 - j as u32) as f64;
        let leg = (conj.parts()[j] - 1 - i as u32) as f64;
        sum += (alpha * arm + leg + 1.0).ln();
    }
    sum
}

/// `[u]_kappa^(alpha)` in sign/log form: returns `(sign, ln |value|)` with
/// sign in {-1, 0, +1}.
pub(crate) fn ln_gen_pochhammer(u: f64, kappa: &Partition, alpha: f64) -> (f64, f64) {
    let mut sign = 1.0;
    let mut ln_abs = 0.0;
    for (row, &part) in kappa.parts().iter().enumerate() {
        let offset = row as f64 / alpha;
        for m in 0..part {
            let factor = u - offset + m as f64;
            if factor == 0.0 {
                return (0.0, f64::NEG_INFINITY);
            }
            sign *= factor.signum();
            ln_abs += factor.abs().ln();
        }
    }
    (sign, ln_abs)
}

/// `ln C_kappa^(alpha)(1^n)` for `f64`; `-inf` when the partition is longer
/// than `n`. The value is nonnegative for every valid input, so no sign is
/// returned.
pub(crate) fn ln_c_at_identity(kappa: &Partition, alpha: f64, n: u32) -> f64 {
    if kappa.len() > n as usize {
        return f64::NEG_INFINITY;
    }
    let weight = kappa.weight();
    let mut ln_fact = 0.0;
    for k in 2..=weight {
        ln_fact += (k as f64).ln();
    }
    let (_, ln_poch) = ln_gen_pochhammer(n as f64 / alpha, kappa, alpha);
    ln_fact + 2.0 * weight as f64 * alpha.ln() + ln_poch
        - ln_h_norm(kappa, alpha)
        - ln_d_prime(kappa, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_monotone_and_zero_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn conjugate_of_hook() {
        assert_eq!(part(&[3, 1, 1]).conjugate(), part(&[3, 1, 1]));
        assert_eq!(part(&[2, 1]).conjugate(), part(&[2, 1]));
        assert_eq!(part(&[4]).conjugate(), part(&[1, 1, 1, 1]));
    }

    #[test]
    fn partitions_of_eight_with_at_most_four_parts() {
        let all: Vec<Partition> = iter_partitions(8, 4).unwrap().collect();
        assert_eq!(all.len(), 15);
        assert_eq!(all[0], part(&[8]));
        assert_eq!(all[1], part(&[7, 1]));
        assert_eq!(all[14], part(&[2, 2, 2, 2]));
        for w in all.windows(2) {
            assert!(w[0].parts() > w[1].parts(), "not decreasing lex");
        }
        for p in &all {
            assert_eq!(p.weight(), 8);
            assert!(p.len() <= 4);
        }
    }

    #[test]
    fn zero_weight_yields_the_empty_partition() {
        let all: Vec<Partition> = iter_partitions(0, 3).unwrap().collect();
        assert_eq!(all, vec![Partition::empty()]);
        let none: Vec<Partition> = iter_partitions(3, 0).unwrap().collect();
        assert!(none.is_empty());
    }

    #[test]
    fn weight_cap_is_enforced() {
        assert!(matches!(
            iter_partitions(65, 3),
            Err(Error::SizeLimit { weight: 65, .. })
        ));
    }

    #[test]
    fn d_prime_and_h_norm_agree_with_hooks_at_alpha_one() {
        // At alpha = 1 both products reduce to the hook length product.
        let alpha = AlphaParam::new(1.0f64).unwrap();
        for (parts, hooks) in [
            (&[2u32, 1][..], 3.0),
            (&[3, 1, 1][..], 5.0 * 2.0 * 1.0 * 2.0 * 1.0),
            (&[2, 2][..], 3.0 * 2.0 * 2.0 * 1.0),
        ] {
            let kappa = part(parts);
            assert_eq!(d_prime(&kappa, &alpha), hooks);
            assert_eq!(h_norm(&kappa, &alpha), hooks);
        }
    }

    #[test]
    fn pochhammer_of_column_two() {
        // [u]_{(1,1)} = u (u - 1/alpha).
        let alpha = AlphaParam::new(rat(2, 1)).unwrap();
        let kappa = part(&[1, 1]);
        let u = rat(3, 2);
        let expect = rat(3, 2) * (rat(3, 2) - rat(1, 2));
        assert_eq!(gen_pochhammer(&u, &kappa, &alpha), expect);

        let alpha = AlphaParam::new(0.5f64).unwrap();
        let got = gen_pochhammer(&2.25f64, &kappa, &alpha);
        assert!((got - 2.25 * (2.25 - 2.0)).abs() < 1e-15);
    }

    #[test]
    fn single_box_at_identity_is_n() {
        let kappa = part(&[1]);
        for alpha in [0.5f64, 1.0, 2.0, 3.75] {
            let alpha = AlphaParam::new(alpha).unwrap();
            for n in 1..6 {
                let got = c_at_identity(&kappa, &alpha, n);
                assert!((got - n as f64).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn too_many_parts_gives_zero() {
        let alpha = AlphaParam::new(rat(1, 2)).unwrap();
        assert!(c_at_identity(&part(&[1, 1, 1]), &alpha, 2).is_zero());
    }

    #[test]
    fn schur_case_via_hook_content_formula() {
        // At alpha = 1, C_kappa(1^n) = |kappa|! s_kappa(1^n) / hooks, and the
        // principal specialization of the Schur function is
        // prod (n + j - i) / hook(i, j). Both sides exact in rationals.
        let alpha = AlphaParam::new(rat(1, 1)).unwrap();
        for parts in [&[2u32, 1][..], &[3, 2][..], &[4, 2, 1][..], &[2, 2, 2][..]] {
            let kappa = part(parts);
            let conj = kappa.conjugate();
            for n in kappa.len() as u32..7 {
                let mut schur = rat(1, 1);
                let mut hooks = rat(1, 1);
                for (i, j) in kappa.boxes() {
                    schur *= rat(n as i64 + j as i64 - i as i64, 1);
                    let hook = (kappa.parts()[i] - 1 - j as u32) + (conj.parts()[j] - 1 - i as u32) + 1;
                    hooks *= rat(hook as i64, 1);
                }
                let mut fact = rat(1, 1);
                for k in 2..=kappa.weight() as i64 {
                    fact *= rat(k, 1);
                }
                let expect = fact * schur.clone() / hooks.clone() / hooks.clone();
                assert_eq!(c_at_identity(&kappa, &alpha, n), expect);
            }
        }
    }

    #[test]
    fn duality_of_normalization_products() {
        // (h d')|_{alpha=2} for kappa equals d'|_{alpha=1} of the partition
        // with doubled parts, and 4^|kappa| (h d')|_{alpha=1/2} equals
        // d'|_{alpha=1} of the partition with doubled multiplicities.
        let one = AlphaParam::new(rat(1, 1)).unwrap();
        let two = AlphaParam::new(rat(2, 1)).unwrap();
        let half = AlphaParam::new(rat(1, 2)).unwrap();
        for weight in 0..=6u32 {
            for kappa in PartitionIter::unchecked(weight, weight) {
                let doubled = part(&kappa.parts().iter().map(|&p| 2 * p).collect::<Vec<_>>());
                let repeated = part(
                    &kappa
                        .parts()
                        .iter()
                        .flat_map(|&p| [p, p])
                        .collect::<Vec<_>>(),
                );
                let hd2 = h_norm(&kappa, &two) * d_prime(&kappa, &two);
                assert_eq!(hd2, d_prime(&doubled, &one), "kappa={:?}", kappa);
                let mut hd_half = h_norm(&kappa, &half) * d_prime(&kappa, &half);
                for _ in 0..2 * weight {
                    hd_half *= rat(2, 1);
                }
                assert_eq!(hd_half, d_prime(&repeated, &one), "kappa={:?}", kappa);
            }
        }
    }

    #[test]
    fn log_forms_match_direct_products() {
        let alpha = 0.5f64;
        let ap = AlphaParam::new(alpha).unwrap();
        for parts in [&[5u32, 3, 1][..], &[4, 4, 2, 2][..], &[7][..]] {
            let kappa = part(parts);
            assert!((ln_d_prime(&kappa, alpha) - d_prime(&kappa, &ap).ln()).abs() < 1e-12);
            assert!((ln_h_norm(&kappa, alpha) - h_norm(&kappa, &ap).ln()).abs() < 1e-12);
            let (sign, ln_abs) = ln_gen_pochhammer(-2.5, &kappa, alpha);
            let direct = gen_pochhammer(&-2.5f64, &kappa, &ap);
            assert_eq!(sign, direct.signum());
            assert!((ln_abs - direct.abs().ln()).abs() < 1e-11);
            for n in kappa.len() as u32..8 {
                let ln_c = ln_c_at_identity(&kappa, alpha, n);
                let direct = c_at_identity(&kappa, &ap, n);
                assert!((ln_c - direct.ln()).abs() < 1e-11);
            }
        }
        let (sign, ln_abs) = ln_gen_pochhammer(-2.0, &part(&[3]), 1.0);
        assert_eq!(sign, 0.0);
        assert_eq!(ln_abs, f64::NEG_INFINITY);
    }

    /// Count partitions of n with at most k parts by dynamic programming.
    fn count_partitions(n: usize, k: usize) -> u64 {
        let mut table = vec![vec![0u64; n + 1]; k + 1];
        for row in table.iter_mut() {
            row[0] = 1;
        }
        for parts in 1..=k {
            for total in 1..=n {
                table[parts][total] = table[parts - 1][total]
                    + if total >= parts { table[parts][total - parts] } else { 0 };
            }
        }
        table[k][n]
    }

    proptest! {
        #[test]
        fn iterator_is_complete_ordered_and_valid(weight in 0u32..18, max_parts in 0u32..8) {
            let all: Vec<Partition> = iter_partitions(weight, max_parts).unwrap().collect();
            prop_assert_eq!(
                all.len() as u64,
                count_partitions(weight as usize, max_parts as usize)
            );
            for p in &all {
                prop_assert_eq!(p.weight(), weight);
                prop_assert!(p.len() <= max_parts as usize);
                prop_assert!(Partition::new(p.parts().to_vec()).is_ok());
            }
            for w in all.windows(2) {
                prop_assert!(w[0].parts() > w[1].parts());
            }
        }

        #[test]
        fn pochhammer_is_monic_of_degree_weight(
            parts in proptest::collection::vec(1u32..5, 0..4),
            alpha_num in 1u32..5,
        ) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let kappa = Partition::new(parts).unwrap();
            let alpha = AlphaParam::new(alpha_num as f64 / 2.0).unwrap();
            let weight = kappa.weight();
            // Finite differences of order |kappa| of a monic polynomial of
            // degree |kappa| equal |kappa|! regardless of the base point.
            let h = 1.0;
            let base = 5.0;
            let mut diffs: Vec<f64> = (0..=weight)
                .map(|k| gen_pochhammer(&(base + k as f64 * h), &kappa, &alpha))
                .collect();
            for _ in 0..weight {
                diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
            }
            let mut fact = 1.0;
            for k in 2..=weight {
                fact *= k as f64;
            }
            let got = diffs[0];
            prop_assert!(
                (got - fact).abs() <= 1e-7 * fact.max(1.0),
                "difference {} vs {}", got, fact
            );
        }
    }
}
