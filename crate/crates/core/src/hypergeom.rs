//! Hypergeometric functions of matrix argument, restricted to the equal-
//! argument case needed for gap probabilities: all variables set to the same
//! scalar `x`, so each partition contributes `C_kappa(1^n) x^|kappa|`.
//!
//! Series are summed level by level (by partition weight). Levels up to
//! weight 40 are accumulated with plain products; beyond that the factors
//! are combined in sign/log form so that huge intermediate products cannot
//! overflow. Truncation requires three consecutive levels below the relative
//! tolerance, which guards against even/odd level patterns that put a
//! single small level in the middle of a still-converging tail.

use crate::error::{Error, Result};
use crate::partitions::{
    c_at_identity, gen_pochhammer, ln_c_at_identity, ln_gen_pochhammer, Alpha, AlphaParam,
    PartitionIter, Scalar,
};
use crate::{Beta, GapMethod, GapValue};

/// Degree cap for every series in this module.
pub const MAX_DEGREE: u32 = 400;

/// Partition weight up to which level sums use plain f64 products.
const DIRECT_LEVEL_LIMIT: u32 = 40;

/// Number of consecutive negligible levels required before truncating.
const QUIET_LEVELS: u32 = 3;

/// Value of a truncated hypergeometric series plus convergence bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomResult {
    pub value: f64,
    /// Highest partition weight that was summed.
    pub degree_used: u32,
    /// Magnitude of the last level's contribution.
    pub tail_estimate: f64,
}

/// `0F1^(alpha)(b; x, ..., x)` with `n_vars` equal arguments.
pub fn hyp0f1_equal(alpha: Alpha, b: f64, n_vars: u32, x: f64, rel_tol: f64) -> Result<HypergeomResult> {
    sum_series(alpha, &[], b, n_vars, x, rel_tol)
}

/// `2F1^(alpha)(a1, a2; b; x, ..., x)` with `n_vars` equal arguments.
///
/// Terminates exactly when `a1` (or `a2`) is a nonpositive integer, since
/// the numerator Pochhammer factor kills every partition with a part beyond
/// that integer.
pub fn hyp2f1_equal(
    alpha: Alpha,
    a1: f64,
    a2: f64,
    b: f64,
    n_vars: u32,
    x: f64,
    rel_tol: f64,
) -> Result<HypergeomResult> {
    sum_series(alpha, &[a1, a2], b, n_vars, x, rel_tol)
}

/// Exact coefficient of `x^degree` in the equal-argument `0F1` series:
/// the sum over partitions of `degree` with at most `n_vars` parts of
/// `C_kappa(1^n) / (degree! [b]_kappa)`.
///
/// Generic so tests can evaluate it in exact rational arithmetic.
pub fn level_coeff_0f1<S: Scalar>(
    alpha: &AlphaParam<S>,
    b: &S,
    n_vars: u32,
    degree: u32,
) -> Result<S> {
    let mut fact = S::one();
    for k in 2..=degree {
        fact = fact * S::from_u32(k).unwrap();
    }
    let mut sum = S::zero();
    for kappa in PartitionIter::unchecked(degree, n_vars) {
        let den = gen_pochhammer(b, &kappa, alpha);
        if den.is_zero() {
            return Err(Error::ZeroDenominator { degree });
        }
        sum = sum + c_at_identity(&kappa, alpha, n_vars) / (fact.clone() * den);
    }
    Ok(sum)
}

/// Hard-edge gap probability by hypergeometric series: the probability that
/// the interval `(0, s)` at the hard edge of the beta-ensemble with `a`
/// extra weight exponents is free of eigenvalues.
pub fn hard_gap_hyper(beta: Beta, s: f64, a: u32) -> Result<GapValue> {
    if !(s >= 0.0) {
        return Err(Error::domain("hard-edge gap needs s >= 0"));
    }
    let (alpha, b, x, prefactor) = match beta {
        Beta::One => (0.5, 2.0 * a as f64, s / 4.0, (-s / 8.0).exp()),
        Beta::Two => (1.0, a as f64, s / 4.0, (-s / 4.0).exp()),
        Beta::Four => (2.0, a as f64 / 2.0, s / 16.0, (-s / 8.0).exp()),
    };
    let alpha = Alpha::new(alpha).expect("fixed positive alpha");
    let series = hyp0f1_equal(alpha, b, a, x, 1e-14)?;
    Ok(GapValue {
        value: prefactor * series.value,
        err_estimate: prefactor * series.tail_estimate,
        nodes_used: 0,
        series_k_used: Some(series.degree_used as usize),
        method: GapMethod::Hypergeometric,
    })
}

/// Probability that the finite-`n` Jacobi beta-ensemble with weight
/// `lambda^a (1-lambda)^b` has no eigenvalue in `(0, s)`.
///
/// Valid for any `beta > 0` and integer `a >= 0`; the series is a
/// terminating polynomial in `s / (1-s)` of degree at most `a * n`.
pub fn jacobi_gap_finite(beta: f64, s: f64, a: u32, b: f64, n: u32) -> Result<GapValue> {
    if !(beta > 0.0) {
        return Err(Error::domain("beta must be positive"));
    }
    if !(0.0..1.0).contains(&s) {
        return Err(Error::domain("jacobi gap needs 0 <= s < 1"));
    }
    if !(b > -1.0) {
        return Err(Error::domain("weight exponent b must exceed -1"));
    }
    if n == 0 {
        return Err(Error::domain("ensemble size n must be positive"));
    }
    let alpha = Alpha::new(beta / 2.0)?;
    let nf = n as f64;
    let exponent = (1.0 + a as f64 + b) * nf + beta * nf * (nf - 1.0) / 2.0;
    let series = hyp2f1_equal(
        alpha,
        -nf,
        (2.0 / beta) * (a as f64 + b + 1.0) + nf - 1.0,
        (2.0 / beta) * a as f64,
        a,
        -s / (1.0 - s),
        1e-13,
    )?;
    let prefactor = (1.0 - s).powf(exponent);
    Ok(GapValue {
        value: prefactor * series.value,
        err_estimate: prefactor * series.tail_estimate,
        nodes_used: 0,
        series_k_used: Some(series.degree_used as usize),
        method: GapMethod::Hypergeometric,
    })
}

fn sum_series(
    alpha: Alpha,
    nums: &[f64],
    b: f64,
    n_vars: u32,
    x: f64,
    rel_tol: f64,
) -> Result<HypergeomResult> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::domain("relative tolerance must lie in (0, 1)"));
    }
    if !x.is_finite() {
        return Err(Error::domain("series argument must be finite"));
    }
    let mut total = 0.0f64;
    let mut quiet = 0u32;
    let mut last_level = 0.0f64;
    // Running x^N and N! for the direct branch.
    let mut x_pow = 1.0f64;
    let mut fact = 1.0f64;
    for degree in 0..=MAX_DEGREE {
        let level = if degree <= DIRECT_LEVEL_LIMIT {
            level_direct(alpha, nums, b, n_vars, x_pow, fact, degree)?
        } else {
            level_log(alpha, nums, b, n_vars, x, degree)?
        };
        total += level;
        last_level = level;
        if !total.is_finite() {
            return Err(Error::NonConvergence {
                max_degree: degree,
                last_level: level,
            });
        }
        if level.abs() <= rel_tol * total.abs() {
            quiet += 1;
            if quiet >= QUIET_LEVELS {
                return Ok(HypergeomResult {
                    value: total,
                    degree_used: degree,
                    tail_estimate: level.abs(),
                });
            }
        } else {
            quiet = 0;
        }
        x_pow *= x;
        fact *= (degree + 1) as f64;
    }
    Err(Error::NonConvergence {
        max_degree: MAX_DEGREE,
        last_level,
    })
}

fn level_direct(
    alpha: Alpha,
    nums: &[f64],
    b: f64,
    n_vars: u32,
    x_pow: f64,
    fact: f64,
    degree: u32,
) -> Result<f64> {
    let mut sum = 0.0;
    for kappa in PartitionIter::unchecked(degree, n_vars) {
        let den = gen_pochhammer(&b, &kappa, &alpha);
        if den == 0.0 {
            return Err(Error::ZeroDenominator { degree });
        }
        let mut term = c_at_identity(&kappa, &alpha, n_vars) / (fact * den);
        for a in nums {
            term *= gen_pochhammer(a, &kappa, &alpha);
        }
        sum += term;
    }
    Ok(sum * x_pow)
}

fn level_log(alpha: Alpha, nums: &[f64], b: f64, n_vars: u32, x: f64, degree: u32) -> Result<f64> {
    let av = *alpha.value();
    let mut ln_fact = 0.0;
    for k in 2..=degree {
        ln_fact += (k as f64).ln();
    }
    let ln_x = x.abs().ln();
    let x_sign = if x < 0.0 && degree % 2 == 1 { -1.0 } else { 1.0 };
    let mut terms: Vec<(f64, f64)> = Vec::new();
    let mut max_ln = f64::NEG_INFINITY;
    for kappa in PartitionIter::unchecked(degree, n_vars) {
        let (den_sign, den_ln) = ln_gen_pochhammer(b, &kappa, av);
        if den_sign == 0.0 {
            return Err(Error::ZeroDenominator { degree });
        }
        let mut sign = den_sign * x_sign;
        let mut ln = ln_c_at_identity(&kappa, av, n_vars) - ln_fact - den_ln
            + degree as f64 * ln_x;
        for a in nums {
            let (s, l) = ln_gen_pochhammer(*a, &kappa, av);
            sign *= s;
            ln += l;
        }
        if sign == 0.0 || ln == f64::NEG_INFINITY {
            continue;
        }
        max_ln = max_ln.max(ln);
        terms.push((sign, ln));
    }
    if terms.is_empty() {
        return Ok(0.0);
    }
    let mut scaled = 0.0;
    for (sign, ln) in terms {
        scaled += sign * (ln - max_ln).exp();
    }
    Ok(scaled * max_ln.exp())
}
