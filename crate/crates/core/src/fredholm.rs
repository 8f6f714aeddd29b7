//! Gap probabilities as Fredholm determinants.
//!
//! The probability that a determinantal edge process has no point in an
//! interval I is det(I − K restricted to I). Discretizing with an m-point
//! Gauss–Legendre rule (Nyström's method) turns that into an ordinary m×m
//! determinant with entries δ_ij − w_j K(x_i, x_j); convergence in m is
//! spectrally fast because the kernels are entire. Every public value
//! reports |result(m) − result(2m)| as its error estimate.
//!
//! On top of the raw determinant this module exposes:
//!
//! * [`e2_hard`], [`e1_hard`], [`e4_hard`] — hard-edge gap probabilities
//!   E_β(s; ·). β=1 is the square root of the order-(2·half_index+1)
//!   beta = 1 Bessel determinant; β=4 is the half-sum interrelation
//!   ½(E₁ + E₂/E₁).
//! * [`f2`], [`f1`], [`f4`] — the soft-edge (Tracy–Widom) distributions,
//!   same structure with Airy kernels on (s, ∞).
//! * [`gap_series`] — the alternating correlation-sum form, computed from
//!   matrix eigenvalues via elementary symmetric polynomials; with the full
//!   order it resums to the determinant exactly, and serves as an internal
//!   consistency oracle.
//! * [`transition_sweep`] — hard-edge values at the turning-point scaling
//!   Q_a(s) = (a − (a/2)^{1/3} s)² next to their soft-edge limits, the
//!   quantitative form of the hard-to-soft edge transition.
//!
//! For the sweep the hard-edge interval (0, Q_a(s)) is parametrized as
//! x = Q_a(τ) with τ running over [s, min(14, 2^{1/3} a^{2/3})]: quadrature
//! nodes then concentrate where the kernel actually lives at large a. The
//! upper limit stops at the zero of Q_a (where the parametrization would
//! fold back); whatever sliver of (0, Q_a(τ_max)) is dropped carries only
//! exponentially small kernel mass, since J_a(√x) is tiny for √x well below
//! the turning point a.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::kernels::{node_table, KernelSpec};
use crate::quad::legendre_rule;
use crate::specfun::SpecFunConfig;
use crate::{GapMethod, GapValue};

/// Default node count for hard-edge (Bessel) determinants.
pub const DEFAULT_HARD_RESOLUTION: usize = 80;
/// Default node count for soft-edge (Airy) determinants.
pub const DEFAULT_SOFT_RESOLUTION: usize = 60;

/// Additive cutoff for Airy intervals: (s, ∞) is truncated at
/// max(s, 0) + AIRY_TAIL_PAD, beyond which Ai(x)² < 1e−24 for every s ≥ −4.
pub const AIRY_TAIL_PAD: f64 = 14.0;

/// Determinant values in [−NEGATIVE_CLAMP, 0) are treated as 0 before a
/// square root; anything lower is a hard error.
const NEGATIVE_CLAMP: f64 = 1e-10;

/// A quadrature rule mapped onto a finite interval.
#[derive(Debug, Clone)]
pub struct QuadGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    interval: (f64, f64),
}

impl QuadGrid {
    /// Strictly increasing nodes, all inside the open interval.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Positive weights; they sum to the interval length.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// The m-point Gauss–Legendre rule on (lo, hi).
pub fn gauss_legendre(m: usize, lo: f64, hi: f64) -> Result<QuadGrid> {
    if m == 0 {
        return Err(Error::domain("gauss_legendre needs at least one node"));
    }
    if !(lo < hi) {
        return Err(Error::domain("gauss_legendre needs lo < hi"));
    }
    let (xs, ws) = legendre_rule(m);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let nodes = xs.iter().map(|&x| mid + half * x).collect();
    let weights = ws.iter().map(|&w| half * w).collect();
    Ok(QuadGrid {
        nodes,
        weights,
        interval: (lo, hi),
    })
}

/// Nyström matrix of the kernel on the grid: entry (i, j) = w_j K(x_i, x_j).
///
/// No symmetrization is applied — the beta = 1 kernels are asymmetric and
/// det(I − M) is what the gap formulas call for either way.
pub fn operator_matrix(spec: &KernelSpec, grid: &QuadGrid) -> Result<DMatrix<f64>> {
    if spec.is_bessel() && grid.interval().0 < 0.0 {
        return Err(Error::domain("Bessel kernels live on x > 0"));
    }
    let cfg = SpecFunConfig::default();
    let table = node_table(&cfg, spec, grid.nodes())?;
    let m = grid.len();
    let w = grid.weights();
    Ok(DMatrix::from_fn(m, m, |i, j| w[j] * table.eval(i, j)))
}

fn det_i_minus(matrix: &DMatrix<f64>) -> f64 {
    let n = matrix.nrows();
    let shifted = DMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - matrix[(i, j)]
    });
    shifted.lu().determinant()
}

fn determinant_on_grid(spec: &KernelSpec, grid: &QuadGrid) -> Result<f64> {
    let matrix = operator_matrix(spec, grid)?;
    Ok(det_i_minus(&matrix))
}

/// Resolve an interval request into a concrete finite grid. Airy intervals
/// may have an infinite upper end, which is truncated at the tail cutoff.
fn grid_for(spec: &KernelSpec, interval: (f64, f64), m: usize) -> Result<QuadGrid> {
    let (lo, hi) = interval;
    let hi = if spec.is_bessel() || hi.is_finite() {
        hi
    } else {
        lo.max(0.0) + AIRY_TAIL_PAD
    };
    gauss_legendre(m, lo, hi)
}

/// Evaluate `f` at resolutions m and 2m; report the m value with the
/// doubling discrepancy as its error estimate.
fn with_doubling(
    m: usize,
    method: GapMethod,
    f: impl Fn(usize) -> Result<f64>,
) -> Result<GapValue> {
    let value = f(m)?;
    let refined = f(2 * m)?;
    Ok(GapValue {
        value,
        err_estimate: (value - refined).abs(),
        nodes_used: m,
        series_k_used: None,
        method,
    })
}

/// det(I − K) on the interval, with a resolution-doubling error estimate.
pub fn gap_determinant(spec: &KernelSpec, interval: (f64, f64), m: usize) -> Result<GapValue> {
    if m == 0 {
        return Err(Error::domain("resolution m must be positive"));
    }
    with_doubling(m, GapMethod::Determinant, |mm| {
        determinant_on_grid(spec, &grid_for(spec, interval, mm)?)
    })
}

/// The truncated correlation sum 1 + Σ_{k=1}^{k_max} (−1)^k e_k(λ), where λ
/// are the eigenvalues of the Nyström matrix. Summing to k_max = m resums
/// the determinant exactly.
pub fn gap_series(
    spec: &KernelSpec,
    interval: (f64, f64),
    m: usize,
    k_max: usize,
) -> Result<GapValue> {
    if m == 0 || k_max == 0 {
        return Err(Error::domain("resolution and series order must be positive"));
    }
    let grid = grid_for(spec, interval, m)?;
    let matrix = operator_matrix(spec, &grid)?;
    let eigen = matrix.complex_eigenvalues();

    // Elementary symmetric polynomials e_1..e_cap of the eigenvalues,
    // accumulated as coefficients of ∏(1 + λ_i t).
    let cap = k_max.min(m);
    let mut coeffs = vec![nalgebra::Complex::new(0.0, 0.0); cap + 1];
    coeffs[0] = nalgebra::Complex::new(1.0, 0.0);
    for lambda in eigen.iter() {
        for k in (1..=cap).rev() {
            let add = coeffs[k - 1] * lambda;
            coeffs[k] += add;
        }
    }

    let mut value = 1.0;
    let mut sign = -1.0;
    for (k, c) in coeffs.iter().enumerate().skip(1) {
        // Real matrices have conjugate-pair spectra, so the imaginary parts
        // must cancel; failure means the eigensolve went off the rails.
        assert!(
            c.im.abs() < 1e-10 * c.re.abs().max(1.0),
            "imaginary residue {:e} in e_{k}",
            c.im
        );
        value += sign * c.re;
        sign = -sign;
    }

    // If the caller truncated below full order, the last term must be
    // negligible for the sum to stand for the determinant.
    let last = coeffs[cap].re.abs();
    if cap < m && last > 1e-12 * value.abs() {
        return Err(Error::NonConvergence {
            max_degree: cap as u32,
            last_level: last,
        });
    }

    Ok(GapValue {
        value,
        err_estimate: last.min(1.0),
        nodes_used: m,
        series_k_used: Some(cap),
        method: GapMethod::CorrelationSeries,
    })
}

/// Hard-edge gap probability for β = 2: E₂(s; a) = det(I − K₂^{Bessel,a})
/// on (0, s).
pub fn e2_hard(s: f64, a: u32, m: usize) -> Result<GapValue> {
    if !(s > 0.0) {
        return Err(Error::domain("e2_hard needs s > 0"));
    }
    gap_determinant(&KernelSpec::bessel_beta2(a), (0.0, s), m)
}

fn bessel1_order(half_index: f64) -> Result<u32> {
    let a = 2.0 * half_index + 1.0;
    if !(half_index >= 0.0) || (a - a.round()).abs() > 1e-12 {
        return Err(Error::domain(
            "half_index must be a nonnegative integer or half-integer",
        ));
    }
    Ok(a.round() as u32)
}

fn sqrt_of_det(det: f64) -> Result<f64> {
    if det < -NEGATIVE_CLAMP {
        return Err(Error::NegativeDeterminant { value: det });
    }
    Ok(det.max(0.0).sqrt())
}

/// Hard-edge gap probability for β = 1 at index `half_index` ∈ {0, ½, 1, …}:
/// the square root of the beta = 1 Bessel determinant of order
/// 2·half_index + 1.
pub fn e1_hard(s: f64, half_index: f64, m: usize) -> Result<GapValue> {
    if !(s > 0.0) {
        return Err(Error::domain("e1_hard needs s > 0"));
    }
    let a = bessel1_order(half_index)?;
    let spec = KernelSpec::bessel_beta1(a);
    with_doubling(m, GapMethod::Determinant, |mm| {
        sqrt_of_det(determinant_on_grid(&spec, &grid_for(&spec, (0.0, s), mm)?)?)
    })
}

/// Hard-edge gap probability for β = 4 at index a + 1, via the half-sum
/// interrelation E₄(s; a+1) = ½(E₁(s; (a−1)/2) + E₂(s; a)/E₁(s; (a−1)/2)).
/// Both constituents use Bessel kernels of order exactly `a`.
pub fn e4_hard(s: f64, a: u32, m: usize) -> Result<GapValue> {
    if a < 1 {
        return Err(Error::domain("e4_hard needs a >= 1"));
    }
    if !(s > 0.0) {
        return Err(Error::domain("e4_hard needs s > 0"));
    }
    let spec1 = KernelSpec::bessel_beta1(a);
    let spec2 = KernelSpec::bessel_beta2(a);
    with_doubling(m, GapMethod::Interrelation, |mm| {
        let grid = grid_for(&spec1, (0.0, s), mm)?;
        let e1 = sqrt_of_det(determinant_on_grid(&spec1, &grid)?)?;
        let e2 = determinant_on_grid(&spec2, &grid)?;
        if e1 < 1e-300 {
            return Err(Error::DivisionUnderflow { value: e1 });
        }
        Ok(0.5 * (e1 + e2 / e1))
    })
}

/// Soft-edge β = 2 gap probability (Tracy–Widom GUE CDF): det(I − K_Airy)
/// on (s, ∞).
pub fn f2(s: f64, m: usize) -> Result<GapValue> {
    gap_determinant(&KernelSpec::airy_beta2(), (s, f64::INFINITY), m)
}

/// Soft-edge β = 1 gap probability: square root of the beta = 1 Airy
/// determinant on (s, ∞).
pub fn f1(s: f64, m: usize) -> Result<GapValue> {
    let spec = KernelSpec::airy_beta1();
    with_doubling(m, GapMethod::Determinant, |mm| {
        sqrt_of_det(determinant_on_grid(
            &spec,
            &grid_for(&spec, (s, f64::INFINITY), mm)?,
        )?)
    })
}

/// Soft-edge β = 4 gap probability via F₄ = ½(F₁ + F₂/F₁).
pub fn f4(s: f64, m: usize) -> Result<GapValue> {
    let spec1 = KernelSpec::airy_beta1();
    let spec2 = KernelSpec::airy_beta2();
    with_doubling(m, GapMethod::Interrelation, |mm| {
        let grid = grid_for(&spec1, (s, f64::INFINITY), mm)?;
        let f1v = sqrt_of_det(determinant_on_grid(&spec1, &grid)?)?;
        let f2v = determinant_on_grid(&spec2, &grid)?;
        if f1v < 1e-300 {
            return Err(Error::DivisionUnderflow { value: f1v });
        }
        Ok(0.5 * (f1v + f2v / f1v))
    })
}

/// The turning-point scaling map Q_a(s) = (a − (a/2)^{1/3} s)².
pub fn turning_point_scale(a: u32, s: f64) -> f64 {
    let af = a as f64;
    (af - (af / 2.0).powf(1.0 / 3.0) * s).powi(2)
}

/// Where the parametrization τ ↦ Q_a(τ) stops: the smaller of the generic
/// soft-edge cutoff 14 and the zero of Q_a.
fn tau_cut(a: u32) -> f64 {
    let af = a as f64;
    (af / (af / 2.0).powf(1.0 / 3.0)).min(14.0)
}

/// Quadrature grid for (Q_a(τ_cut), Q_a(s)) built by substituting x = Q_a(τ):
/// nodes Q_a(τ_i) with weights w_i |Q_a′(τ_i)|, reversed so nodes ascend.
fn substituted_hard_grid(a: u32, s: f64, m: usize) -> Result<QuadGrid> {
    let cut = tau_cut(a);
    if !(s < cut) {
        return Err(Error::domain(
            "turning-point coordinate s must lie below the parametrization cutoff",
        ));
    }
    let af = a as f64;
    let c = (af / 2.0).powf(1.0 / 3.0);
    let tau = gauss_legendre(m, s, cut)?;
    let mut nodes: Vec<f64> = tau.nodes().iter().map(|&t| (af - c * t).powi(2)).collect();
    let mut weights: Vec<f64> = tau
        .nodes()
        .iter()
        .zip(tau.weights())
        .map(|(&t, &w)| w * (2.0 * (af - c * t) * c).abs())
        .collect();
    nodes.reverse();
    weights.reverse();
    Ok(QuadGrid {
        nodes,
        weights,
        interval: (turning_point_scale(a, cut), turning_point_scale(a, s)),
    })
}

/// One comparison point of the hard-to-soft transition table.
#[derive(Debug, Clone, Copy)]
pub struct TransitionRow {
    pub a: u32,
    pub s: f64,
    pub hard_value: f64,
    pub soft_value: f64,
    pub abs_error: f64,
}

/// Hard-edge gap probabilities at the turning-point scaling next to their
/// soft-edge limits, for β ∈ {1, 2}.
///
/// For β = 2 the hard side is E₂(Q_a(s); a); for β = 1 it is
/// E₁(Q_a(s); a/2) (so `a` must be even), using the beta = 1 Bessel kernel
/// of order a + 1. Rows are evaluated concurrently but emitted in input
/// order, independent of thread count.
pub fn transition_sweep(
    beta: crate::Beta,
    s_values: &[f64],
    a_values: &[u32],
    m: usize,
) -> Result<Vec<TransitionRow>> {
    use rayon::prelude::*;

    match beta {
        crate::Beta::Two => {}
        crate::Beta::One => {
            if let Some(&bad) = a_values.iter().find(|&&a| a % 2 != 0) {
                return Err(Error::domain(format!(
                    "beta = 1 transition needs even a (got {bad})"
                )));
            }
        }
        crate::Beta::Four => {
            return Err(Error::domain("transition_sweep covers beta 1 and 2 only"));
        }
    }

    let cells: Vec<(u32, f64)> = a_values
        .iter()
        .flat_map(|&a| s_values.iter().map(move |&s| (a, s)))
        .collect();

    cells
        .into_par_iter()
        .map(|(a, s)| {
            let (hard_value, soft_value) = match beta {
                crate::Beta::Two => {
                    let grid = substituted_hard_grid(a, s, m)?;
                    let hard = determinant_on_grid(&KernelSpec::bessel_beta2(a), &grid)?;
                    (hard, f2(s, m)?.value)
                }
                crate::Beta::One => {
                    let grid = substituted_hard_grid(a, s, m)?;
                    let det =
                        determinant_on_grid(&KernelSpec::bessel_beta1(a + 1), &grid)?;
                    (sqrt_of_det(det)?, f1(s, m)?.value)
                }
                crate::Beta::Four => unreachable!(),
            };
            Ok(TransitionRow {
                a,
                s,
                hard_value,
                soft_value,
                abs_error: (hard_value - soft_value).abs(),
            })
        })
        .collect()
}
