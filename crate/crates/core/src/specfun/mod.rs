//! Bessel and Airy machinery used by the kernel and determinant layers.
//!
//! Everything here is evaluated to near-f64 accuracy without external
//! bindings:
//!
//! * `bessel_j` — J_nu for integer and half-integer-free f64 orders via a
//!   compensated Maclaurin series at small argument and Miller's downward
//!   recurrence (with a two-start self-check) elsewhere.
//! * `bessel_j_integral` — the running integral of J_nu from 0, series plus
//!   panel quadrature on a fixed grid so batched evaluations agree exactly
//!   with one-off calls.
//! * `airy_ai` / `airy_ai_deriv` — compensated Maclaurin pair in the center,
//!   classical asymptotic expansions on both wings.
//! * `airy_tail` — the tail integral of Ai, used by soft-edge kernels.
//! * `bessel_j_uniform` — the leading Olver uniform approximation, the bridge
//!   between the hard and soft edges.
//!
//! The `*_with` variants take an explicit [`SpecFunConfig`]; the plain names
//! use [`SpecFunConfig::default`].

mod airy;
mod bessel;
mod dd;
mod olver;

use crate::error::Result;

pub use airy::{airy_ai_deriv_with, airy_ai_with, airy_tail_with};
pub use bessel::{bessel_j_deriv_with, bessel_j_integral_with, bessel_j_with};
pub use olver::{bessel_j_uniform_with, olver_zeta};

pub(crate) use airy::airy_ai_pair_with;
pub(crate) use bessel::{bessel_j_integral_batch, bessel_j_triple_with};

/// Tuning knobs for the special-function evaluators.
///
/// The defaults are chosen so that every routine meets its accuracy targets;
/// the struct exists mainly so tests can stress alternate branch choices.
#[derive(Debug, Clone)]
pub struct SpecFunConfig {
    /// |x| below which Airy functions use the Maclaurin pair; above it the
    /// asymptotic expansions take over.
    pub series_cutoff: f64,
    /// The Airy tail integral is truncated at `max(tail_cut, y + 8)`.
    pub tail_cut: f64,
    /// Extra index padding added on top of the analytic start estimate for
    /// Miller's backward recurrence.
    pub miller_start_offset: u32,
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        Self {
            series_cutoff: 9.0,
            tail_cut: 16.0,
            miller_start_offset: 30,
        }
    }
}

/// Bessel function of the first kind, J_order(x), for x >= 0.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    bessel_j_with(&SpecFunConfig::default(), order, x)
}

/// d/dx J_order(x) for x >= 0.
pub fn bessel_j_deriv(order: u32, x: f64) -> Result<f64> {
    bessel_j_deriv_with(&SpecFunConfig::default(), order, x)
}

/// Integral of J_order over [0, z], z >= 0.
pub fn bessel_j_integral(order: u32, z: f64) -> Result<f64> {
    bessel_j_integral_with(&SpecFunConfig::default(), order, z)
}

/// Airy function Ai(x).
pub fn airy_ai(x: f64) -> f64 {
    airy_ai_with(&SpecFunConfig::default(), x)
}

/// Derivative Ai'(x).
pub fn airy_ai_deriv(x: f64) -> f64 {
    airy_ai_deriv_with(&SpecFunConfig::default(), x)
}

/// Tail integral of Ai over [y, infinity).
pub fn airy_tail(y: f64) -> f64 {
    airy_tail_with(&SpecFunConfig::default(), y)
}

/// Leading Olver uniform approximation of J_order near its turning point;
/// see [`bessel_j_uniform_with`].
pub fn bessel_j_uniform(order: u32, w: f64) -> Result<f64> {
    bessel_j_uniform_with(&SpecFunConfig::default(), order, w)
}
