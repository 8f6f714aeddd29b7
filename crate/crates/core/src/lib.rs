//! Gap probabilities at the spectral edges of random matrix ensembles.
//!
//! The crate computes the probability that an interval at the hard edge
//! (smallest eigenvalues of Laguerre/Jacobi-type ensembles) or the soft edge
//! (largest eigenvalues, Tracy-Widom regime) contains no eigenvalue, by two
//! independent routes, and cross-checks both against Monte Carlo simulation:
//!
//! * [`hypergeom`]: multivariate hypergeometric series over partitions,
//!   built from the Jack-polynomial machinery in [`partitions`].
//! * [`fredholm`]: Nystrom discretization of Fredholm determinants of the
//!   Bessel and Airy kernels defined in [`kernels`], with the special
//!   functions they need supplied by [`specfun`].
//! * [`montecarlo`]: Poissonized longest-increasing-subsequence experiments
//!   and averages over Haar-distributed classical matrix groups, which have
//!   the same gap probabilities as their exact distributions.
//!
//! The two exact routes share no code beyond scalar arithmetic, so agreement
//! between them is a strong correctness check; `tests/acceptance.rs` runs
//! that comparison along with the rest of the acceptance suite.

pub mod error;
pub mod fredholm;
pub mod hypergeom;
pub mod kernels;
pub mod montecarlo;
pub mod partitions;
pub mod specfun;

mod quad;

pub use error::{Error, Result};

/// Default floating-point scalar for the numerical (non-exact) layers.
pub type Real = f64;

/// Symmetry class of an ensemble: orthogonal (1), unitary (2), symplectic (4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Beta {
    One,
    Two,
    Four,
}

impl Beta {
    /// The Dyson index as a number.
    pub fn value(self) -> f64 {
        match self {
            Beta::One => 1.0,
            Beta::Two => 2.0,
            Beta::Four => 4.0,
        }
    }
}

impl std::fmt::Display for Beta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value() as u32)
    }
}

/// How a gap probability was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapMethod {
    /// LU determinant of the Nystrom matrix.
    Determinant,
    /// Truncated correlation sum over elementary symmetric functions of the
    /// Nystrom matrix eigenvalues.
    CorrelationSeries,
    /// Multivariate hypergeometric series.
    Hypergeometric,
    /// Algebraic combination of other gap values (the beta = 4 and soft-edge
    /// beta = 4 formulas).
    Interrelation,
}

/// A computed gap probability together with bookkeeping about how it was
/// obtained and how much to trust it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapValue {
    pub value: f64,
    /// For Nystrom values, |result(m) - result(2m)|; for series values, the
    /// magnitude of the last accepted term.
    pub err_estimate: f64,
    /// Quadrature nodes used (0 for pure series evaluations).
    pub nodes_used: usize,
    /// Highest correlation order (Nystrom series route) or partition degree
    /// (hypergeometric route) that was summed, when a series was involved.
    pub series_k_used: Option<usize>,
    pub method: GapMethod,
}
