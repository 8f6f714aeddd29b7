use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument was outside the range an operation accepts.
    #[error("domain error: {0}")]
    Domain(String),

    /// A combinatorial enumeration was asked for more than it is willing to do.
    #[error("weight {weight} exceeds the enumeration limit {limit}")]
    SizeLimit { weight: u32, limit: u32 },

    /// A generalized Pochhammer factor in a series denominator vanished.
    #[error("series denominator vanished at degree {degree}")]
    ZeroDenominator { degree: u32 },

    /// A series was truncated at its degree cap before meeting the tolerance.
    #[error("series did not converge within {max_degree} levels (last level {last_level:e})")]
    NonConvergence { max_degree: u32, last_level: f64 },

    /// A determinant that should be a squared probability came out negative.
    #[error("determinant {value:e} is negative, square root undefined")]
    NegativeDeterminant { value: f64 },

    /// A quotient's denominator underflowed to zero.
    #[error("denominator underflowed ({value:e}); result would not be meaningful")]
    DivisionUnderflow { value: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = core::result::Result<T, Error>;
