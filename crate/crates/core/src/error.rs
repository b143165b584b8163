use thiserror::Error;

/// Errors raised by the pricing, special-function and simulation layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("time must be strictly positive, got {0}")]
    NonPositiveTime(f64),

    #[error("{function}: argument out of domain ({reason})")]
    Domain {
        function: &'static str,
        reason: String,
    },

    #[error("{function}: parameter hits a pole ({reason})")]
    Pole {
        function: &'static str,
        reason: String,
    },

    #[error("{function}: series did not converge within {terms} terms")]
    NonConvergence { function: &'static str, terms: usize },

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    #[error("covariance factorization failed at leading minor {minor} (pivot {pivot:e})")]
    Factorization { minor: usize, pivot: f64 },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("PDE evolution unstable: {0}")]
    Instability(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
