use crate::Complex;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iteration or quadrature did not reach its tolerance.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// Evaluation point coincides with a pole. `location` is the
    /// lattice-reduced point when a lattice is known.
    #[error("pole at {location}")]
    Pole { location: Complex },

    /// Half-period inputs do not match the lattice geometry of the region.
    #[error("convention error: {0}")]
    Convention(String),

    /// Malformed request from the command line.
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::NumericalFailure(msg.into())
    }

    pub(crate) fn pole(location: Complex) -> Self {
        Error::Pole { location }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
