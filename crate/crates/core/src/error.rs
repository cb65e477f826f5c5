use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the routine.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quantum numbers or model parameters do not describe a valid state.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// The requested combination is outside what this crate computes.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    /// Carries the best estimate reached.
    #[error("quadrature did not converge: value {value:e}, error estimate {err_est:e}")]
    Convergence { value: f64, err_est: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
