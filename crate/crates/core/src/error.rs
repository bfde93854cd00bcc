use thiserror::Error;

/// Errors raised by state construction, the oracle and the protocol layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the range where it describes a physical state.
    #[error("{what} = {value} is outside its valid range {range}")]
    Domain {
        what: &'static str,
        value: f64,
        range: &'static str,
    },
    /// The coefficients do not define a positive semidefinite matrix.
    #[error("correlation triple ({0}, {1}, {2}) is not a valid state: a Bell population is negative")]
    NotPositive(f64, f64, f64),
    /// A matrix violated a density-matrix invariant.
    #[error("not a density matrix: {0}")]
    InvalidDensityMatrix(String),
    /// The state carries correlations outside the Bell-diagonal family.
    #[error("state is not Bell-diagonal: off-family Pauli expectation {pauli} = {value:e}")]
    NotBellDiagonal { pauli: String, value: f64 },
    /// The coincidence post-selection has (numerically) zero probability.
    #[error("pair is always discarded: success probability {0:e}")]
    AlwaysDiscarded(f64),
    /// Two independent computations that must agree did not.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
