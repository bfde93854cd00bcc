//! Entanglement purification of Bell-diagonal qubit pairs.
//!
//! The crate has two independent routes to one purification round:
//!
//! * [`protocol`] evaluates closed-form recurrences on the three correlation
//!   coefficients of a Bell-diagonal state. It is fast and drives the iteration
//!   and pair-cost experiments.
//! * [`oracle`] simulates the same round on explicit 16x16 density matrices:
//!   bilateral CNOT, noisy operations, z-measurement of the target pair and
//!   post-selection on coinciding outcomes.
//!
//! [`audit`] compares the two, and compares commonly printed closed forms with
//! the oracle.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod audit;
pub mod bell;
mod error;
pub mod matrix;
pub mod noise;
pub mod oracle;
pub mod protocol;
mod scalar;

pub use bell::{
    canonicalize, Axis, BellPopulations, CorrelationTriple, DensityMatrix, LocalRotation, Party,
};
pub use error::{Error, Result};
pub use noise::NoiseModel;
pub use oracle::{oracle_step, TwoPairState};
pub use protocol::{analytic_step, check_purifiable, iterate, StepResult, StopRule, Variant};
pub use scalar::{lit, Real};

/// Double-precision correlation triple.
pub type Triple = CorrelationTriple<f64>;
/// Double-precision two-qubit density matrix.
pub type Density = DensityMatrix<f64>;
/// Double-precision noise model.
pub type Noise = NoiseModel<f64>;
/// Double-precision round outcome.
pub type Step = StepResult<f64>;
/// Double-precision purification trace.
pub type Trace = protocol::PurificationTrace<f64>;
