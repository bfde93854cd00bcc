//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive};

/// Real scalar the state algebra is generic over: `f32` or `f64`.
///
/// The associated tolerances scale with the precision of the type so the same
/// invariant checks can run at either width.
pub trait Real:
    Float + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Absolute tolerance for matrix invariants (hermiticity, trace, PSD).
    const INVARIANT_TOL: f64;
    /// Absolute tolerance for exact identities such as round trips.
    const ROUND_TRIP_TOL: f64;
    /// Below this a post-selection probability counts as zero.
    const DISCARD_TOL: f64;
}

impl Real for f64 {
    const INVARIANT_TOL: f64 = 1e-10;
    const ROUND_TRIP_TOL: f64 = 1e-12;
    const DISCARD_TOL: f64 = 1e-14;
}

impl Real for f32 {
    const INVARIANT_TOL: f64 = 1e-5;
    const ROUND_TRIP_TOL: f64 = 1e-5;
    const DISCARD_TOL: f64 = 1e-7;
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

#[inline]
pub(crate) fn invariant_tol<T: Real>() -> T {
    lit(T::INVARIANT_TOL)
}

#[inline]
pub(crate) fn round_trip_tol<T: Real>() -> T {
    lit(T::ROUND_TRIP_TOL)
}
