//! Closed forms for binary states paired with themselves.

use crate::noise::NoiseModel;
use crate::scalar::{lit, Real};

/// One noiseless round on two binary pairs of weight `f`.
///
/// Returns `(f', N)` with `f' = f² / (f² + (1-f)²)` and `N = 2f² - 2f + 1`.
pub fn binary_step<T: Real>(f: T) -> (T, T) {
    let g = T::one() - f;
    let n = f * f + g * g;
    (f * f / n, n)
}

/// `S² / (1 + (1 - S)²)`: separability after one round of a binary ensemble.
pub fn separability_step<T: Real>(s0: T) -> T {
    let d = T::one() - s0;
    s0 * s0 / (T::one() + d * d)
}

/// `2 / ((2/S₀ - 1)^(2^n) + 1)`.
///
/// Large exponents saturate to 0 for `S₀ < 1` and stay 1 for `S₀ = 1`.
pub fn separability_closed_form<T: Real>(s0: T, iterations: u32) -> T {
    let two: T = lit(2.0);
    let base = two / s0 - T::one();
    let exponent = if iterations > 4096 {
        T::infinity()
    } else {
        two.powi(iterations as i32)
    };
    let grown = base.powf(exponent);
    if grown.is_infinite() {
        return T::zero();
    }
    two / (grown + T::one())
}

/// `(3 - p (4f - 1)) / 2`, the raw separability of a binary state after
/// transmission noise. Not clamped: it exceeds 1 for weakly entangled input.
pub fn noisy_binary_initial_separability<T: Real>(f: T, noise: &NoiseModel<T>) -> T {
    let p = noise.reliability();
    lit::<T>(0.5) * (lit::<T>(3.0) - p * (lit::<T>(4.0) * f - T::one()))
}
