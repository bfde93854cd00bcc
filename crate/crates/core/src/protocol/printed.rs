//! Closed forms exactly as they circulate in print, including their errors.
//!
//! Nothing in the simulator uses these. They exist so the audit can state,
//! with numbers, where each one agrees with the exact computation and where it
//! does not. All inputs and outputs use fidelity-form coefficients.

use crate::scalar::{lit, Real};

/// Printed single-round map. Its y numerator reads `cz cz' + cy cx'`; the
/// exact numerator is `cx cy' + cy cx'`.
pub fn step_coefficients<T: Real>(c: [T; 3], d: [T; 3]) -> [T; 3] {
    let den = T::one() + c[2] * d[2];
    [
        (c[0] * d[0] + c[1] * d[1]) / den,
        (c[2] * d[2] + c[1] * d[0]) / den,
        (c[2] + d[2]) / den,
    ]
}

/// Printed target population after one round:
/// `[(1+cz)(1+cz') + (cx+cy)(cx'+cy')] / (4N)` with `N = (1 + cz cz')/2`.
pub fn target_population<T: Real>(c: [T; 3], d: [T; 3]) -> T {
    let n = lit::<T>(0.5) * (T::one() + c[2] * d[2]);
    ((T::one() + c[2]) * (T::one() + d[2]) + (c[0] + c[1]) * (d[0] + d[1])) / (lit::<T>(4.0) * n)
}

/// Printed separability after one round of two Bell-diagonal pairs:
/// `3/2 - [(|cx|+|cy|)(|cx'|+|cy'|) + |cz| + |cz'|] / (2N)`.
pub fn general_separability<T: Real>(c: [T; 3], d: [T; 3]) -> T {
    let n = lit::<T>(0.5) * (T::one() + c[2] * d[2]);
    let c = c.map(|x| x.abs());
    let d = d.map(|x| x.abs());
    lit::<T>(1.5) - ((c[0] + c[1]) * (d[0] + d[1]) + c[2] + d[2]) / (lit::<T>(2.0) * n)
}

/// Printed coefficients of a noisy round on two binary pairs of weight `f`:
/// `p² (2f²-2f+1, 2f-1, 2f-1) / (1 - 2p² f(1-f))`.
pub fn noisy_binary_coefficients<T: Real>(f: T, p: T) -> [T; 3] {
    let q = p * p;
    let two: T = lit(2.0);
    let den = T::one() - two * q * f * (T::one() - f);
    let g = two * f - T::one();
    [q * (two * f * f - two * f + T::one()) / den, q * g / den, q * g / den]
}

/// Printed separability after that noisy round:
/// `[3 - p² (2f²+2f-1) / (1 - 2p² f(1-f))] / 2`.
pub fn noisy_binary_separability<T: Real>(f: T, p: T) -> T {
    let q = p * p;
    let two: T = lit(2.0);
    let den = T::one() - two * q * f * (T::one() - f);
    lit::<T>(0.5) * (lit::<T>(3.0) - q * (two * f * f + two * f - T::one()) / den)
}

/// Printed noisy success probability `[1 + p² (1 + 2|cz cz'|)] / (4p²)`.
pub fn noisy_success_probability<T: Real>(cz: T, cz_other: T, p: T) -> T {
    let q = p * p;
    (T::one() + q * (T::one() + lit::<T>(2.0) * (cz * cz_other).abs())) / (lit::<T>(4.0) * q)
}
