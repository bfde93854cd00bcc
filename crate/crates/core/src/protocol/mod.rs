//! Closed-form purification rounds and their iteration.
//!
//! The core round (bilateral CNOT, z-measurement of the targets, keep on
//! coincidence) maps internal coefficients `a`, `a'` of the two pairs to
//!
//! ```text
//! x = g (ax ax' + ay ay') / D
//! y = g (ax ay' + ay ax') / D
//! z = g (az + az') / D          D = 1 + g az az',  N = D / 2
//! ```
//!
//! where `g = p²` under gate noise and 1 otherwise. Transmission noise scales
//! both inputs by `p` first. Every formula here is checked against
//! [`crate::oracle::oracle_step`].

mod binary;
mod cost;
pub mod printed;
mod trace;

pub use binary::{
    binary_step, noisy_binary_initial_separability, separability_closed_form, separability_step,
};
pub use cost::{pair_cost, simulate_pair_cost, CostPoint, MonteCarloEstimate};
pub use trace::{iterate, PurificationTrace, StopReason, StopRule, TraceRecord};

use std::fmt;
use std::str::FromStr;

use crate::bell::{CorrelationTriple, LocalRotation};
use crate::error::{Error, Result};
use crate::noise::NoiseModel;
use crate::scalar::{lit, Real};

/// Protocol variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Counter-rotation about x on both pairs before every round.
    Ox1,
    /// Reorder coefficients into canonical form before every round.
    Ox2,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Ox1, Variant::Ox2];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Ox1 => "ox1",
            Variant::Ox2 => "ox2",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ox1" => Ok(Variant::Ox1),
            "ox2" => Ok(Variant::Ox2),
            other => Err(format!("unknown variant `{other}` (expected ox1 or ox2)")),
        }
    }
}

/// Outcome of one round on the kept (source) pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepResult<T: Real> {
    pub output: CorrelationTriple<T>,
    pub success_probability: T,
    pub variant: Variant,
    pub noise: NoiseModel<T>,
}

/// One round in closed form. `Ox1` applies the x counter-rotation to both
/// inputs first; `Ox2` uses them as given (canonicalization is the caller's
/// job, see [`iterate`]).
pub fn analytic_step<T: Real>(
    s1: &CorrelationTriple<T>,
    s2: &CorrelationTriple<T>,
    variant: Variant,
    noise: &NoiseModel<T>,
) -> Result<StepResult<T>> {
    let (u, v) = match variant {
        Variant::Ox1 => (
            LocalRotation::CounterX.apply(s1),
            LocalRotation::CounterX.apply(s2),
        ),
        Variant::Ox2 => (*s1, *s2),
    };
    let t = noise.transmission_factor();
    let g = noise.gate_factor();
    let [x1, y1, z1] = u.internal().map(|c| c * t);
    let [x2, y2, z2] = v.internal().map(|c| c * t);

    let denom = T::one() + g * z1 * z2;
    let n = denom * lit(0.5);
    if !(n >= lit(T::DISCARD_TOL)) {
        return Err(Error::AlwaysDiscarded(n.to_f64().unwrap_or(f64::NAN)));
    }
    let output = CorrelationTriple::new_unchecked(
        g * (x1 * x2 + y1 * y2) / denom,
        g * (x1 * y2 + y1 * x2) / denom,
        g * (z1 + z2) / denom,
    );
    Ok(StepResult {
        output,
        success_probability: n,
        variant,
        noise: *noise,
    })
}

/// Whether a self-paired ensemble in state `s` can be purified:
/// `|cx| + |cy| + |cz| > 1`.
///
/// The equivalent two-term form `(|cx| + |cy|)² > (1 - |cz|)²` is evaluated
/// alongside and must agree.
pub fn check_purifiable<T: Real>(s: &CorrelationTriple<T>) -> bool {
    let [x, y, z] = s.coefficients().map(|c| c.abs());
    let by_sum = x + y + z > T::one();
    let lhs = x + y;
    let rhs = T::one() - z;
    let by_squares = lhs * lhs - rhs * rhs > T::zero();
    debug_assert!(
        by_sum == by_squares || (x + y + z - T::one()).abs() < lit(1e-12),
        "purifiability forms disagree for {s}"
    );
    by_sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_step;

    type Triple = CorrelationTriple<f64>;

    #[test]
    fn binary_step_example() {
        let b = Triple::binary(0.7).unwrap();
        let r = analytic_step(&b, &b, Variant::Ox2, &NoiseModel::noiseless()).unwrap();
        assert!((r.success_probability - 0.58).abs() < 1e-15);
        let fp = 0.49 / 0.58;
        assert!((r.output.fidelity() - fp).abs() < 1e-14);
        assert!((r.output.fidelity() - 0.844_827_586_206_896_5).abs() < 1e-12);
        assert!(r.output.max_abs_diff(&Triple::binary(fp).unwrap()) < 1e-14);
    }

    #[test]
    fn ideal_fixed_point() {
        let i = Triple::ideal();
        for v in Variant::ALL {
            let r = analytic_step(&i, &i, v, &NoiseModel::noiseless()).unwrap();
            assert_eq!(r.success_probability, 1.0);
            assert_eq!(r.output, i);
        }
    }

    #[test]
    fn reference_state_first_round_golden() {
        // Values frozen from the 16x16 oracle.
        let s = Triple::from_coefficients(0.84, 0.16, 0.08).unwrap();
        let noise = NoiseModel::noiseless();
        let a2 = analytic_step(&s, &s, Variant::Ox2, &noise).unwrap();
        let o2 = oracle_step(&s, &s, Variant::Ox2, &noise).unwrap();
        assert!(a2.output.max_abs_diff(&o2.output) < 1e-12);
        assert!(a2.output.fidelity() > s.fidelity());
        let [cx, cy, cz] = a2.output.coefficients();
        assert!((cx - (0.84 * 0.84 + 0.16 * 0.16) / 1.0064).abs() < 1e-14);
        assert!((cy - 2.0 * 0.84 * 0.16 / 1.0064).abs() < 1e-14);
        assert!((cz - 0.16 / 1.0064).abs() < 1e-14);
        assert!((a2.success_probability - 0.5032).abs() < 1e-14);

        let a1 = analytic_step(&s, &s, Variant::Ox1, &noise).unwrap();
        let o1 = oracle_step(&s, &s, Variant::Ox1, &noise).unwrap();
        assert!(a1.output.max_abs_diff(&o1.output) < 1e-12);
        assert!(a2.output.fidelity() > a1.output.fidelity());
    }

    #[test]
    fn purifiability() {
        let s = Triple::from_coefficients(0.84, 0.16, 0.08).unwrap();
        assert!(check_purifiable(&s));
        assert!(!check_purifiable(&Triple::from_coefficients(0.3, 0.3, 0.3).unwrap()));
        assert!(!check_purifiable(&Triple::from_coefficients(0.5, 0.25, 0.25).unwrap()));
    }

    #[test]
    fn discarded_when_probability_vanishes() {
        let z = Triple::new(0.0, 0.0, 1.0).unwrap();
        let anti = Triple::new(1.0, 1.0, -1.0).unwrap();
        assert!(matches!(
            analytic_step(&z, &anti, Variant::Ox2, &NoiseModel::noiseless()),
            Err(Error::AlwaysDiscarded(_))
        ));
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("OX1".parse::<Variant>().unwrap(), Variant::Ox1);
        assert!("ox3".parse::<Variant>().is_err());
    }
}
