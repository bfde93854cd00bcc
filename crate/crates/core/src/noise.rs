use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Imperfect local operations with reliability `p`.
///
/// Two placements can be switched independently:
/// * `gate`: the bilateral CNOT becomes `p² U ρ U† + (1 - p²) I/16`;
/// * `transmission`: before the gate, each pair has Alice's qubit replaced by
///   the maximally mixed state with probability `1 - p`, which multiplies every
///   correlation coefficient by `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel<T: Real> {
    reliability: T,
    pub gate: bool,
    pub transmission: bool,
}

impl<T: Real> NoiseModel<T> {
    /// Gate noise only, the placement used by the noisy iteration traces.
    pub fn new(reliability: T) -> Result<Self> {
        Self::with_placement(reliability, true, false)
    }

    pub fn with_placement(reliability: T, gate: bool, transmission: bool) -> Result<Self> {
        if !(reliability >= T::zero() && reliability <= T::one()) {
            return Err(Error::Domain {
                what: "reliability p",
                value: reliability.to_f64().unwrap_or(f64::NAN),
                range: "[0, 1]",
            });
        }
        Ok(Self {
            reliability,
            gate,
            transmission,
        })
    }

    pub fn noiseless() -> Self {
        Self {
            reliability: T::one(),
            gate: false,
            transmission: false,
        }
    }

    pub fn reliability(&self) -> T {
        self.reliability
    }

    /// Factor applied to correlations by the gate: `p²` when gate noise is on.
    pub fn gate_factor(&self) -> T {
        if self.gate {
            self.reliability * self.reliability
        } else {
            T::one()
        }
    }

    /// Factor applied to each pair's correlations before the gate.
    pub fn transmission_factor(&self) -> T {
        if self.transmission {
            self.reliability
        } else {
            T::one()
        }
    }

    pub fn is_noiseless(&self) -> bool {
        self.gate_factor() == T::one() && self.transmission_factor() == T::one()
    }

    pub fn placement_label(&self) -> &'static str {
        match (self.gate, self.transmission) {
            (true, true) => "both",
            (true, false) => "gate",
            (false, true) => "transmission",
            (false, false) => "none",
        }
    }
}

impl<T: Real> Default for NoiseModel<T> {
    fn default() -> Self {
        Self::noiseless()
    }
}

impl<T: Real> fmt::Display for NoiseModel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} ({})", self.reliability, self.placement_label())
    }
}
