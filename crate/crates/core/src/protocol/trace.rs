use crate::bell::{canonicalize, CorrelationTriple};
use crate::error::Error;
use crate::noise::NoiseModel;
use crate::scalar::{lit, Real};

use super::{analytic_step, check_purifiable, Variant};

/// When [`iterate`] stops. Checks run after every round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StopRule<T: Real> {
    pub max_iterations: usize,
    /// Stop once a round changes the state by less than this (max-norm).
    pub state_tol: Option<T>,
    /// Stop once `1 - F` drops below this.
    pub fidelity_tol: Option<T>,
}

impl<T: Real> Default for StopRule<T> {
    fn default() -> Self {
        Self {
            max_iterations: 30,
            state_tol: Some(lit(1e-12)),
            fidelity_tol: Some(lit(1e-12)),
        }
    }
}

impl<T: Real> StopRule<T> {
    /// Exactly `rounds` rounds, no early exit.
    pub fn fixed(rounds: usize) -> Self {
        Self {
            max_iterations: rounds,
            state_tol: None,
            fidelity_tol: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    MaxIterations,
    FixedPoint,
    TargetFidelity,
    NotPurifiable,
    Discarded,
}

impl StopReason {
    pub fn label(self) -> &'static str {
        match self {
            StopReason::MaxIterations => "max-iterations",
            StopReason::FixedPoint => "fixed-point",
            StopReason::TargetFidelity => "target-fidelity",
            StopReason::NotPurifiable => "not-purifiable",
            StopReason::Discarded => "discarded",
        }
    }
}

/// State of the surviving ensemble after `iteration` rounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord<T: Real> {
    pub iteration: usize,
    pub state: CorrelationTriple<T>,
    pub fidelity: T,
    pub separability: T,
    /// Success probability of the round that produced this record; `None`
    /// for the initial record.
    pub step_probability: Option<T>,
    /// Expected number of initial pairs consumed per surviving pair.
    pub cumulative_cost: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PurificationTrace<T: Real> {
    pub variant: Variant,
    pub noise: NoiseModel<T>,
    pub initial: CorrelationTriple<T>,
    pub records: Vec<TraceRecord<T>>,
    pub stop: StopReason,
}

impl<T: Real> PurificationTrace<T> {
    pub fn last(&self) -> &TraceRecord<T> {
        self.records.last().expect("trace has an initial record")
    }

    pub fn fidelities(&self) -> Vec<T> {
        self.records.iter().map(|r| r.fidelity).collect()
    }

    pub fn separabilities(&self) -> Vec<T> {
        self.records.iter().map(|r| r.separability).collect()
    }

    /// First iteration whose fidelity satisfies `1 - F < tol`.
    pub fn first_within(&self, tol: T) -> Option<usize> {
        self.records
            .iter()
            .find(|r| T::one() - r.fidelity < tol)
            .map(|r| r.iteration)
    }
}

fn record<T: Real>(
    iteration: usize,
    state: CorrelationTriple<T>,
    step_probability: Option<T>,
    cumulative_cost: T,
) -> TraceRecord<T> {
    TraceRecord {
        iteration,
        state,
        fidelity: state.fidelity(),
        separability: state.degree_of_separability(),
        step_probability,
        cumulative_cost,
    }
}

/// Purifies a homogeneous ensemble: each round pairs the current state with
/// an identical copy. `Ox2` canonicalizes before every round; `Ox1` relies on
/// its counter-rotation alone.
pub fn iterate<T: Real>(
    initial: &CorrelationTriple<T>,
    variant: Variant,
    noise: &NoiseModel<T>,
    stop: &StopRule<T>,
) -> PurificationTrace<T> {
    let mut trace = PurificationTrace {
        variant,
        noise: *noise,
        initial: *initial,
        records: vec![record(0, *initial, None, T::one())],
        stop: StopReason::MaxIterations,
    };
    if !check_purifiable(initial) {
        trace.stop = StopReason::NotPurifiable;
        return trace;
    }

    let two: T = lit(2.0);
    let mut state = *initial;
    let mut cost = T::one();
    for k in 1..=stop.max_iterations {
        let prepared = match variant {
            Variant::Ox2 => canonicalize(&state).0,
            Variant::Ox1 => state,
        };
        let step = match analytic_step(&prepared, &prepared, variant, noise) {
            Ok(s) => s,
            Err(Error::AlwaysDiscarded(_)) => {
                trace.stop = StopReason::Discarded;
                return trace;
            }
            Err(e) => unreachable!("analytic step only fails by discarding: {e}"),
        };
        let n = step.success_probability;
        cost = cost * (two / n);
        let next = step.output;
        trace.records.push(record(k, next, Some(n), cost));

        let change = match variant {
            Variant::Ox2 => canonicalize(&next).0.max_abs_diff(&prepared),
            Variant::Ox1 => next.max_abs_diff(&prepared),
        };
        state = next;
        if stop.fidelity_tol.is_some_and(|tol| T::one() - next.fidelity() < tol) {
            trace.stop = StopReason::TargetFidelity;
            break;
        }
        if stop.state_tol.is_some_and(|tol| change < tol) {
            trace.stop = StopReason::FixedPoint;
            break;
        }
        if !check_purifiable(&next) {
            trace.stop = StopReason::NotPurifiable;
            break;
        }
    }
    trace
}
