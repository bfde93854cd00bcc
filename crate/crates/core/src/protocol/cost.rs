//! Pair-cost accounting.
//!
//! A round consumes two pairs and keeps one with probability `N`, so the
//! expected number of initial pairs behind a pair that survived `k` rounds is
//! `Π_{j<=k} 2 / N_j`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Real;

use super::PurificationTrace;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostPoint<T: Real> {
    pub iteration: usize,
    pub fidelity: T,
    pub pairs_needed: T,
}

/// `(F_k, cost_k)` for every record of the trace.
pub fn pair_cost<T: Real>(trace: &PurificationTrace<T>) -> Vec<CostPoint<T>> {
    trace
        .records
        .iter()
        .map(|r| CostPoint {
            iteration: r.iteration,
            fidelity: r.fidelity,
            pairs_needed: r.cumulative_cost,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub rounds: usize,
    pub trials: usize,
    pub mean: f64,
    pub std_err: f64,
    pub expected: f64,
}

impl MonteCarloEstimate {
    /// Deviation from the expectation in units of the standard error.
    pub fn z_score(&self) -> f64 {
        (self.mean - self.expected) / self.std_err
    }
}

/// Samples the number of initial pairs needed to produce one pair after
/// `rounds` rounds of the trace, with failed rounds retried from scratch.
///
/// # Panics
/// If the trace has fewer than `rounds` completed rounds.
pub fn simulate_pair_cost<T: Real>(
    trace: &PurificationTrace<T>,
    rounds: usize,
    trials: usize,
    seed: u64,
) -> MonteCarloEstimate {
    assert!(
        trace.records.len() > rounds,
        "trace has only {} rounds",
        trace.records.len() - 1
    );
    let probs: Vec<f64> = trace.records[1..=rounds]
        .iter()
        .map(|r| {
            r.step_probability
                .and_then(|p| p.to_f64())
                .expect("non-initial records carry a probability")
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        let c = sample_cost(&probs, rounds, &mut rng) as f64;
        sum += c;
        sum_sq += c * c;
    }
    let n = trials as f64;
    let mean = sum / n;
    let var = (sum_sq - n * mean * mean) / (n - 1.0);
    MonteCarloEstimate {
        rounds,
        trials,
        mean,
        std_err: (var / n).sqrt(),
        expected: trace.records[rounds]
            .cumulative_cost
            .to_f64()
            .unwrap_or(f64::NAN),
    }
}

fn sample_cost<R: Rng>(probs: &[f64], level: usize, rng: &mut R) -> u64 {
    if level == 0 {
        return 1;
    }
    let p = probs[level - 1];
    let mut total = 0;
    loop {
        total += sample_cost(probs, level - 1, rng) + sample_cost(probs, level - 1, rng);
        if rng.gen_bool(p.clamp(0.0, 1.0)) {
            return total;
        }
    }
}
