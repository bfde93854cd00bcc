//! Cross-checks between the closed forms and the density-matrix oracle.
//!
//! Two kinds of result come out of here. Equivalence of
//! [`analytic_step`] and [`oracle_step`] is a hard contract: a mismatch is a
//! bug. The printed formulas are findings: they are measured against the
//! oracle and reported, whichever way that goes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::{canonicalize, BellPopulations, CorrelationTriple, Party};
use crate::error::Result;
use crate::noise::NoiseModel;
use crate::oracle::{depolarize_pair, oracle_step};
use crate::protocol::{
    analytic_step, binary_step, noisy_binary_initial_separability, printed,
    separability_closed_form, separability_step, Variant,
};

/// Agreement threshold for every comparison in this module.
pub const AGREEMENT_TOL: f64 = 1e-10;

/// Reliabilities exercised by the equivalence check.
pub const RELIABILITIES: [f64; 3] = [1.0, 0.994, 0.9];

/// Uniform sample from the tetrahedron of valid Bell-diagonal states.
pub fn sample_triple<R: Rng + ?Sized>(rng: &mut R) -> CorrelationTriple<f64> {
    let mut w = [0.0f64; 4];
    for x in &mut w {
        *x = -(1.0 - rng.gen::<f64>()).ln();
    }
    let total: f64 = w.iter().sum();
    let pops = BellPopulations {
        a: w[0] / total,
        b: w[1] / total,
        c: w[2] / total,
        d: w[3] / total,
    };
    CorrelationTriple::from_populations(pops)
}

/// Noise placements: gate only, transmission only, both.
pub fn placements(p: f64) -> Vec<NoiseModel<f64>> {
    [(true, false), (false, true), (true, true)]
        .iter()
        .map(|&(g, t)| NoiseModel::with_placement(p, g, t).expect("p in range"))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub cases: usize,
    pub max_state_dev: f64,
    pub max_probability_dev: f64,
    pub failures: Vec<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.max_state_dev <= AGREEMENT_TOL
            && self.max_probability_dev <= AGREEMENT_TOL
    }
}

/// Runs [`analytic_step`] and [`oracle_step`] on `pairs` random state pairs
/// for both variants, every reliability and every noise placement.
pub fn check_oracle_equivalence(pairs: usize, seed: u64, reliabilities: &[f64]) -> EquivalenceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = EquivalenceReport {
        cases: 0,
        max_state_dev: 0.0,
        max_probability_dev: 0.0,
        failures: Vec::new(),
    };
    for _ in 0..pairs {
        let s1 = sample_triple(&mut rng);
        let s2 = sample_triple(&mut rng);
        for &p in reliabilities {
            for noise in placements(p) {
                for variant in Variant::ALL {
                    report.cases += 1;
                    let a = analytic_step(&s1, &s2, variant, &noise);
                    let o = oracle_step(&s1, &s2, variant, &noise);
                    match (a, o) {
                        (Ok(a), Ok(o)) => {
                            let ds = a.output.max_abs_diff(&o.output);
                            let dp = (a.success_probability - o.success_probability).abs();
                            report.max_state_dev = report.max_state_dev.max(ds);
                            report.max_probability_dev = report.max_probability_dev.max(dp);
                            if ds > AGREEMENT_TOL || dp > AGREEMENT_TOL {
                                report.failures.push(format!(
                                    "{variant} {noise} {s1} x {s2}: state dev {ds:e}, N dev {dp:e}"
                                ));
                            }
                        }
                        (Err(_), Err(_)) => {}
                        (a, o) => report.failures.push(format!(
                            "{variant} {noise} {s1} x {s2}: analytic {:?} vs oracle {:?}",
                            a.err(),
                            o.err()
                        )),
                    }
                }
            }
        }
    }
    report
}

/// One formula measured against the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct FormulaFinding {
    pub formula: &'static str,
    pub placement: &'static str,
    pub cases: usize,
    pub max_abs_dev: f64,
}

impl FormulaFinding {
    pub fn agrees(&self) -> bool {
        self.max_abs_dev <= AGREEMENT_TOL
    }
}

fn binary_grid() -> Vec<f64> {
    (0..=40).map(|k| 0.51 + 0.012 * k as f64).collect()
}

/// Noiseless binary closed forms against the oracle. All of these are
/// expected to agree.
pub fn closed_form_findings() -> Result<Vec<FormulaFinding>> {
    let clean = NoiseModel::noiseless();
    let mut step_dev = 0.0f64;
    let mut sep_dev = 0.0f64;
    let grid = binary_grid();
    for &f in &grid {
        let b = CorrelationTriple::binary(f)?;
        let o = oracle_step(&b, &b, Variant::Ox2, &clean)?;
        let (fp, n) = binary_step(f);
        step_dev = step_dev
            .max((o.output.fidelity() - fp).abs())
            .max((o.success_probability - n).abs())
            .max(o.output.max_abs_diff(&CorrelationTriple::binary(fp)?));
        let s0 = b.degree_of_separability();
        sep_dev = sep_dev.max((o.output.degree_of_separability() - separability_step(s0)).abs());
    }

    let mut closed_dev = 0.0f64;
    let mut closed_cases = 0;
    for k in 1..=50 {
        let s0 = k as f64 / 50.0;
        let mut s = s0;
        for n in 0..=20u32 {
            closed_dev = closed_dev.max((separability_closed_form(s0, n) - s).abs());
            closed_cases += 1;
            s = separability_step(s);
        }
    }

    let mut init_dev = 0.0f64;
    let mut init_cases = 0;
    for &f in &grid {
        for p in [1.0, 0.994, 0.95, 0.9, 0.8] {
            let noise = NoiseModel::with_placement(p, false, true)?;
            let rho = depolarize_pair(
                &CorrelationTriple::binary(f)?.to_density_matrix(),
                Party::Alice,
                &noise,
            );
            let raw = rho.to_triple()?.raw_separability();
            init_dev = init_dev.max((raw - noisy_binary_initial_separability(f, &noise)).abs());
            init_cases += 1;
        }
    }

    Ok(vec![
        FormulaFinding {
            formula: "binary round f' = f^2/(f^2+(1-f)^2), N = 2f^2-2f+1",
            placement: "none",
            cases: grid.len(),
            max_abs_dev: step_dev,
        },
        FormulaFinding {
            formula: "binary separability S1 = S0^2/(1+(1-S0)^2)",
            placement: "none",
            cases: grid.len(),
            max_abs_dev: sep_dev,
        },
        FormulaFinding {
            formula: "closed form S_n = 2/((2/S0-1)^(2^n)+1) vs n-fold step",
            placement: "none",
            cases: closed_cases,
            max_abs_dev: closed_dev,
        },
        FormulaFinding {
            formula: "noisy initial separability (3-p(4f-1))/2",
            placement: "transmission",
            cases: init_cases,
            max_abs_dev: init_dev,
        },
    ])
}

/// Printed formulas against the oracle. Disagreements are findings.
pub fn printed_formula_findings(seed: u64) -> Result<Vec<FormulaFinding>> {
    let clean = NoiseModel::noiseless();
    let mut out = Vec::new();

    // Single-round map, target population and separability on canonical pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut step_dev, mut pop_dev, mut sep_dev) = (0.0f64, 0.0f64, 0.0f64);
    let cases = 500;
    for _ in 0..cases {
        let s1 = canonicalize(&sample_triple(&mut rng)).0;
        let s2 = canonicalize(&sample_triple(&mut rng)).0;
        let o = oracle_step(&s1, &s2, Variant::Ox2, &clean)?;
        let (c, d) = (s1.coefficients(), s2.coefficients());
        let got = o.output.coefficients();
        let printed_step = printed::step_coefficients(c, d);
        for k in 0..3 {
            step_dev = step_dev.max((got[k] - printed_step[k]).abs());
        }
        pop_dev = pop_dev.max((o.output.fidelity() - printed::target_population(c, d)).abs());
        sep_dev = sep_dev
            .max((o.output.raw_separability() - printed::general_separability(c, d)).abs());
    }
    out.push(FormulaFinding {
        formula: "printed round map (y numerator cz*cz' + cy*cx')",
        placement: "none",
        cases,
        max_abs_dev: step_dev,
    });
    out.push(FormulaFinding {
        formula: "printed target population [(1+cz)(1+cz')+(cx+cy)(cx'+cy')]/(4N)",
        placement: "none",
        cases,
        max_abs_dev: pop_dev,
    });
    out.push(FormulaFinding {
        formula: "printed separability 3/2 - [(|cx|+|cy|)(|cx'|+|cy'|)+|cz|+|cz'|]/(2N)",
        placement: "none",
        cases,
        max_abs_dev: sep_dev,
    });

    // Noisy binary round under every placement of the noise.
    let ps = [0.994, 0.95, 0.9, 0.8];
    for placement in [(true, false, "gate"), (false, true, "transmission"), (true, true, "both")] {
        let (mut coef_dev, mut s_dev, mut n_dev) = (0.0f64, 0.0f64, 0.0f64);
        let mut n_cases = 0;
        for &f in &binary_grid() {
            for &p in &ps {
                let noise = NoiseModel::with_placement(p, placement.0, placement.1)?;
                let b = CorrelationTriple::binary(f)?;
                let o = oracle_step(&b, &b, Variant::Ox2, &noise)?;
                let got = o.output.coefficients();
                let want = printed::noisy_binary_coefficients(f, p);
                for k in 0..3 {
                    coef_dev = coef_dev.max((got[k] - want[k]).abs());
                }
                s_dev = s_dev.max(
                    (o.output.raw_separability() - printed::noisy_binary_separability(f, p)).abs(),
                );
                let cz = 2.0 * f - 1.0;
                n_dev = n_dev.max(
                    (o.success_probability - printed::noisy_success_probability(cz, cz, p)).abs(),
                );
                n_cases += 1;
            }
        }
        out.push(FormulaFinding {
            formula: "printed noisy binary coefficients p^2(2f^2-2f+1, 2f-1, 2f-1)/(1-2p^2 f(1-f))",
            placement: placement.2,
            cases: n_cases,
            max_abs_dev: coef_dev,
        });
        out.push(FormulaFinding {
            formula: "printed noisy binary separability [3 - p^2(2f^2+2f-1)/(1-2p^2 f(1-f))]/2",
            placement: placement.2,
            cases: n_cases,
            max_abs_dev: s_dev,
        });
        out.push(FormulaFinding {
            formula: "printed noisy success probability [1+p^2(1+2|cz cz'|)]/(4p^2)",
            placement: placement.2,
            cases: n_cases,
            max_abs_dev: n_dev,
        });
    }
    Ok(out)
}
