//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line for
//! each (with indented detail lines), and exits non-zero if any fails.
//!
//! Run with `cargo test -p distill-cli --test acceptance`.

use std::path::PathBuf;
use std::process::{Command, Output};

use distill_core::audit::{
    check_oracle_equivalence, printed_formula_findings, sample_triple, RELIABILITIES,
};
use distill_core::oracle::pauli_conjugation_table;
use distill_core::protocol::{
    binary_step, pair_cost, separability_closed_form, separability_step, simulate_pair_cost,
};
use distill_core::{
    analytic_step, canonicalize, iterate, oracle_step, Noise, StopRule, Trace, Triple, Variant,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Tolerances and sizes, pinned.
const EQUIVALENCE_PAIRS: usize = 1000;
const EQUIVALENCE_TOL: f64 = 1e-10;
const BINARY_GRID: usize = 10_000;
const BINARY_TOL: f64 = 1e-12;
const CLOSED_FORM_MAX_N: u32 = 20;
const CLOSED_FORM_TOL: f64 = 1e-10;
const LINEAR_RELATION_TOL: f64 = 1e-12;
const NEAR_ONE: f64 = 1e-3;
const PLATEAU_TOL: f64 = 1e-9;
const PLATEAU_MAX_ITER: usize = 30;
const NOISY_RELIABILITY: f64 = 0.994;
const FIXED_POINT_SEPARABILITY: f64 = 0.015_353_310_968_733;
const FIXED_POINT_FIDELITY: f64 = 0.992_323_344_515_634;
const FIXED_POINT_TOL: f64 = 1e-12;
const YIELD_FIDELITY: f64 = 0.62;
const COST_REL_TOL: f64 = 1e-12;
const MC_TRIALS: usize = 100_000;
const MC_ROUNDS: usize = 3;
const MC_SEED: u64 = 17;
const MC_MAX_Z: f64 = 3.0;
const SEPARABILITY_SAMPLES: usize = 10_000;
const WERNER_TOL: f64 = 1e-12;

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(summary: impl Into<String>) -> Self {
        Outcome {
            passed: true,
            summary: summary.into(),
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.passed &= ok;
        self.details
            .push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, what.into()));
    }
}

fn reference_state() -> Triple {
    Triple::from_coefficients(0.16, 0.08, 0.84).unwrap()
}

fn binary_exe() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_distill"))
}

fn distill(args: &[&str]) -> Output {
    Command::new(binary_exe())
        .args(args)
        .output()
        .expect("spawn distill")
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new("analytic step equals the density-matrix oracle");
    let r = check_oracle_equivalence(EQUIVALENCE_PAIRS, 1, &RELIABILITIES);
    o.check(
        r.cases >= EQUIVALENCE_PAIRS * 2 * RELIABILITIES.len(),
        format!(
            "{} cases over {EQUIVALENCE_PAIRS} pairs, p in {RELIABILITIES:?}, both variants, three noise placements",
            r.cases
        ),
    );
    o.check(
        r.failures.is_empty() && r.max_state_dev <= EQUIVALENCE_TOL,
        format!("max output deviation {:e} <= {EQUIVALENCE_TOL:e}", r.max_state_dev),
    );
    o.check(
        r.max_probability_dev <= EQUIVALENCE_TOL,
        format!("max success-probability deviation {:e}", r.max_probability_dev),
    );
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new("binary closed forms");
    let noiseless = Noise::noiseless();
    let (mut coef_dev, mut n_dev, mut step_dev) = (0.0f64, 0.0f64, 0.0f64);
    for k in 1..=BINARY_GRID {
        let f = k as f64 / BINARY_GRID as f64;
        let n_expected = 2.0 * f * f - 2.0 * f + 1.0;
        let coef_expected = (2.0 * f - 1.0) / n_expected;
        let (fp, n) = binary_step(f);
        coef_dev = coef_dev.max((2.0 * fp - 1.0 - coef_expected).abs());
        n_dev = n_dev.max((n - n_expected).abs());
        let s = Triple::binary(f).unwrap();
        let step = analytic_step(&s, &s, Variant::Ox2, &noiseless).unwrap();
        let [cx, cy, cz] = step.output.coefficients();
        step_dev = step_dev
            .max((cx - 1.0).abs())
            .max((cy - coef_expected).abs())
            .max((cz - coef_expected).abs())
            .max((step.success_probability - n_expected).abs());
    }
    o.check(coef_dev <= BINARY_TOL, format!("coefficient (2f-1)/(2f^2-2f+1): max dev {coef_dev:e} over {BINARY_GRID} f"));
    o.check(n_dev <= BINARY_TOL, format!("N = 2f^2-2f+1: max dev {n_dev:e}"));
    o.check(step_dev <= BINARY_TOL, format!("general round on binary inputs: max dev {step_dev:e}"));

    let mut closed_dev = 0.0f64;
    for k in 1..=200 {
        let s0 = k as f64 / 200.0;
        let mut s = s0;
        for n in 0..=CLOSED_FORM_MAX_N {
            closed_dev = closed_dev.max((separability_closed_form(s0, n) - s).abs());
            s = separability_step(s);
        }
    }
    o.check(
        closed_dev <= CLOSED_FORM_TOL,
        format!("n-fold separability step vs closed form, n <= {CLOSED_FORM_MAX_N}: max dev {closed_dev:e}"),
    );
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new("noiseless iteration from (0.16, 0.08, 0.84)");
    let s = reference_state();
    let noise = Noise::noiseless();
    let t1 = iterate(&s, Variant::Ox1, &noise, &StopRule::default());
    let t2 = iterate(&s, Variant::Ox2, &noise, &StopRule::default());

    let out = distill(&["trace", "--initial", "0.16,0.08,0.84", "--variants", "ox1,ox2", "--p", "1"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let row0: Vec<String> = text
        .lines()
        .filter(|l| l.starts_with("0,"))
        .map(|l| l.split(',').nth(6).unwrap_or_default().to_string())
        .collect();
    o.check(
        t1.records[0].fidelity == 0.52 && t2.records[0].fidelity == 0.52 && row0 == ["0.52", "0.52"],
        format!("row-0 fidelity exactly 0.52 (CSV: {row0:?})"),
    );

    let mut linear = 0.0f64;
    for t in [&t1, &t2] {
        for r in &t.records {
            linear = linear.max((2.0 * r.fidelity + r.separability - 2.0).abs());
        }
    }
    o.check(linear <= LINEAR_RELATION_TOL, format!("2F + S = 2 at every iteration: max dev {linear:e}"));

    let f2 = t2.fidelities();
    o.check(
        f2.windows(2).all(|w| w[1] > w[0]),
        format!("ox2 fidelity strictly increasing over {} rounds", f2.len() - 1),
    );

    let f1 = t1.fidelities();
    let first_drop = f1.windows(2).position(|w| w[1] < w[0]);
    let rises_after = first_drop.is_some_and(|k| f1[k + 1..].windows(2).any(|w| w[1] > w[0]));
    o.check(
        rises_after,
        format!(
            "ox1 fidelity decreases before increasing (first rounds: {})",
            f1.iter().take(5).map(|f| format!("{f:.5}")).collect::<Vec<_>>().join(", ")
        ),
    );

    let n1 = t1.first_within(NEAR_ONE);
    let n2 = t2.first_within(NEAR_ONE);
    o.check(
        matches!((n1, n2), (Some(a), Some(b)) if b < a),
        format!("ox2 reaches 1-F < {NEAR_ONE:e} in strictly fewer rounds (ox1 {n1:?}, ox2 {n2:?})"),
    );
    o
}

fn plateau(t: &Trace) -> Option<usize> {
    let s = t.separabilities();
    (1..s.len()).find(|&k| (s[k] - s[k - 1]).abs() < PLATEAU_TOL)
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new(format!("noisy iteration at p = {NOISY_RELIABILITY}"));
    let s = reference_state();
    let noise = Noise::new(NOISY_RELIABILITY).unwrap();
    let rule = StopRule::fixed(PLATEAU_MAX_ITER);
    let t1 = iterate(&s, Variant::Ox1, &noise, &rule);
    let t2 = iterate(&s, Variant::Ox2, &noise, &rule);
    let (k1, k2) = (plateau(&t1), plateau(&t2));
    o.check(
        k1.is_some() && k2.is_some(),
        format!("separability change < {PLATEAU_TOL:e} within {PLATEAU_MAX_ITER} rounds (ox1 {k1:?}, ox2 {k2:?})"),
    );
    o.check(
        matches!((k1, k2), (Some(a), Some(b)) if b <= a),
        "ox2 plateaus no later than ox1",
    );

    for t in [&t1, &t2] {
        let last = t.last();
        o.check(
            (last.separability - FIXED_POINT_SEPARABILITY).abs() <= FIXED_POINT_TOL
                && (last.fidelity - FIXED_POINT_FIDELITY).abs() <= FIXED_POINT_TOL,
            format!(
                "{} fixed point S = {:.15}, F = {:.15}",
                t.variant, last.separability, last.fidelity
            ),
        );
    }

    // The same fixed point through the 16x16 pipeline.
    let mut state = s;
    for _ in 0..PLATEAU_MAX_ITER {
        let prepared = canonicalize(&state).0;
        state = oracle_step(&prepared, &prepared, Variant::Ox2, &noise).unwrap().output;
    }
    o.check(
        (state.degree_of_separability() - FIXED_POINT_SEPARABILITY).abs() <= FIXED_POINT_TOL,
        format!("oracle iteration fixed point S = {:.15}", state.degree_of_separability()),
    );
    o
}

/// Cheapest cost at which the trace first reaches fidelity `level`.
fn cost_to_reach(t: &Trace, level: f64) -> Option<f64> {
    t.records
        .iter()
        .find(|r| r.fidelity >= level)
        .map(|r| r.cumulative_cost)
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new(format!("pair cost from Werner F0 = {YIELD_FIDELITY}"));
    let s = Triple::werner_with_fidelity(YIELD_FIDELITY).unwrap();
    let noise = Noise::noiseless();
    let t1 = iterate(&s, Variant::Ox1, &noise, &StopRule::default());
    let t2 = iterate(&s, Variant::Ox2, &noise, &StopRule::default());

    let reach = t1.last().fidelity.min(t2.last().fidelity);
    let mut levels: Vec<f64> = t1
        .fidelities()
        .into_iter()
        .chain(t2.fidelities())
        .filter(|&f| f <= reach)
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut worst = f64::NEG_INFINITY;
    let mut dominated = true;
    for &level in &levels {
        let (c1, c2) = (cost_to_reach(&t1, level).unwrap(), cost_to_reach(&t2, level).unwrap());
        worst = worst.max(c2 / c1 - 1.0);
        dominated &= c2 <= c1 * (1.0 + COST_REL_TOL);
    }
    o.check(
        dominated,
        format!("ox2 cost <= ox1 cost at {} shared fidelity levels (max relative excess {worst:e})", levels.len()),
    );

    let mut exact = true;
    for t in [&t1, &t2] {
        let points = pair_cost(t);
        exact &= points[0].pairs_needed == 1.0;
        for (k, w) in points.windows(2).enumerate() {
            let n = t.records[k + 1].step_probability.unwrap();
            exact &= w[1].pairs_needed == w[0].pairs_needed * (2.0 / n);
            exact &= w[1].pairs_needed >= w[0].pairs_needed;
        }
    }
    o.check(exact, "cost_0 = 1 and cost_k+1 = cost_k * 2/N_k+1 bit for bit");

    for t in [&t1, &t2] {
        let mc = simulate_pair_cost(t, MC_ROUNDS, MC_TRIALS, MC_SEED);
        o.check(
            mc.z_score().abs() <= MC_MAX_Z,
            format!(
                "{} Monte Carlo after {MC_ROUNDS} rounds: {:.4} +- {:.4} vs expected {:.4} (z = {:.2})",
                t.variant,
                mc.mean,
                mc.std_err,
                mc.expected,
                mc.z_score()
            ),
        );
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new("separability measures agree");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut disagreements = 0;
    let mut entangled = 0;
    for _ in 0..SEPARABILITY_SAMPLES {
        let s = sample_triple(&mut rng);
        if s.is_separable() != s.is_separable_ppt() {
            disagreements += 1;
        }
        if !s.is_separable() {
            entangled += 1;
        }
    }
    o.check(
        disagreements == 0,
        format!("coefficient test vs partial-transpose spectrum on {SEPARABILITY_SAMPLES} states ({entangled} entangled): {disagreements} disagreements"),
    );

    let mut werner_dev = 0.0f64;
    for k in 1..=1000 {
        let t = 1.0 / 3.0 + (2.0 / 3.0) * k as f64 / 1000.0;
        let want = 1.5 * (1.0 - t);
        for s in [Triple::werner(t).unwrap(), Triple::from_coefficients(t, t, t).unwrap()] {
            werner_dev = werner_dev.max((s.degree_of_separability() - want).abs());
        }
    }
    o.check(werner_dev <= WERNER_TOL, format!("Werner S = 3(1-t)/2 for t > 1/3: max dev {werner_dev:e}"));
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new("audit suite");
    let table = pauli_conjugation_table::<f64>();
    o.check(
        table.entries.len() == 16 && table.is_clifford(),
        format!(
            "conjugation table complete with single-term images: {} entries, {} agree with the printed table",
            table.entries.len(),
            table.agreements()
        ),
    );

    let findings = printed_formula_findings(1).unwrap();
    let noisy: Vec<_> = findings
        .iter()
        .filter(|f| f.formula.starts_with("printed noisy"))
        .collect();
    let placements: std::collections::BTreeSet<_> = noisy.iter().map(|f| f.placement).collect();
    o.check(
        noisy.len() == 9 && placements.len() == 3 && noisy.iter().all(|f| f.cases > 0 && f.max_abs_dev.is_finite()),
        format!(
            "noisy formula table: {} rows over placements {placements:?}, {} agree",
            noisy.len(),
            noisy.iter().filter(|f| f.agrees()).count()
        ),
    );

    let out = distill(&["audit"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let disagreeing = text.lines().filter(|l| l.ends_with(",no")).count();
    o.check(
        out.status.code() == Some(0) && text.contains(",pass") && disagreeing > 0,
        format!(
            "`distill audit` exits {:?} with analytic-vs-oracle pass and {disagreeing} printed-formula disagreements reported",
            out.status.code()
        ),
    );
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new("byte-identical output");
    let dir = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 6] = [
        &["trace"],
        &["trace", "--p", "0.994", "--noise", "both", "--binary", "0.8"],
        &["yield"],
        &["step", "--initial", "0.5,0.3,0.2", "--partner", "0.7,0.1,0.05"],
        &["audit", "--pairs", "100"],
        &["yield", "--werner", "0.5", "--variants", "ox2", "--digits", "8"],
    ];
    for (k, args) in commands.iter().enumerate() {
        let a = distill(args);
        let b = distill(args);
        let path = dir.path().join(format!("run{k}.csv"));
        let mut with_out = args.to_vec();
        let p = path.to_str().unwrap();
        with_out.extend(["--out", p]);
        let c = distill(&with_out);
        let file = std::fs::read(&path).unwrap_or_default();
        o.check(
            a.status.success() && c.status.success() && a.stdout == b.stdout && a.stdout == file && !a.stdout.is_empty(),
            format!("`distill {}` ({} bytes)", args.join(" "), a.stdout.len()),
        );
    }
    o
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1", criterion_1),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7", criterion_7),
        ("8", criterion_8),
    ];
    let mut failed = Vec::new();
    for (id, run) in criteria {
        let o = run();
        println!(
            "criterion {id}: {} {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.summary
        );
        for d in &o.details {
            println!("    {d}");
        }
        if !o.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failed criteria {}", failed.join(", "));
        std::process::exit(1);
    }
}
