use std::io::Write;

use distill_core::protocol::{PurificationTrace, StopReason, TraceRecord};

use super::{csv_writer, traces, write_header};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::format::{number, optional};

pub const COLUMNS: [&str; 11] = [
    "iteration",
    "variant",
    "p",
    "cx",
    "cy",
    "cz",
    "fidelity",
    "separability",
    "step_probability",
    "cumulative_cost",
    "status",
];

/// `canonical` rows are entangled with non-negative coefficients, so that
/// `2F + S = 2`; `rotated` rows are entangled but need a local rotation first.
pub fn status(trace: &PurificationTrace<f64>, record: &TraceRecord<f64>) -> &'static str {
    let last = record.iteration + 1 == trace.records.len();
    if last && trace.stop == StopReason::NotPurifiable {
        "not-purifiable"
    } else if record.state.is_separable() {
        "separable"
    } else if record.state.is_positive_form() {
        "canonical"
    } else {
        "rotated"
    }
}

pub fn trace(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let traces = traces(config)?;
    write_header(config, out)?;
    let stops: Vec<String> = traces
        .iter()
        .map(|t| format!("{}={}", t.variant, t.stop.label()))
        .collect();
    writeln!(out, "# stop: {}", stops.join(" "))?;

    let d = config.digits;
    let p = number(config.noise.reliability(), d);
    let mut w = csv_writer(out);
    w.write_record(COLUMNS)?;
    for t in &traces {
        for r in &t.records {
            let [cx, cy, cz] = r.state.coefficients();
            w.write_record([
                r.iteration.to_string(),
                t.variant.to_string(),
                p.clone(),
                number(cx, d),
                number(cy, d),
                number(cz, d),
                number(r.fidelity, d),
                number(r.separability, d),
                optional(r.step_probability, d),
                number(r.cumulative_cost, d),
                status(t, r).to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
