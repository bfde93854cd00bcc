use std::io::Write;

use distill_core::audit::AGREEMENT_TOL;
use distill_core::{analytic_step, oracle_step, Error};

use super::{csv_writer, write_header};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::format::number;

pub const COLUMNS: [&str; 10] = [
    "variant",
    "p",
    "cx",
    "cy",
    "cz",
    "fidelity",
    "separability",
    "success_probability",
    "oracle_deviation",
    "status",
];

pub fn step(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let first = config.initial.build()?;
    let second = match &config.partner {
        Some(spec) => spec.build()?,
        None => first,
    };
    let d = config.digits;
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let mut mismatch = None;
    for &variant in &config.variants {
        let analytic = analytic_step(&first, &second, variant, &config.noise);
        let oracle = oracle_step(&first, &second, variant, &config.noise);
        match (analytic, oracle) {
            (Ok(a), Ok(o)) => {
                let dev = a
                    .output
                    .max_abs_diff(&o.output)
                    .max((a.success_probability - o.success_probability).abs());
                if dev > AGREEMENT_TOL {
                    mismatch = Some(format!("{variant}: analytic and oracle differ by {dev:e}"));
                }
                let [cx, cy, cz] = a.output.coefficients();
                notes.push(format!(
                    "# {variant}: F {} -> {}, N = {}, output ({}, {}, {})",
                    number(first.fidelity(), d),
                    number(a.output.fidelity(), d),
                    number(a.success_probability, d),
                    number(cx, d),
                    number(cy, d),
                    number(cz, d),
                ));
                rows.push(vec![
                    variant.to_string(),
                    number(config.noise.reliability(), d),
                    number(cx, d),
                    number(cy, d),
                    number(cz, d),
                    number(a.output.fidelity(), d),
                    number(a.output.degree_of_separability(), d),
                    number(a.success_probability, d),
                    number(dev, d),
                    "ok".to_string(),
                ]);
            }
            (Err(Error::AlwaysDiscarded(_)), Err(Error::AlwaysDiscarded(_))) => {
                notes.push(format!("# {variant}: pair is always discarded"));
                let mut row = vec![variant.to_string(), number(config.noise.reliability(), d)];
                row.extend(std::iter::repeat_n(String::new(), 5));
                row.extend(["0".to_string(), String::new(), "discarded".to_string()]);
                rows.push(row);
            }
            (a, o) => {
                mismatch = Some(format!(
                    "{variant}: analytic {:?}, oracle {:?}",
                    a.err(),
                    o.err()
                ));
            }
        }
    }

    write_header(config, out)?;
    for note in &notes {
        writeln!(out, "{note}")?;
    }
    let mut w = csv_writer(out);
    w.write_record(COLUMNS)?;
    for row in &rows {
        w.write_record(row)?;
    }
    w.flush()?;
    match mismatch {
        Some(m) => Err(CliError::Inconsistent(m)),
        None => Ok(()),
    }
}
