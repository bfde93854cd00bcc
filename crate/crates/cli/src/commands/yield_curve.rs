use std::io::Write;

use distill_core::protocol::pair_cost;

use super::{csv_writer, traces, write_header};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::format::number;

pub const COLUMNS: [&str; 6] = [
    "variant",
    "iteration",
    "fidelity",
    "pairs_needed",
    "log10_pairs",
    "log10_one_minus_F",
];

pub fn yield_curve(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let traces = traces(config)?;
    write_header(config, out)?;
    let d = config.digits;
    let mut w = csv_writer(out);
    w.write_record(COLUMNS)?;
    for t in &traces {
        for point in pair_cost(t) {
            w.write_record([
                t.variant.to_string(),
                point.iteration.to_string(),
                number(point.fidelity, d),
                number(point.pairs_needed, d),
                number(point.pairs_needed.log10(), d),
                number((1.0 - point.fidelity).log10(), d),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
