mod audit;
mod step;
mod trace;
mod yield_curve;

use std::io::Write;

use distill_core::{StopRule, Variant};

use crate::config::{CommandKind, RunConfig};
use crate::error::CliError;

pub use audit::audit;
pub use step::step;
pub use trace::trace;
pub use yield_curve::yield_curve;

pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match config.command {
        CommandKind::Trace => trace(config, out),
        CommandKind::Yield => yield_curve(config, out),
        CommandKind::Audit => audit(config, out),
        CommandKind::Step => step(config, out),
    }
}

fn command_name(kind: CommandKind) -> &'static str {
    match kind {
        CommandKind::Trace => "trace",
        CommandKind::Yield => "yield",
        CommandKind::Audit => "audit",
        CommandKind::Step => "step",
    }
}

fn write_header(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "# distill {} {}", command_name(config.command), env!("CARGO_PKG_VERSION"))?;
    if config.command != CommandKind::Audit {
        writeln!(out, "# initial: {}", config.initial.describe())?;
        if let Some(partner) = &config.partner {
            writeln!(out, "# partner: {}", partner.describe())?;
        }
        let names: Vec<&str> = config.variants.iter().map(|v| v.name()).collect();
        writeln!(out, "# variants: {}", names.join(","))?;
        writeln!(
            out,
            "# p: {} noise: {}",
            config.noise.reliability(),
            config.noise.placement_label()
        )?;
    }
    if matches!(config.command, CommandKind::Trace | CommandKind::Yield) {
        writeln!(out, "# max-iter: {}", config.max_iterations)?;
    }
    if config.command == CommandKind::Audit {
        writeln!(out, "# pairs: {} seed: {}", config.pairs, config.seed)?;
    }
    writeln!(out, "# digits: {}", config.digits)?;
    Ok(())
}

fn stop_rule(config: &RunConfig) -> StopRule<f64> {
    StopRule {
        max_iterations: config.max_iterations,
        ..StopRule::default()
    }
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn traces(config: &RunConfig) -> Result<Vec<distill_core::Trace>, CliError> {
    let initial = config.initial.build()?;
    let rule = stop_rule(config);
    Ok(config
        .variants
        .iter()
        .map(|&v: &Variant| distill_core::iterate(&initial, v, &config.noise, &rule))
        .collect())
}
