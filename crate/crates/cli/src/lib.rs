//! Experiment driver for the `distill` binary.
//!
//! Every command writes CSV preceded by `#` metadata lines. Output depends
//! only on the resolved configuration, so identical invocations produce
//! byte-identical files.

pub mod commands;
pub mod config;
mod error;
pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use config::{Cli, CommandKind, RunConfig, StateSpec};
pub use error::CliError;

/// Parses `args` (including the program name) and runs the command. Output
/// goes to `--out` when given, otherwise to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            write!(stdout, "{e}")?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string().trim_end().to_string())),
    };
    let (kind, options) = cli.command.split();
    let config = RunConfig::resolve(kind, options)?;
    match &config.out {
        Some(path) => {
            let mut buf = Vec::new();
            let result = commands::execute(&config, &mut buf);
            fs::write(path, &buf)?;
            result
        }
        None => commands::execute(&config, stdout),
    }
}
