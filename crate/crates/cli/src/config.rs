//! Command-line and config-file options, resolved into a [`RunConfig`].

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use distill_core::{Noise, Triple, Variant};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "distill", version, about = "Bell-diagonal entanglement purification experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Trace,
    Yield,
    Audit,
    Step,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity and separability per round, for each variant.
    Trace(Options),
    /// Expected pair cost against fidelity.
    Yield(Options),
    /// BCNOT conjugation table, analytic-vs-oracle check and formula audit.
    Audit(Options),
    /// One round on a pair of states, checked against the oracle.
    Step(Options),
}

impl Command {
    pub fn split(self) -> (CommandKind, Options) {
        match self {
            Command::Trace(o) => (CommandKind::Trace, o),
            Command::Yield(o) => (CommandKind::Yield, o),
            Command::Audit(o) => (CommandKind::Audit, o),
            Command::Step(o) => (CommandKind::Step, o),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    Gate,
    Transmission,
    Both,
}

/// Flags shared by every subcommand. The same keys are accepted in a TOML
/// file passed with `--config`; flags given on the command line win.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    /// TOML file with default values for any of the other flags.
    #[arg(long, value_name = "PATH")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Initial state as fidelity-form coefficients, or `ideal`.
    #[arg(long, value_name = "CX,CY,CZ|ideal", allow_hyphen_values = true)]
    pub initial: Option<String>,

    /// Binary initial state with target population f.
    #[arg(long, value_name = "F")]
    pub binary: Option<f64>,

    /// Werner initial state with all three coefficients equal to t.
    #[arg(long, value_name = "T", allow_hyphen_values = true)]
    pub werner: Option<f64>,

    /// Werner initial state with the given fidelity.
    #[arg(long, value_name = "F0")]
    pub fidelity: Option<f64>,

    /// Second input state of `step`, same syntax as `--initial`.
    #[arg(long, value_name = "CX,CY,CZ|ideal", allow_hyphen_values = true)]
    pub partner: Option<String>,

    /// Comma-separated protocol variants.
    #[arg(long, value_name = "LIST")]
    pub variants: Option<String>,

    /// Reliability of local operations, in (0, 1].
    #[arg(long, value_name = "P")]
    pub p: Option<f64>,

    /// Where the noise acts.
    #[arg(long, value_enum)]
    pub noise: Option<Placement>,

    #[arg(long, value_name = "N")]
    pub max_iter: Option<usize>,

    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Significant digits in emitted numbers (at least 6).
    #[arg(long, value_name = "N")]
    pub digits: Option<usize>,

    /// Random state pairs in the analytic-vs-oracle check.
    #[arg(long, value_name = "N")]
    pub pairs: Option<usize>,

    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
}

impl Options {
    fn has_state(&self) -> bool {
        self.initial.is_some() || self.binary.is_some() || self.werner.is_some() || self.fidelity.is_some()
    }

    /// Fills unset fields from `file`. State flags travel as a group: any
    /// state flag on the command line discards every state key in the file.
    fn overlay(self, file: Options) -> Options {
        let state_from_file = !self.has_state();
        let pick = |flag: Option<f64>, f: Option<f64>| if state_from_file { f } else { flag };
        Options {
            config: self.config,
            initial: if state_from_file { file.initial } else { self.initial },
            binary: pick(self.binary, file.binary),
            werner: pick(self.werner, file.werner),
            fidelity: pick(self.fidelity, file.fidelity),
            partner: self.partner.or(file.partner),
            variants: self.variants.or(file.variants),
            p: self.p.or(file.p),
            noise: self.noise.or(file.noise),
            max_iter: self.max_iter.or(file.max_iter),
            out: self.out.or(file.out),
            digits: self.digits.or(file.digits),
            pairs: self.pairs.or(file.pairs),
            seed: self.seed.or(file.seed),
        }
    }
}

/// How the initial state was specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    Ideal,
    Coefficients([f64; 3]),
    Binary(f64),
    Werner(f64),
    Fidelity(f64),
}

impl StateSpec {
    pub fn build(&self) -> Result<Triple, CliError> {
        let s = match *self {
            StateSpec::Ideal => Ok(Triple::ideal()),
            StateSpec::Coefficients([x, y, z]) => Triple::from_coefficients(x, y, z),
            StateSpec::Binary(f) => Triple::binary(f),
            StateSpec::Werner(t) => Triple::from_coefficients(t, t, t),
            StateSpec::Fidelity(f) => Triple::werner_with_fidelity(f),
        };
        s.map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn describe(&self) -> String {
        match *self {
            StateSpec::Ideal => "ideal".to_string(),
            StateSpec::Coefficients([x, y, z]) => format!("coefficients {x},{y},{z}"),
            StateSpec::Binary(f) => format!("binary f={f}"),
            StateSpec::Werner(t) => format!("werner t={t}"),
            StateSpec::Fidelity(f) => format!("werner F0={f}"),
        }
    }
}

fn parse_state(text: &str) -> Result<StateSpec, CliError> {
    if text.trim().eq_ignore_ascii_case("ideal") {
        return Ok(StateSpec::Ideal);
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "expected three comma-separated coefficients or `ideal`, got `{text}`"
        )));
    }
    let mut c = [0.0; 3];
    for (slot, part) in c.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| CliError::Usage(format!("`{part}` is not a number")))?;
    }
    Ok(StateSpec::Coefficients(c))
}

pub const DEFAULT_DIGITS: usize = 12;
pub const MIN_DIGITS: usize = 6;
pub const DEFAULT_PAIRS: usize = 1000;
pub const DEFAULT_SEED: u64 = 20_240_101;

/// Fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub initial: StateSpec,
    pub partner: Option<StateSpec>,
    pub variants: Vec<Variant>,
    pub noise: Noise,
    pub max_iterations: usize,
    pub out: Option<PathBuf>,
    pub digits: usize,
    pub pairs: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn resolve(command: CommandKind, flags: Options) -> Result<Self, CliError> {
        let opts = match &flags.config {
            Some(path) => {
                let file = read_config(path)?;
                flags.overlay(file)
            }
            None => flags,
        };

        let mut specs = Vec::new();
        if let Some(text) = &opts.initial {
            specs.push(parse_state(text)?);
        }
        if let Some(f) = opts.binary {
            specs.push(StateSpec::Binary(f));
        }
        if let Some(t) = opts.werner {
            specs.push(StateSpec::Werner(t));
        }
        if let Some(f) = opts.fidelity {
            specs.push(StateSpec::Fidelity(f));
        }
        let initial = match (specs.len(), command) {
            (0, CommandKind::Yield) => StateSpec::Fidelity(0.62),
            (0, _) => StateSpec::Coefficients([0.16, 0.08, 0.84]),
            (1, _) => specs[0],
            _ => {
                return Err(CliError::Usage(
                    "give at most one of --initial, --binary, --werner, --fidelity".into(),
                ))
            }
        };
        let partner = opts.partner.as_deref().map(parse_state).transpose()?;
        if partner.is_some() && command != CommandKind::Step {
            return Err(CliError::Usage("--partner only applies to `step`".into()));
        }

        let variants = match &opts.variants {
            None => Variant::ALL.to_vec(),
            Some(list) => {
                let mut v = Vec::new();
                for item in list.split(',').filter(|s| !s.trim().is_empty()) {
                    let parsed: Variant = item.parse().map_err(CliError::Usage)?;
                    if !v.contains(&parsed) {
                        v.push(parsed);
                    }
                }
                if v.is_empty() {
                    return Err(CliError::Usage("--variants is empty".into()));
                }
                v
            }
        };

        let p = opts.p.unwrap_or(1.0);
        if !(p > 0.0 && p <= 1.0) {
            return Err(CliError::Usage(format!("--p must lie in (0, 1], got {p}")));
        }
        let (gate, transmission) = match opts.noise.unwrap_or(Placement::Gate) {
            Placement::Gate => (true, false),
            Placement::Transmission => (false, true),
            Placement::Both => (true, true),
        };
        let noise = Noise::with_placement(p, gate, transmission)
            .map_err(|e| CliError::Usage(e.to_string()))?;

        let digits = opts.digits.unwrap_or(DEFAULT_DIGITS);
        if !(MIN_DIGITS..=17).contains(&digits) {
            return Err(CliError::Usage(format!(
                "--digits must lie in [{MIN_DIGITS}, 17], got {digits}"
            )));
        }
        let max_iterations = opts.max_iter.unwrap_or(30);
        let pairs = opts.pairs.unwrap_or(DEFAULT_PAIRS);
        if pairs == 0 {
            return Err(CliError::Usage("--pairs must be positive".into()));
        }

        let config = RunConfig {
            command,
            initial,
            partner,
            variants,
            noise,
            max_iterations,
            out: opts.out,
            digits,
            pairs,
            seed: opts.seed.unwrap_or(DEFAULT_SEED),
        };
        // Reject unphysical states up front rather than mid-run.
        config.initial.build()?;
        if let Some(partner) = &config.partner {
            partner.build()?;
        }
        Ok(config)
    }
}

fn read_config(path: &Path) -> Result<Options, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
}
