use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Inconsistent(_) => 2,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            other => CliError::Inconsistent(format!("csv: {other:?}")),
        }
    }
}

impl From<distill_core::Error> for CliError {
    fn from(e: distill_core::Error) -> Self {
        match e {
            distill_core::Error::Inconsistent(_) | distill_core::Error::NotBellDiagonal { .. } => {
                CliError::Inconsistent(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}
