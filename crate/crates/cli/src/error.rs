use thiserror::Error;

/// Failure of a command, carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("singularity: {0}")]
    Singular(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Singular(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<bevholt::Error> for CliError {
    fn from(e: bevholt::Error) -> Self {
        match e {
            bevholt::Error::Singular { .. } | bevholt::Error::ClosedFormSingular { .. } => {
                CliError::Singular(e.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}
