use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("numeric failure at {point}: {source}")]
    Numeric {
        point: String,
        #[source]
        source: qbatt_core::Error,
    },
    #[error("{failed} of {total} grid points failed")]
    FailedPoints { failed: usize, total: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::UnknownPreset(_) | CliError::Io(_) => 2,
            CliError::Numeric { .. } | CliError::FailedPoints { .. } => 3,
        }
    }
}
