use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    /// 0 success, 1 mathematical failure, 2 usage or configuration error, 3 budget refusal.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            CliError::Budget(_) => 3,
            _ => 2,
        }
    }
}

impl From<orecode::Error> for CliError {
    fn from(e: orecode::Error) -> Self {
        match e {
            orecode::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            e if e.is_mathematical() => CliError::Math(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
