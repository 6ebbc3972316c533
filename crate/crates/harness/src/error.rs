use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    /// A malformed input line, 1-based.
    #[error("{file}: line {line}: {message}")]
    Parse { file: &'static str, line: usize, message: String },
    /// Well-formed input that does not describe a valid instance.
    #[error("invalid instance: {0}")]
    Structure(String),
    #[error("profile infeasible: {0}")]
    ProfileInfeasible(String),
    /// The generator could not produce an instance meeting its regime.
    #[error("generation failed: {0}")]
    Generation(String),
    #[error(transparent)]
    Core(#[from] assoclie::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
