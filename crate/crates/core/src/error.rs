use thiserror::Error;

/// Errors produced anywhere in the classification pipeline.
#[derive(Debug, Error)]
pub enum DeaError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("dataset contains no units")]
    EmptyDataset,

    #[error("unit index {index} out of range for {units} units")]
    UnitOutOfRange { index: usize, units: usize },

    #[error("relation undefined for negative data: {0}")]
    UnsupportedRelation(String),

    #[error("invalid tolerance configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid linear program: {0}")]
    InvalidProblem(String),

    #[error("simplex stalled after {iterations} iterations")]
    SolverStall { iterations: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal solver error: {0}")]
    Internal(String),

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = DeaError> = std::result::Result<T, E>;
