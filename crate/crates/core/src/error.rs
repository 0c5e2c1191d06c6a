use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants are grouped so that front ends can map them onto exit codes:
/// [`Error::is_capacity`] for size limits, [`Error::is_validation`] for bad input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("beamsplitter not normalized: |alpha|^2 + |beta|^2 = {0}")]
    Normalization(f64),

    #[error("invalid modes ({i}, {j}) for a {modes}-mode circuit")]
    Mode { i: usize, j: usize, modes: usize },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("target unreachable: {0}")]
    Unreachable(String),

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    #[error("evidence contradicts verdict: {0}")]
    Inconsistency(String),

    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }

    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_)
                | Error::NonFinite { .. }
                | Error::Normalization(_)
                | Error::Mode { .. }
                | Error::Validation(_)
                | Error::Parameter(_)
                | Error::Precondition(_)
                | Error::Unreachable(_)
                | Error::Json(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
