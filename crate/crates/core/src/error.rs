use thiserror::Error;

pub type Result<T, E = MedError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum MedError {
    /// Two edges overlap along a common line. The layout has no meaningful
    /// partial-edge drawing and must be rejected.
    #[error("edges {first} and {second} overlap collinearly")]
    CollinearOverlap { first: usize, second: usize },

    #[error("collinear overlapping segments")]
    CollinearSegments,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Every invariant violation found while validating a graph or layout.
    #[error("invalid layout: {}", .problems.join("; "))]
    InvalidLayout { problems: Vec<String> },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("crossing of edge {edge} at u={u} lies outside its blank area")]
    NotSchedulable { edge: usize, u: f64 },

    #[error("invalid timeline: {0}")]
    InvalidTimeline(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl MedError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        MedError::InvalidParameter(msg.into())
    }
}

impl From<serde_json::Error> for MedError {
    fn from(e: serde_json::Error) -> Self {
        MedError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
