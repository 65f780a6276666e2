use thiserror::Error;

/// Errors raised by structure analysis, transforms and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// The element set or an operand violates the algebraic structure
    /// (closure, injectivity, mismatched ambient size or label group).
    #[error("structural error: {0}")]
    Structural(String),

    /// A caller broke an operation contract: wrong basis tag, wrong vector
    /// length, spectrum not shaped by the representation set, and so on.
    #[error("contract error: {0}")]
    Contract(String),

    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested path is not implemented for this input (for example
    /// the sweep transform on a family that is not restriction-closed).
    #[error("capability error: {0}")]
    Capability(String),

    /// The predicted size of an object exceeds the configured cap.
    #[error("size cap exceeded: {what} would have {size} elements (cap {cap})")]
    SizeCap { what: String, size: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
