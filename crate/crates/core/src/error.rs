use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Shapes or dimensions that do not fit together.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// A parameter outside the supported domain, e.g. `d < 2`.
    #[error("domain error: {0}")]
    Domain(String),
    /// An input that is well-formed but violates an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A malformed matrix, vector or basis document.
    #[error("invalid {document}: field `{field}`: {reason}")]
    Format {
        document: &'static str,
        field: String,
        reason: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
