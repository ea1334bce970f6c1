use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// No exact spectrum is available, so no verdict can be given.
    /// This is not the same as a negative verdict.
    #[error("certification unavailable: {0}")]
    CertificationUnavailable(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::InvalidMatrix(_) => "invalid-matrix",
            Error::NumericFailure(_) => "numeric-failure",
            Error::Unsupported(_) => "unsupported",
            Error::CertificationUnavailable(_) => "certification-unavailable",
            Error::InternalInconsistency(_) => "internal-inconsistency",
            Error::TooLarge(_) => "too-large",
            Error::Parse { .. } => "parse-error",
            Error::Io(_) => "io-error",
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
