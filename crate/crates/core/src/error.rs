use thiserror::Error;

/// Errors produced by every layer of the library.
///
/// The CLI maps each variant onto one of its exit codes through
/// [`Error::exit_code`].
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("coefficient {value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: u64 },

    #[error("relation `{relation}` is not mapped into the target ideal (image `{image}`)")]
    RelationViolation { relation: String, image: String },

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),

    #[error("endpoint {endpoint} mismatch: {detail}")]
    EndpointMismatch { endpoint: u8, detail: String },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("property violated [{check}]: {detail}")]
    PropertyViolation { check: String, detail: String },

    #[error("chain link {link} rejected: {detail}")]
    ChainLink { link: usize, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn property(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::PropertyViolation { check: check.into(), detail: detail.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// 1 property violated, 2 input error, 3 resource limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit { .. } => 3,
            Error::RelationViolation { .. }
            | Error::EndpointMismatch { .. }
            | Error::PropertyViolation { .. }
            | Error::ChainLink { .. }
            | Error::TruncationTooSmall(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(format!("json: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
