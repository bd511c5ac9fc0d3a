use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A constellation or division parameter is outside its valid range.
    #[error("invalid configuration: {field} {reason}")]
    Config { field: &'static str, reason: String },

    /// The phased division needs a non-zero phasing factor (K = n1/F).
    #[error("phased division requested with F = 0; K is undefined")]
    UndefinedK,

    /// The exhaustive Theorem-1 oracle only runs on small plane counts.
    #[error("brute-force search limited to n1 <= {limit}, got {n1}")]
    OracleScope { n1: usize, limit: usize },

    #[error("failed to parse constellation file: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Config {
            field,
            reason: reason.into(),
        }
    }
}
