use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a supported prime")]
    InvalidField(u64),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown catalog graph {0:?}")]
    UnknownCatalog(String),
    #[error("graph is not bipartite (odd cycle through vertex {0})")]
    NotBipartite(usize),
    #[error("method {method} is not applicable: {reason}")]
    Inapplicable { method: String, reason: String },
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degree bookkeeping violated: {0}")]
    DegreeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
