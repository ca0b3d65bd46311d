use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("label < 3 on edge {0}-{1}")]
    LabelTooSmall(String, String),
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("empty vertex set")]
    EmptySet,
    #[error("diagram is a forest (no cycle)")]
    Forest,
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("element not in family: {0}")]
    NotInFamily(String),
    #[error("label {0} not supported: field not supported")]
    UnsupportedLabel(String),
    #[error("elements belong to different engines")]
    CrossEngine,
    #[error("truncated: {0}")]
    Truncated(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
