use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no ordering bit available at ({x},{y})")]
    MissingBit { x: usize, y: usize },
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("rank {rank} out of range for a column of height {height}")]
    RankOutOfRange { rank: String, height: String },
    #[error("alpha must lie strictly between 0 and 1")]
    AlphaOutOfRange,
    #[error("prefix is maximal in its column")]
    MaximalPrefix,
    #[error("prefix is minimal in its column")]
    MinimalPrefix,
    #[error("orbit window leaves the column at level {level}")]
    WindowEscapesColumn { level: usize },
    #[error("kink precondition failed: {0}")]
    KinkPreconditionFailed(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("no admissible vertex found")]
    NotFound,
    #[error("level {level} is below k = {k}")]
    LevelBelowK { level: usize, k: usize },
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("parse error at {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("inconsistent lengths: {0}")]
    InconsistentLengths(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors that signal a resource bound rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::SizeCap(_) | Error::CapExceeded(_) | Error::BoundExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
