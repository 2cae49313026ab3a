use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The per-phase evaluation limit has been reached.
    #[error("evaluation budget exhausted ({limit} evaluations)")]
    BudgetExhausted { limit: u64 },

    #[error("cannot select from an empty archive")]
    EmptyArchive,

    #[error("malformed edge list at line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("instance too large for exhaustive enumeration: {size} > {max}")]
    InstanceTooLarge { size: usize, max: usize },

    #[error("too many edges for live-edge enumeration: {edges} > {max}")]
    TooManyEdges { edges: usize, max: usize },

    #[error("invalid schedule bounds: low={low}, high={high}, initial={initial}")]
    InvalidBounds { low: f64, high: f64, initial: f64 },

    #[error("malformed schedule file at line {line}: {reason}")]
    MalformedSchedule { line: usize, reason: String },

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("traces cannot be summarized together: {0}")]
    MismatchedTraces(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
