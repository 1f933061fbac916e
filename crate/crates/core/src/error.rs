use thiserror::Error;

/// Errors raised by the metric toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or out-of-domain input value.
    #[error("invalid input: {0}")]
    Input(String),

    /// A configuration parameter (radius, exponent, prime, ...) is out of range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A point of the wrong kind was handed to a metric.
    #[error("carrier mismatch: metric `{metric}` cannot measure {found}")]
    CarrierMismatch { metric: String, found: String },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The series does not converge in the requested metric.
    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {vertex} out of range for graph with {count} vertices")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("invalid edge {0}-{1}: {2}")]
    InvalidEdge(usize, usize, String),

    #[error("edge {0}-{1} has no weight")]
    MissingWeight(usize, usize),

    #[error("edge {0}-{1} has nonpositive weight {2}")]
    NonpositiveWeight(usize, usize, f64),

    #[error("{value} lies outside the domain [0, 1]")]
    Domain { value: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
