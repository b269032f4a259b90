use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("graph on {0} vertices exceeds the supported maximum of {max}", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("invalid parameters for family `{family}`: {reason}")]
    InvalidParams { family: String, reason: String },

    #[error("invalid (H, phi) specification: {0}")]
    InvalidHSpec(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph has {n} vertices, above the cap of {cap}")]
    OverCap { n: usize, cap: usize },

    #[error("work limit exceeded: {0}")]
    WorkLimit(String),

    #[error("series shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("square root needs constant term 1, found {0}")]
    ConstantTermNotOne(String),

    #[error("exponent {0:?} lies outside the truncation caps")]
    ExponentOutOfRange(Vec<usize>),

    #[error("coefficient times factorials is not a non-negative integer: {0}")]
    NonIntegral(String),

    #[error("leading polynomial vanishes when solving for index {0}")]
    LeadingVanishes(usize),

    #[error("not enough terms: need {need}, have {have}")]
    InsufficientTerms { need: usize, have: usize },

    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),

    #[error("floating-point iteration overflowed at index {0}")]
    Overflow(usize),

    #[error("no growth exponent candidate gives a convergent constant")]
    Divergent,

    #[error("independent computations disagree: {0}")]
    OracleMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True when the input was well formed but the computation was declined
    /// (caps, connectivity, numeric breakdown), as opposed to bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::Disconnected
                | Error::EmptyGraph
                | Error::OverCap { .. }
                | Error::WorkLimit(_)
                | Error::LeadingVanishes(_)
                | Error::NonIntegral(_)
                | Error::Overflow(_)
                | Error::OracleMismatch(_)
                | Error::Divergent
        )
    }
}
