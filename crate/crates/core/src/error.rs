use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vertex index {index} out of range for graph with {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("cost coefficients must be positive and finite (c_v = {c_v}, c_e = {c_e})")]
    InvalidCostParams { c_v: f64, c_e: f64 },

    #[error("empty vertex set")]
    EmptyGraph,

    #[error("perturbation radius must be non-negative, got {0}")]
    NegativeDelta(f64),

    #[error("infeasible transport instance: total supply {supply} != total demand {demand}")]
    Infeasible { supply: f64, demand: f64 },

    #[error("invalid transport instance: {0}")]
    InvalidInstance(String),

    #[error("instance too large for exhaustive search: {m} x {n} vertices (limit {limit})")]
    TooLarge { m: usize, n: usize, limit: usize },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("collinear overlapping edges {first:?} and {second:?}")]
    CollinearOverlap {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("malformed document: {0}")]
    Parse(String),

    #[error("missing prototype for letter {0}")]
    MissingPrototype(char),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Xml(#[from] roxmltree::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
