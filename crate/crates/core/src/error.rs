use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("edge ({u}, {v}) has non-positive weight")]
    ZeroWeight { u: usize, v: usize },
    #[error("color {0} has no members")]
    NoSuchColor(u32),
    #[error("color {color} does not occur in the component of vertex {vertex}")]
    NoSuchColorInComponent { vertex: usize, color: u32 },
    #[error("color {color} does not occur in tree {tree}")]
    NoSuchColorInTree { tree: usize, color: u32 },
    #[error("color {color} outside palette of size {sigma}")]
    ColorOutOfRange { color: u32, sigma: u32 },
    #[error("empty input")]
    EmptyInput,
    #[error("invalid range [{a}, {b}] for length {len}")]
    InvalidRange { a: usize, b: usize, len: usize },
    #[error("parent array does not describe a single rooted tree")]
    NotATree,
    #[error("key {0} not present")]
    KeyNotFound(usize),
    #[error("level count k must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("distortion must be at least 1, got {0}")]
    InvalidDistortion(f64),
    #[error("cover construction exceeded its retry budget with {remaining} vertices unassigned")]
    RetryBudgetExceeded { remaining: usize },
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("estimate {estimate} inconsistent with position {position} and color {color}")]
    ContractViolation {
        position: usize,
        color: u32,
        estimate: u64,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionError { expected: usize, got: usize },
    #[error("malformed tree: {0}")]
    InvalidHst(&'static str),
    #[error("operation not supported by this gadget variant")]
    VariantError,
}
