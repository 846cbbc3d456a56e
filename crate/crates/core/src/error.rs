use thiserror::Error;

/// Errors raised by hypergraph construction, queries and the search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("uniformity k={0} must be at least 2")]
    InvalidUniformity(usize),

    #[error("expected {expected} class sizes, got {got}")]
    ClassCount { expected: usize, got: usize },

    #[error("edge {edge:?} has arity {got}, expected {expected}")]
    EdgeArity {
        edge: Vec<usize>,
        expected: usize,
        got: usize,
    },

    #[error("edge {edge:?}: index {index} out of range for class {class} of size {size}")]
    IndexOutOfRange {
        edge: Vec<usize>,
        class: usize,
        index: usize,
        size: usize,
    },

    #[error("vertex ({class}, {index}) out of range")]
    VertexOutOfRange { class: usize, index: usize },

    #[error("vertex set is not legal: class {0} occurs more than once")]
    NotLegal(usize),

    #[error("vertex set is not balanced: {0}")]
    NotBalanced(String),

    #[error("l={l} out of range 1..={max}")]
    LevelOutOfRange { l: usize, max: usize },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a matching of the host hypergraph: {0}")]
    NotAMatching(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("class sizes {0:?} are not all equal")]
    UnequalClasses(Vec<usize>),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("absorption failed: {0}")]
    Absorption(String),

    #[error("exhaustive sweep over k={k}, n={n} needs 2^{slots} hypergraphs; refusing")]
    Infeasible { k: usize, n: usize, slots: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
