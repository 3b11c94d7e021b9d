use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("edge density is undefined for graphs on fewer than two vertices (n = {0})")]
    DensityUndefined(usize),

    #[error("the two vertices of a pair must differ (got {0} twice)")]
    SameVertex(usize),

    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),

    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("pattern graph has {0} vertices; at most {max} are supported", max = crate::detect::MAX_PATTERN_VERTICES)]
    PatternTooLarge(usize),

    #[error("graph family is empty")]
    EmptyFamily,

    #[error("n = {n} exceeds the hard cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed size header")]
    MalformedHeader,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("truncated bit vector: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} unexpected trailing bytes")]
    TrailingData(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
