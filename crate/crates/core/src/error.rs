use thiserror::Error;

/// Errors raised by constructors, parsers and computations in this crate.
///
/// Verification *verdicts* (a homotopy that breaks continuity, a section that
/// misses an endpoint) are not errors; they are returned as values by the
/// verifiers. This type covers malformed input and violated preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported grid dimension {0} (c_k adjacency supports 1..=4)")]
    UnsupportedDimension(usize),

    #[error("invalid adjacency: {0}")]
    InvalidAdjacency(String),

    #[error("adjacency is irreflexive: a point is never adjacent to itself")]
    SamePoint,

    #[error("digital image must contain at least one point")]
    EmptyImage,

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("point {0} is not in the image")]
    PointNotInImage(String),

    #[error("malformed map: {0}")]
    MalformedMap(String),

    #[error("invalid wedge: {0}")]
    InvalidWedge(String),

    #[error("index {index} out of range (size {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("map is not digitally continuous: {0}")]
    NotContinuous(String),

    #[error("map does not send simplices to simplices: {0}")]
    NotSimplicial(String),

    #[error("not a closed digital surface: {0}")]
    NotClosedSurface(String),

    #[error("genus numerator {0} is not divisible by 8")]
    NonIntegralGenus(i64),

    #[error("invalid vertex order: {0}")]
    InvalidOrder(String),

    #[error("invalid cochain: {0}")]
    InvalidCochain(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
