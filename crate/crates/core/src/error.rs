use thiserror::Error;

/// Errors raised by image, complex and group operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("digital image must contain at least one point")]
    EmptyImage,

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("basepoint index {index} out of range for {len} points")]
    BadBasepoint { index: usize, len: usize },

    #[error("point {0} is not in the image")]
    PointNotInImage(String),

    #[error("steps {index} and {next} of the path are neither equal nor adjacent")]
    NotContinuous { index: usize, next: usize },

    #[error("paths belong to different images")]
    DifferentImages,

    #[error("cannot join paths: {0} and {1} are neither equal nor adjacent")]
    EndpointMismatch(String, String),

    #[error("subdivision factor must be at least 1")]
    BadSubdivisionFactor,

    #[error("pause list has {found} entries, path has {expected} steps")]
    PauseLengthMismatch { expected: usize, found: usize },

    #[error("endpoints {0} and {1} are adjacent or equal; no contractible path joins them")]
    AdjacentEndpoints(String, String),

    #[error("not a based loop: {0}")]
    NotALoop(String),

    #[error("the complex is disconnected")]
    Disconnected,

    #[error("image must be two-dimensional, found dimension {0}")]
    NotTwoDimensional(usize),

    #[error("inapplicable edge move: {0}")]
    InapplicableMove(String),

    #[error("generator g{generator} out of range for {count} generators")]
    GeneratorOutOfRange { generator: usize, count: usize },

    #[error("relator {0} is not freely reduced")]
    UnreducedRelator(usize),

    #[error("relator {0} is empty")]
    EmptyRelator(usize),

    #[error("at least one generator is required")]
    NoGenerators,

    #[error("empty graph")]
    EmptyGraph,

    #[error("invalid graph edge ({0}, {1})")]
    BadEdge(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("state bound of {0} exceeded")]
    StateBoundExceeded(usize),

    #[error("loops have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
