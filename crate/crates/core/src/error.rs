use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid base code: {0}")]
    InvalidBase(String),
    #[error("invalid coupling scheme: {0}")]
    InvalidScheme(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coupling length {length} is below memory + 1 = {required}")]
    CouplingTooShort { length: usize, required: usize },
    #[error("lift value {value} at ({row}, {col}) outside [0, {degree})")]
    LiftOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        degree: u64,
    },
    #[error("edge ({0}, {1}) has no assigned value")]
    UncoveredEdge(usize, usize),
    #[error("cycle length must be even and at least 4, got {0}")]
    InvalidCycleLength(usize),
    #[error("lifting degree must be at least 1")]
    InvalidLiftingDegree,
    #[error("empty coefficient vector")]
    EmptyCoefficients,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bound not applicable: {0}")]
    NotApplicable(String),
    #[error("event `{0}` holds under every assignment")]
    UnavoidableEvent(String),
    #[error("alist parse error: {0}")]
    Alist(String),
    #[error("instance json error: {0}")]
    Json(String),
    #[error("unsupported schema version {found} (expected {expected})")]
    SchemaVersion { found: u32, expected: u32 },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
