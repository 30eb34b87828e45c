use thiserror::Error;

/// Every failure the toolkit can report. Each variant has a stable
/// machine-readable code, see [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {value} at ({row},{col}) of {table} is out of range 0..{bound}")]
    OutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        bound: usize,
    },
    #[error("table {table} has the wrong shape: {detail}")]
    Shape { table: &'static str, detail: String },
    #[error("vertex sets differ ({left} vs {right} vertices)")]
    VertexSetMismatch { left: usize, right: usize },
    #[error("vertex set must be non-empty")]
    EmptyVertexSet,
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("target of the first morphism is not the source of the second")]
    CompositionMismatch,
    #[error("not a morphism: the defining condition fails at ({lambda},{x})")]
    InvalidMorphism { lambda: usize, x: usize },
    #[error("arrow map does not preserve source/target at arrow {arrow}")]
    InvalidQuiverMorphism { arrow: usize },
    #[error("vertices {lambda} and {other} have different out-degrees")]
    NotEssentialImage { lambda: usize, other: usize },
    #[error("invariance condition fails at (lambda={lambda}, x={x}, y={y})")]
    InvarianceViolation { lambda: usize, x: usize, y: usize },
    #[error("row {row} is not a permutation")]
    NotLatinRows { row: usize },
    #[error("dynamical set is not of PH type")]
    NotPHType,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("identities for the band construction fail at (b={b}, c={c}, d={d})")]
    NazoViolation { b: usize, c: usize, d: usize },
    #[error("strictness check failed: {0}")]
    Strictness(String),
    #[error("paths have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("not a path in the quiver: {0}")]
    InvalidPath(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("parse error in {path} at {position}: {message}")]
    Parse {
        path: String,
        position: String,
        message: String,
    },
}

impl Error {
    /// Stable identifier for scripting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "OutOfRange",
            Error::Shape { .. } => "Shape",
            Error::VertexSetMismatch { .. } => "VertexSetMismatch",
            Error::EmptyVertexSet => "EmptyVertexSet",
            Error::InvalidLabels(_) => "InvalidLabels",
            Error::CompositionMismatch => "CompositionMismatch",
            Error::InvalidMorphism { .. } => "InvalidMorphism",
            Error::InvalidQuiverMorphism { .. } => "InvalidQuiverMorphism",
            Error::NotEssentialImage { .. } => "NotEssentialImage",
            Error::InvarianceViolation { .. } => "InvarianceViolation",
            Error::NotLatinRows { .. } => "NotLatinRows",
            Error::NotPHType => "NotPHType",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::SizeLimit(_) => "SizeLimit",
            Error::NazoViolation { .. } => "NazoViolation",
            Error::Strictness(_) => "Strictness",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::InvalidPath(_) => "InvalidPath",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::CheckFailed(_) => "CheckFailed",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
