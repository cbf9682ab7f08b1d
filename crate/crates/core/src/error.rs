use thiserror::Error;

/// Every failure the library can report. Variant names follow the
/// operation contracts so callers (and the C API) can match on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("linear change of coordinates is singular")]
    SingularChange,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point does not lie on the hypersurface")]
    PointNotOnX,
    #[error("hypersurface is singular at the point (gradient vanishes)")]
    SingularAtP,
    #[error("hypersurface form is reducible over Q: {0}")]
    Reducible(String),
    #[error("tangent section has a point of multiplicity 3 at P (quadric part vanishes)")]
    WorseThanNode,
    #[error("point is not on the image of the curve")]
    PointNotOnCurve,
    #[error("point lies on the given line")]
    PointOnLine,
    #[error("given curve is not a line contained in the hypersurface")]
    NotALineOnX,
    #[error("no quadratic point on the tangent quadric found after {attempts} attempts")]
    NoQuadraticPointFound { attempts: u32 },
    #[error("tangent quadric has no points over the completion")]
    EmptyLocalQuadric,
    #[error("branch is not defined over the completion")]
    BranchNotInKv,
    #[error("no enumerated points within the largest epsilon")]
    NoApproximants,
    #[error(
        "no rational line on the hypersurface is known (supply one or raise the search bound)"
    )]
    NoRationalLineKnown,
    #[error("case not decided: {0}")]
    Undecided(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("arithmetic overflow in fixed-width enumeration: {0}")]
    Overflow(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Stable short name, used in JSON reports and by the C API.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::SingularChange => "SingularChange",
            Error::ZeroInput => "ZeroInput",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::PointNotOnX => "PointNotOnX",
            Error::SingularAtP => "SingularAtP",
            Error::Reducible(_) => "Reducible",
            Error::WorseThanNode => "WorseThanNode",
            Error::PointNotOnCurve => "PointNotOnCurve",
            Error::PointOnLine => "PointOnLine",
            Error::NotALineOnX => "NotALineOnX",
            Error::NoQuadraticPointFound { .. } => "NoQuadraticPointFound",
            Error::EmptyLocalQuadric => "EmptyLocalQuadric",
            Error::BranchNotInKv => "BranchNotInKv",
            Error::NoApproximants => "NoApproximants",
            Error::NoRationalLineKnown => "NoRationalLineKnown",
            Error::Undecided(_) => "Undecided",
            Error::Unsupported(_) => "Unsupported",
            Error::Invalid(_) => "Invalid",
            Error::Overflow(_) => "Overflow",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
