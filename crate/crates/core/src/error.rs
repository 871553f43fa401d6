use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,

    #[error("point lies on hyperplane {0}")]
    OnHyperplane(usize),

    #[error("hyperplane {0} cannot be charted")]
    DegenerateChart(usize),

    #[error("arrangement generation failed after {attempts} attempts (n={n}, d={d}, d'={dprime})")]
    GenerationFailed {
        n: usize,
        d: usize,
        dprime: usize,
        attempts: usize,
    },

    #[error("worst-case construction failed: {0}")]
    ConstructionFailed(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("constraint region is empty")]
    EmptyConstraintRegion,

    #[error("hyperplane {0} is still ambiguous with respect to the known labels")]
    StillAmbiguous(usize),

    #[error("hyperplane {0} is given contradictory labels")]
    ContradictoryQueries(usize),

    #[error("region is not a cell of the arrangement: {0}")]
    UnknownRegion(String),

    #[error("last point is the zero vector")]
    ZeroLastPoint,

    #[error("point maps to the hyperplane at infinity")]
    BasisPoint,

    #[error("separator has a nonpositive last coordinate")]
    NonpositiveLastCoordinate,

    #[error("position violation: {0}")]
    PositionViolation(String),

    #[error("dichotomy is not separable")]
    NotSeparable,

    #[error("objects {0} and {1} coincide")]
    DuplicateObjects(usize, usize),

    #[error("reference point lies on the bisector of objects {0} and {1}")]
    OnBisector(usize, usize),

    #[error("cell {0} is inconsistent with its witness ranking")]
    InconsistentCell(String),

    #[error("primal extreme points disagree with the dual teaching set: {0}")]
    DualMismatch(String),

    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
