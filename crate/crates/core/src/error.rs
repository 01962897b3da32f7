use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("invalid cycle traversal: {0}")]
    InvalidCycle(String),
    #[error("arrow {arrow:?} has degree {degree}, outside the window (2-n, 0] = ({lo}, 0]")]
    GradingOutsideWindow { arrow: String, degree: i64, lo: i64 },
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("non-homogeneous path expression (degrees {0} and {1})")]
    NonHomogeneous(i64, i64),

    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("relation {relation} fails at vertex {vertex:?} in degree {degree}: residual {residual}")]
    RelationFailure {
        relation: String,
        vertex: String,
        degree: i64,
        residual: String,
    },
    #[error("group generator {0:?} acts non-invertibly")]
    NonInvertibleGenerator(String),
    #[error("presentation mismatch between modules")]
    PresentationMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid support label: {0}")]
    InvalidLabel(String),

    #[error("inadmissible central charge {0} (needs im > 0, or im = 0 and re < 0)")]
    InadmissibleCharge(String),
    #[error("monotonicity violated: class {lower:?} precedes class {upper:?} but has smaller phase")]
    Monotonicity { lower: String, upper: String },
    #[error("invalid stability data: {0}")]
    InvalidStability(String),
    #[error("zero central charge (empty module)")]
    ZeroCharge,
}
