use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("malformed scalar literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in scalar literal {0:?}")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Failures while building or transforming a superalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("bracket [{lhs},{rhs}] given more than once")]
    DuplicateBracket { lhs: String, rhs: String },
    #[error("bracket [{lhs},{rhs}] must be listed with lhs before rhs in basis order")]
    OrderViolation { lhs: String, rhs: String },
    #[error("bracket [{lhs},{rhs}] has a component outside the {expected} block")]
    ParityViolation { lhs: String, rhs: String, expected: &'static str },
    #[error("bracket [{lhs},{rhs}] violates super-anticommutativity")]
    AntisymmetryViolation { lhs: String, rhs: String },
    #[error("super Jacobi identity fails on ({x},{y},{z}); residual {residual}")]
    JacobiViolation { x: String, y: String, z: String, residual: String },
    #[error("vector is not parity-homogeneous")]
    NonHomogeneous,
    #[error("vector has length {got}, algebra dimension is {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("change of basis matrix is singular")]
    SingularChange,
    #[error("change of basis matrix mixes even and odd blocks")]
    ParityMixing,
    #[error("subspace is not graded")]
    NonGraded,
    #[error("subquotient precondition failed: {0}")]
    Subquotient(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarParseError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("missing value for parameter {0:?}")]
    MissingParameter(String),
    #[error("bilinear form is degenerate ({0})")]
    DegenerateForm(&'static str),
    #[error("form is not compatible with the algebra: {0}")]
    FormMismatch(String),
    #[error("derivation family is empty")]
    EmptyFamily,
    #[error("map is not a derivation: {0}")]
    NotDerivation(String),
    #[error("nilpotent members of the family are not a linear subspace")]
    NilpotentLocusNotLinear,
    #[error("action of the even part is not nilpotent")]
    NotNilpotentAction,
    #[error("algebra is not of filiform type")]
    NotFiliform,
    #[error("{construction}: {condition} fails{}", detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default())]
    Precondition { construction: &'static str, condition: String, detail: Option<String> },
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("inadmissible parameters for {entry}: {reason}")]
    Inadmissible { entry: String, reason: String },
    #[error("unknown extension kind {0:?}")]
    UnknownKind(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn precondition_with(
        construction: &'static str,
        condition: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Error::Precondition { construction, condition: condition.into(), detail: Some(detail.into()) }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
