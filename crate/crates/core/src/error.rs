use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: unknown {kind} `{name}`")]
    UnknownName {
        line: usize,
        kind: &'static str,
        name: String,
    },

    #[error("line {line}: duplicate {kind} `{name}`")]
    DuplicateName {
        line: usize,
        kind: &'static str,
        name: String,
    },

    #[error("line {line}: relation terms are not parallel ({detail})")]
    NonParallel { line: usize, detail: String },

    #[error("line {line}: relation term `{path}` has length {length} < 2; relations must lie in the square of the arrow ideal")]
    Admissibility {
        line: usize,
        path: String,
        length: usize,
    },

    #[error("line {line}: duplicate path `{path}` in relation")]
    DuplicateTerm { line: usize, path: String },

    #[error("degrees must be given for all arrows or none (arrow `{arrow}` has none)")]
    PartialDegrees { arrow: String },

    #[error("cannot compose paths: {0}")]
    EndpointMismatch(String),

    #[error("relation {index} is not homogeneous for the given arrow degrees")]
    Inhomogeneous { index: usize },

    #[error("relations are not homogeneous in path length and no nilpotency bound was given")]
    NeedsNilpotencyBound,

    #[error("nilpotency bound {bound} could not be verified: {detail}")]
    UnverifiableAdmissibility { bound: usize, detail: String },

    #[error("quotient does not terminate below degree {degree}; the algebra may be infinite dimensional")]
    NonTerminating { degree: usize },

    #[error("algebra is not graded: {0}")]
    NotGraded(String),

    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),

    #[error("chain module in degree {degree} has {required} basis tuples, above the cap of {cap}")]
    CapExceeded {
        degree: usize,
        required: usize,
        cap: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
