use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },

    #[error("the zero element has no multiplicative inverse")]
    ZeroInverse,

    #[error("Kleene star diverges: a cycle of weight {weight} exceeds one")]
    DivergentStar { weight: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("candidate cap of {cap} exceeded ({requested} strictly row-monomial matrices)")]
    CandidateCap { cap: usize, requested: String },

    #[error("empty matrix input")]
    EmptyInput,

    #[error("ragged row at line {line}: expected {expected} entries, found {found}")]
    RaggedRow { line: usize, expected: usize, found: usize },

    #[error("unparsable token {token:?} at line {line}, column {column}")]
    BadToken { token: String, line: usize, column: usize },
}

impl Error {
    pub(crate) fn shape(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::ShapeMismatch {
            op,
            left_rows: left.0,
            left_cols: left.1,
            right_rows: right.0,
            right_cols: right.1,
        }
    }
}
