use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("elements live over different recursion tables ({0} vs {1})")]
    TableMismatch(String, String),

    #[error("root count mismatch: {0} vs {1}")]
    RootMismatch(usize, usize),

    #[error("invalid recursion table: {0}")]
    InvalidTable(String),

    #[error("forest is not elementary")]
    NotElementary,

    #[error("not a simplex of the complex: {0:?}")]
    NotSimplex(Vec<usize>),

    #[error("not a simplicial map: {0}")]
    NotSimplicialMap(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("table {0} has no registered pi-image")]
    NoPiImage(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

impl Error {
    pub(crate) fn parse(col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            col,
            msg: msg.into(),
        }
    }

    /// Re-anchors a single-line parse error at `line`, offsetting the column.
    pub(crate) fn at_line(self, line: usize, col_offset: usize) -> Self {
        match self {
            Error::Parse { col, msg, .. } => Error::Parse {
                line,
                col: col + col_offset,
                msg,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
