use thiserror::Error;

/// Which side of the incidence relation a neighbour-relation witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Points,
    Lines,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Points => f.write_str("points"),
            Side::Lines => f.write_str("lines"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line} duplicates line {first}")]
    DuplicateLine { first: usize, line: usize },

    #[error("point {point} on line {line} is outside [0, {num_points})")]
    PointOutOfRange {
        line: usize,
        point: usize,
        num_points: usize,
    },

    #[error("line {0} is empty")]
    EmptyLine(usize),

    #[error("structure has no lines")]
    NoLines,

    #[error("{kind} id {id} out of range (limit {limit})")]
    IdOutOfRange {
        kind: &'static str,
        id: usize,
        limit: usize,
    },

    #[error("{kind} {id} paired with itself")]
    SameElement { kind: &'static str, id: usize },

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("order {0} is not a prime power and no plane was supplied")]
    UnsupportedOrder(usize),

    #[error("bad field: {0}")]
    BadField(String),

    #[error("not a projective plane: {0}")]
    NotProjective(String),

    #[error("not an affine plane: {0}")]
    NotAffine(String),

    #[error("orthogonal array shape error: {0}")]
    Shape(String),

    #[error("orthogonal array cannot be completed: {0}")]
    NotCompletable(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid construction choices: {0}")]
    InvalidChoices(String),

    #[error("operation requires a projective-kind Hjelmslev plane")]
    NotProjectiveKind,

    #[error("operation requires an affine-kind Hjelmslev plane")]
    NotAffineKind,

    #[error("plane carries no construction provenance")]
    MissingProvenance,

    #[error("neighbour relation on {side} is not transitive: {a}~{b}, {b}~{c} but not {a}~{c}")]
    NotTransitive {
        side: Side,
        a: usize,
        b: usize,
        c: usize,
    },

    #[error("not a Hjelmslev plane: {0}")]
    NotHjelmslev(String),

    #[error("inconsistent parameters: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}
