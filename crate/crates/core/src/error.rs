use thiserror::Error;

/// What went wrong on a single line of an edge-list document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `u v w` or `u`")]
    Malformed,
    #[error("loop on vertex {0:?}")]
    Loop(String),
    #[error("duplicate edge {0:?}-{1:?}")]
    DuplicateEdge(String, String),
    #[error("weight {0:?} is not a finite decimal")]
    BadWeight(String),
    #[error("document declares no vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 for whole-document errors.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("edge {0:?}-{1:?} has no weight")]
    MissingWeight(String, String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("filtration is not monotone: face {face} has value {face_value} above coface {coface} with value {coface_value}")]
    NonMonotone {
        face: String,
        face_value: String,
        coface: String,
        coface_value: String,
    },
    #[error("persistent Betti query needs u < v, got u = {0}, v = {1}")]
    InvalidQuery(f64, f64),
    #[error("diagrams have different homology degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid persistence diagram: {0}")]
    InvalidDiagram(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
