use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("node id {id} out of range for graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },
    #[error("edge ({source_node}, {target}) has non-positive or non-finite weight {weight}")]
    InvalidWeight {
        source_node: usize,
        target: usize,
        weight: f64,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("damping factor {0} must lie strictly inside (0, 1)")]
    InvalidAlpha(f64),
    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),
    #[error("transition uses the personalization patch; apply it through a Google operator")]
    MissingPatch,
    #[error("refusing to densify a {n}x{n} matrix (cap is {cap})")]
    DenseCapExceeded { n: usize, cap: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not orthogonal (defect {defect:e})")]
    NotOrthogonal { defect: f64 },
    #[error("QR iteration did not converge for eigenvalue indices {indices:?}")]
    EigenNoConvergence { indices: Vec<usize> },
    #[error("rate estimate needs {needed} ratios above the noise floor, have {available} ({below_floor} differences below floor)")]
    InsufficientTrace {
        needed: usize,
        available: usize,
        below_floor: usize,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
