use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({nrows}x{ncols})")]
    NotSquare { nrows: usize, ncols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("index {index} out of range (valid 1..={max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("unknown root system type: {0}")]
    UnknownType(String),
    #[error("orbit exceeded cap of {cap} points")]
    OrbitCapExceeded { cap: usize },
    #[error("ambient dimension {0} unsupported (hull volume handles n <= 4)")]
    UnsupportedDimension(usize),
    #[error("empty point set")]
    EmptyPointSet,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
