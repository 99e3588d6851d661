use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("generator matrix has non-finite entries")]
    NonFinite,

    #[error("generator matrix is singular (|det| = {det:e}, threshold {threshold:e})")]
    SingularGenerator { det: f64, threshold: f64 },

    #[error("dual enumeration would visit {candidates} candidates (cap {cap})")]
    TruncationOverflow { candidates: u128, cap: u128 },

    #[error("counting bound undefined: generator entry ({axis},{axis}) is zero")]
    DegenerateAxis { axis: usize },

    #[error("shift radius {given} too small to cover the sample region (need {needed})")]
    InsufficientShiftRadius { given: usize, needed: usize },

    #[error("band {band} needs 2K+1 = {} grid points per axis, grid has {grid}", 2 * band + 1)]
    BandExceedsGrid { band: usize, grid: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("grid function expects {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },

    #[error("exponent {value} outside admissible range {range}")]
    BadExponent { value: f64, range: &'static str },

    #[error("exponent pair p={p}, q={q} gives negative growth exponent 1/p-1/q")]
    BadExponentPair { p: f64, q: f64 },

    #[error("weight function has no value at dual index {index:?}")]
    MissingWeight { index: Vec<i64> },

    #[error("weight at dual index {index:?} is not positive and finite: {value}")]
    InvalidWeight { index: Vec<i64>, value: f64 },

    #[error("weight function is empty")]
    EmptyWeight,

    #[error("symbol has no value at dual index {index:?}")]
    SymbolUndefined { index: Vec<i64> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error in `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }
}
