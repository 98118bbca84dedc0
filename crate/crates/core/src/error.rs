use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("operands have incompatible shape: {0}")]
    Incompatible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("expected a tuple of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("label {label} out of range 1..={max}")]
    LabelOutOfRange { label: usize, max: usize },
    #[error("coset window of radius {radius} exhausted while reducing {word}")]
    WindowExhausted { word: String, radius: i64 },
    #[error("system of {rows} rows x {cols} columns exceeds the dimension cap {cap}")]
    DimensionOverflow { rows: usize, cols: usize, cap: usize },
    #[error("coefficient does not fit in 64 bits")]
    CoefficientOverflow,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
