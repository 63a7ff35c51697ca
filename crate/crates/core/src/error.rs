use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("residue characteristic must be an odd prime, got {0}")]
    BadPrime(u64),

    #[error("precision {precision} is outside the supported range {min}..={max} for p = {p}")]
    BadPrecision { p: u64, precision: u32, min: u32, max: u32 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("unsupported range: {0}")]
    UnsupportedRange(String),

    #[error("inconsistency (implementation bug): {0}")]
    Inconsistency(String),

    #[error("indeterminate evaluation at {0}")]
    Indeterminate(String),

    #[error("not exactly divisible: {0}")]
    NotDivisible(String),

    #[error("pole at X = 0: {0}")]
    PoleAtZero(String),

    #[error("malformed input: {0}")]
    Form(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
