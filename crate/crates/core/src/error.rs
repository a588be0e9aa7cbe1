use thiserror::Error;

/// Errors raised by the exact algebra and geometry routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} exceeds declared arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("carriers differ")]
    CarrierMismatch,
    #[error("point {0} lies outside the carrier")]
    OutsideCarrier(String),
    #[error("quadratic fields differ: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("function is identically zero; no separating point exists")]
    ZeroFunction,
    #[error("pieces disagree on shared vertex {0}")]
    Discontinuous(String),
    #[error("size bound exceeded: {size} > {bound}")]
    TooLarge { size: u64, bound: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
