use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("letter {0} has no generator assigned")]
    UnassignedLetter(u32),
    #[error("degenerate pair ({0},{0})")]
    DegeneratePair(u32),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("element is not a loop element: constant term is {0}")]
    NotUnital(u8),
    #[error("exponent-3 contract failed: u * u^2 = {0}")]
    NonInvertible(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
