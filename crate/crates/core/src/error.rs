use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("missing `n=<int>` header line")]
    MissingHeader,
    #[error("bad variable count {0} (supported range is 1..=12)")]
    BadVariableCount(usize),
    #[error("length mismatch: expected {expected} bits, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("bad character {ch:?} on line {line}")]
    BadCharacter { ch: char, line: usize },
    #[error("size mismatch: {left} vs {right} variables")]
    SizeMismatch { left: usize, right: usize },
    #[error("function is not bent")]
    NotBent,
    #[error("unsupported n = {0}")]
    UnsupportedN(usize),
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("too many qubits: {0} (maximum is 22)")]
    TooManyQubits(usize),
    #[error("qubit index out of range or repeated: {0}")]
    IndexOutOfRange(String),
    #[error("bad Dicke weight {k} for {n} qubits")]
    BadWeight { n: usize, k: usize },
    #[error("simulation inconsistent with the classical oracle: {0}")]
    SimulationInconsistency(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
