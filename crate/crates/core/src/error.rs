use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitIndex { index: usize, n: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("heuristic failure: {0}")]
    Heuristic(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("disconnected coupling graph: components {0:?}")]
    Disconnected(Vec<Vec<usize>>),

    #[error("dense oracle limited to {cap} qubits, requested {n}")]
    TooLarge { n: usize, cap: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
