use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("capacity exceeded: {what} is {value}, limit is {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    Index { index: usize, n_qubits: usize },

    #[error("gate acts on qubit {0} more than once")]
    DuplicateQubit(usize),

    #[error("rotation angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    #[error("postselected branch has probability {probability:e}, treated as impossible")]
    ImpossibleBranch { probability: f64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("vector is not unit-norm (norm {norm})")]
    Normalization { norm: f64 },

    #[error("cannot normalize a vector of norm {norm:e}")]
    ZeroVector { norm: f64 },

    #[error("feature {feature} has zero variance")]
    DegenerateFeature { feature: usize },

    #[error("unsupported gate `{0}` for this operation")]
    UnsupportedGate(String),

    #[error("qubit assignment is missing logical qubit {0}")]
    Assignment(usize),

    #[error("estimation failed: {accepted} of {shots} shots accepted")]
    EstimationFailed { accepted: u64, shots: u64 },

    #[error("qasm parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("embedded dataset checksum mismatch")]
    Checksum,
}

pub type Result<T> = std::result::Result<T, Error>;
