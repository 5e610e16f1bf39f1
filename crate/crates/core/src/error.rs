use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("basis index {index} out of range for {num_qubits} qubits")]
    BasisIndexOutOfRange { index: usize, num_qubits: usize },
    #[error("qubit {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("gate needs at least one qubit")]
    EmptyQubitSet,
    #[error("ControlledZPow level must be nonzero")]
    ZeroLevel,
    #[error("diagonal oracle has {got} phases, register of {register} qubits needs {expected}")]
    PhaseCountMismatch {
        got: usize,
        expected: usize,
        register: usize,
    },
    #[error("state has {got} qubits, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("amplitude vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("state norm {0} is not 1")]
    NotNormalized(f64),
    #[error("angle {value} at entry {index} is outside [0, 2π)")]
    AngleOutOfRange { index: usize, value: f64 },
    #[error("invalid grid level {0}")]
    InvalidLevel(u32),
    #[error("dyadic numerator {numerator} out of range for level {level}")]
    NumeratorOutOfRange { numerator: u64, level: u32 },
    #[error("phase entries mix grid levels {0} and {1}")]
    MixedLevels(u32, u32),
    #[error("support is inconsistent with the phase table: {0}")]
    InconsistentSupport(String),
    #[error("gate sequence does not compose to a diagonal operator")]
    NotDiagonal,
    #[error("target vector: {0}")]
    InvalidTarget(String),
    #[error("precision config: {0}")]
    InvalidConfig(String),
    #[error("epsilon {0} outside (0, 1)")]
    EpsilonOutOfRange(f64),
    #[error("phase-estimation register leaked norm {0:e} after uncomputation")]
    RegisterLeakage(f64),
    #[error("post-selected outcome has zero probability")]
    ZeroProbability,
}
