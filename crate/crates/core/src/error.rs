use thiserror::Error;

use crate::statevector::{MAX_QUBITS, MIN_QUBITS};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported qubit count {0}; supported range is {MIN_QUBITS}..={MAX_QUBITS}")]
    UnsupportedQubits(usize),

    #[error("basis index {index} out of range for {dim} amplitudes")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("qubit {qubit} out of range for a {qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, qubits: usize },

    #[error("amplitude vector of length {0} is not a power of two")]
    BadLength(usize),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("gate is not unitary (max |U†U - I| entry = {0:e})")]
    NonUnitary(f64),

    #[error("phase angle for index {0} is not finite")]
    NonFinitePhase(usize),

    #[error("{0} angle is not finite")]
    NonFiniteAngle(&'static str),

    #[error("target set is empty")]
    EmptyTargets,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("marked set of size {marked} is too large for {dim} basis states (need fewer than {half})", half = .dim / 2)]
    MarkedSetTooLarge { marked: usize, dim: usize },

    #[error("dense reference path is limited to {max} qubits, got {0}", max = crate::reference::MAX_DENSE_QUBITS)]
    DenseTooLarge(usize),

    #[error("phase solver did not converge: residual {residual:e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("invalid plan: {0}")]
    InvalidPlan(String),
}
