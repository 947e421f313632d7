//! Dense-matrix reference simulator.
//!
//! Builds every operator as an explicit `N × N` matrix straight from its
//! definition (Kronecker products, diagonal matrices, matrix products) and
//! applies it with a plain matrix–vector product. It shares no code with the
//! fast kernels and exists only to cross-check them, so it is capped at
//! [`MAX_DENSE_QUBITS`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{PrepPlan, Variant};
use crate::grover::GroverParams;
use crate::statevector::{PhaseOracle, SingleQubitGate, StateVector};
use crate::tolerance::MATCH_TOL;

pub const MAX_DENSE_QUBITS: usize = 8;

fn check_dense(qubits: usize) -> Result<()> {
    if qubits == 0 || qubits > MAX_DENSE_QUBITS {
        Err(Error::DenseTooLarge(qubits))
    } else {
        Ok(())
    }
}

/// An explicit unitary matrix, checked on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    matrix: DMatrix<Complex64>,
}

impl DenseUnitary {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        let u = Self { matrix };
        let deviation = u.unitarity_deviation();
        if deviation.is_nan() || deviation > MATCH_TOL {
            return Err(Error::NonUnitary(deviation));
        }
        Ok(u)
    }

    pub fn identity(qubits: usize) -> Result<Self> {
        check_dense(qubits)?;
        let dim = 1 << qubits;
        Ok(Self {
            matrix: DMatrix::identity(dim, dim),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Largest entry of `|U†U - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let dim = self.dim();
        let product = self.matrix.adjoint() * &self.matrix;
        let norms: Vec<f64> = (product - DMatrix::<Complex64>::identity(dim, dim))
            .iter()
            .map(|z| z.norm())
            .collect();
        if norms.iter().any(|x| x.is_nan()) {
            return f64::NAN;
        }
        norms.into_iter().fold(0.0, f64::max)
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &DenseUnitary) -> DenseUnitary {
        DenseUnitary {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn inverse(&self) -> DenseUnitary {
        DenseUnitary {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn pow(&self, exponent: usize) -> DenseUnitary {
        let dim = self.dim();
        let mut out = DMatrix::<Complex64>::identity(dim, dim);
        for _ in 0..exponent {
            out = &self.matrix * out;
        }
        DenseUnitary { matrix: out }
    }

    /// Largest entry of `|self - other|`.
    pub fn max_deviation(&self, other: &DenseUnitary) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

fn gate_matrix(gate: &SingleQubitGate) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &gate.entries())
}

/// `M ⊗ M ⊗ … ⊗ M`, `n` factors.
pub fn dense_walsh(qubits: usize) -> Result<DenseUnitary> {
    check_dense(qubits)?;
    let m = gate_matrix(&SingleQubitGate::hadamard());
    let mut w = DMatrix::<Complex64>::identity(1, 1);
    for _ in 0..qubits {
        w = w.kronecker(&m);
    }
    DenseUnitary::new(w)
}

/// `I ⊗ … ⊗ gate ⊗ … ⊗ I` with the gate on bit `qubit` (bit 0 is the
/// rightmost Kronecker factor).
pub fn dense_single_qubit(
    gate: &SingleQubitGate,
    qubit: usize,
    qubits: usize,
) -> Result<DenseUnitary> {
    check_dense(qubits)?;
    if qubit >= qubits {
        return Err(Error::QubitOutOfRange { qubit, qubits });
    }
    let above =
        DMatrix::<Complex64>::identity(1 << (qubits - qubit - 1), 1 << (qubits - qubit - 1));
    let below = DMatrix::<Complex64>::identity(1 << qubit, 1 << qubit);
    DenseUnitary::new(above.kronecker(&gate_matrix(gate)).kronecker(&below))
}

/// `diag(e^{iφ_0}, …, e^{iφ_{N-1}})`.
pub fn dense_phase(oracle: &PhaseOracle, qubits: usize) -> Result<DenseUnitary> {
    check_dense(qubits)?;
    let dim = 1usize << qubits;
    oracle.check_dim(dim)?;
    let diagonal = DVector::from_fn(dim, |i, _| Complex64::from_polar(1.0, oracle.angle(i)));
    DenseUnitary::new(DMatrix::from_diagonal(&diagonal))
}

/// `-W · diag(e^{iα}, 1, …, 1) · W⁻¹ · diag_M(e^{iβ})`.
pub fn dense_grover(params: &GroverParams, qubits: usize) -> Result<DenseUnitary> {
    let w = dense_walsh(qubits)?;
    let zero = dense_phase(&PhaseOracle::zero(params.alpha)?, qubits)?;
    let marked = dense_phase(
        &PhaseOracle::uniform(params.marked().iter().copied(), params.beta)?,
        qubits,
    )?;
    let product = w.compose(&zero).compose(&w.inverse()).compose(&marked);
    Ok(DenseUnitary {
        matrix: -product.matrix,
    })
}

/// Matrix–vector product.
pub fn dense_apply(u: &DenseUnitary, state: &StateVector) -> Result<StateVector> {
    if u.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: state.dim(),
        });
    }
    let v = DVector::from_column_slice(state.amplitudes());
    let out = &u.matrix * v;
    Ok(StateVector::from_raw(
        state.qubits(),
        out.as_slice().to_vec(),
    ))
}

/// Replays a plan (including any recorded corrective phase and the variant)
/// with dense matrices, starting from `W|0⟩`.
pub fn replay_plan(plan: &PrepPlan) -> Result<StateVector> {
    let n = plan.qubits;
    check_dense(n)?;
    let marked = || plan.marked.iter().copied();
    let mut state = dense_apply(&dense_walsh(n)?, &StateVector::basis_state(n, 0)?)?;
    if let Some(pre) = plan.pre_phase {
        let q1 = dense_grover(&GroverParams::new(pre.zero, pre.marked, marked())?, n)?;
        state = dense_apply(&q1, &state)?;
    }
    let q = dense_grover(&GroverParams::standard(marked())?, n)?;
    state = dense_apply(&q.pow(plan.j_whole), &state)?;
    if let Some(post) = plan.post_phase {
        let q2 = dense_grover(&GroverParams::new(post.zero, post.marked, marked())?, n)?;
        state = dense_apply(&q2, &state)?;
    }
    let mut tail = PhaseOracle::new();
    let last = *plan.marked.last().ok_or(Error::EmptyTargets)?;
    if let Some(c) = plan.corrective_phase {
        tail.set(last, c)?;
    }
    state = dense_apply(&dense_phase(&tail, n)?, &state)?;
    if plan.variant == Variant::Minus {
        let flip = PhaseOracle::from_entries([(plan.dim() - 1, std::f64::consts::PI)])?;
        state = dense_apply(&dense_phase(&flip, n)?, &state)?;
    }
    Ok(state)
}
