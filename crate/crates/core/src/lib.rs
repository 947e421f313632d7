//! Dense state-vector simulation of Grover amplitude amplification, aimed at
//! exact preparation of n-qubit GHZ states and exact search over arbitrary
//! marked sets.
//!
//! Basis index `i` is read as an n-bit integer; qubit `q` is bit `q` of `i`,
//! bit 0 least significant. The GHZ targets `|0…0⟩` and `|1…1⟩` are the
//! indices `0` and `N - 1` under any ordering, so nothing downstream depends
//! on this choice beyond [`StateVector::apply_single_qubit`].
//!
//! The crate is organised bottom-up:
//!
//! - [`statevector`]: amplitudes, single-qubit gates, the Walsh–Hadamard
//!   transform, diagonal phase oracles and the probability/fidelity queries.
//! - [`grover`]: the generalized iterate `-W χ₀(α) W⁻¹ χ_M(β)` and the
//!   closed-form rotation model of its trajectory.
//! - [`exact`]: planners that land on the target with probability one even
//!   when the optimal iteration count is not an integer.
//! - [`reference`]: a slow dense-matrix simulator used to cross-check the
//!   fast kernels.
//!
//! With the default `parallel` feature the O(N) kernels run on rayon for
//! large states. Every reduction is summed over fixed-size chunks in a fixed
//! order, so results are bitwise identical with or without the feature.

pub mod error;
pub mod exact;
pub mod grover;
pub mod kernels;
pub mod reference;
mod solve;
pub mod statevector;
pub mod tolerance;

pub use error::{Error, Result};
pub use exact::{
    closed_forms, execute, plan_direct, plan_exact_search, plan_ghz, plan_reinit, plan_retard,
    to_minus_variant, AngleAudit, ClosedForms, FormulaAngles, Method, MethodChoice, PhasePair,
    PrepPlan, PrepReport, SolverStats, Variant,
};
pub use grover::{
    grover_iterate, grover_iterate_literal, optimal_iteration_count, standard_q,
    trajectory_amplitudes, GroverParams, TrajectoryModel,
};
pub use num_complex::Complex64;
pub use statevector::{PhaseOracle, SingleQubitGate, StateVector, MAX_QUBITS, MIN_QUBITS};
