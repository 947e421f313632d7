//! The generalized Grover iterate and the closed-form rotation model of its
//! trajectory.
//!
//! `Q(α, β, M) = -W χ₀(α) W⁻¹ χ_M(β)`, applied right to left: phase `β` on
//! the marked set `M`, the Walsh–Hadamard transform, phase `α` on `|0⟩`, the
//! transform again, and a global `-1`. With `α = β = π` this is the standard
//! amplitude-amplification step and, from the uniform state, a rotation by
//! `2θ` towards the marked subspace with `sin²θ = |M|/N`. The `-1` is kept so
//! that simulated amplitudes carry the same signs as the closed forms.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels;
use crate::statevector::{check_qubits, PhaseOracle, StateVector};

/// Angles and marked set of one generalized iterate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroverParams {
    /// Phase on `|0⟩` inside the `W … W⁻¹` conjugation.
    pub alpha: f64,
    /// Phase on every marked basis state.
    pub beta: f64,
    marked: BTreeSet<usize>,
}

impl GroverParams {
    pub fn new<I>(alpha: f64, beta: f64, marked: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if !alpha.is_finite() {
            return Err(Error::NonFiniteAngle("alpha"));
        }
        if !beta.is_finite() {
            return Err(Error::NonFiniteAngle("beta"));
        }
        let marked: BTreeSet<usize> = marked.into_iter().collect();
        if marked.is_empty() {
            return Err(Error::EmptyTargets);
        }
        Ok(Self {
            alpha,
            beta,
            marked,
        })
    }

    /// `α = β = π` on `marked`.
    pub fn standard<I>(marked: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        Self::new(PI, PI, marked)
    }

    /// The standard iterate marking `{0, N - 1}`.
    pub fn standard_ghz(dim: usize) -> Self {
        Self::standard([0, dim - 1]).expect("two-element marked set")
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        match self.marked.last() {
            Some(&index) if index >= dim => Err(Error::IndexOutOfRange { index, dim }),
            _ => Ok(()),
        }
    }

    fn marked_oracle(&self) -> PhaseOracle {
        PhaseOracle::uniform(self.marked.iter().copied(), self.beta)
            .expect("angles validated at construction")
    }
}

/// Applies `Q(α, β, M)` in O(N).
///
/// Uses `W χ₀(α) W = I + (e^{iα} - 1)|s⟩⟨s|` with `|s⟩` uniform, so the two
/// transforms collapse into adding `(e^{iα} - 1)·mean(ψ)` to every amplitude.
/// [`grover_iterate_literal`] applies the same operator gate by gate.
pub fn grover_iterate(state: &mut StateVector, params: &GroverParams) -> Result<()> {
    let dim = state.dim();
    params.check_dim(dim)?;
    let phase = Complex64::from_polar(1.0, params.beta);
    let amps = state.amplitudes_mut();
    for &i in &params.marked {
        amps[i] *= phase;
    }
    let mean = kernels::sum(amps) / dim as f64;
    let shift = (Complex64::from_polar(1.0, params.alpha) - 1.0) * mean;
    state.shift_negate(shift);
    Ok(())
}

/// Applies `Q(α, β, M)` as the literal product of its factors, O(N log N).
pub fn grover_iterate_literal(state: &mut StateVector, params: &GroverParams) -> Result<()> {
    params.check_dim(state.dim())?;
    state.apply_phase_oracle(&params.marked_oracle())?;
    state.walsh_hadamard();
    state.apply_phase_oracle(&PhaseOracle::zero(params.alpha)?)?;
    state.walsh_hadamard();
    state.scale(Complex64::new(-1.0, 0.0));
    Ok(())
}

/// One standard iterate marking `{0, N - 1}`.
pub fn standard_q(state: &mut StateVector) {
    let params = GroverParams::standard_ghz(state.dim());
    grover_iterate(state, &params).expect("GHZ pair is always in range");
}

/// Closed-form trajectory of repeated standard iterates from the uniform
/// state: after `j` steps every marked amplitude is `k_j/√N` and every
/// unmarked amplitude is `l_j/√N`, with
///
/// ```text
/// k_j = √(N/m)     · sin((2j+1)θ)
/// l_j = √(N/(N-m)) · cos((2j+1)θ)        sin²θ = m/N
/// ```
///
/// For the GHZ pair (`m = 2`) these are exactly the textbook forms; other
/// `m` use the same rotation with the marked mass spread over `m` states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryModel {
    qubits: usize,
    marked_count: usize,
    theta: f64,
}

impl TrajectoryModel {
    pub fn new(qubits: usize, marked_count: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        if marked_count == 0 {
            return Err(Error::EmptyTargets);
        }
        if marked_count >= dim {
            return Err(Error::MarkedSetTooLarge {
                marked: marked_count,
                dim,
            });
        }
        let theta = (marked_count as f64 / dim as f64).sqrt().asin();
        Ok(Self {
            qubits,
            marked_count,
            theta,
        })
    }

    /// The GHZ model, `m = 2`.
    pub fn ghz(qubits: usize) -> Result<Self> {
        Self::new(qubits, 2)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn marked_count(&self) -> usize {
        self.marked_count
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Rotation angle `(2j+1)θ` of the state after `j` standard iterates.
    pub fn angle_after(&self, j: usize) -> f64 {
        (2 * j + 1) as f64 * self.theta
    }

    /// `(k_j, l_j)` in the scaling where amplitudes are `k_j/√N`, `l_j/√N`.
    pub fn amplitudes(&self, j: usize) -> (f64, f64) {
        let n = self.dim() as f64;
        let m = self.marked_count as f64;
        let angle = self.angle_after(j);
        (
            (n / m).sqrt() * angle.sin(),
            (n / (n - m)).sqrt() * angle.cos(),
        )
    }

    /// Per-state amplitudes `(k_j/√N, l_j/√N)`.
    pub fn group_amplitudes(&self, j: usize) -> (f64, f64) {
        let (k, l) = self.amplitudes(j);
        let root = (self.dim() as f64).sqrt();
        (k / root, l / root)
    }

    /// Real `j` at which the rotation reaches `π/2`: `π/(4θ) - 1/2`.
    pub fn optimal_iteration_count(&self) -> f64 {
        PI / (4.0 * self.theta) - 0.5
    }
}

pub fn trajectory_amplitudes(model: &TrajectoryModel, j: usize) -> (f64, f64) {
    model.amplitudes(j)
}

pub fn optimal_iteration_count(model: &TrajectoryModel) -> f64 {
    model.optimal_iteration_count()
}
