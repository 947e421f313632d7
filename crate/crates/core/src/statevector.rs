//! Dense complex state vector over `n` qubits and its unitary kernels.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels;
use crate::tolerance::{GATE_UNITARITY_TOL, MATCH_TOL};

/// Smallest supported register. The GHZ trajectory divides by `N - 2`.
pub const MIN_QUBITS: usize = 2;

/// Largest supported register: 2^24 amplitudes, 256 MiB of `Complex64`.
pub const MAX_QUBITS: usize = 24;

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if (MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedQubits(n))
    }
}

/// Amplitudes `c_i` of `Σ c_i |i⟩` for `i < 2^n`.
///
/// Gates never renormalize; drift in the norm is left visible so tests can
/// catch a non-unitary kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state `|index⟩`.
    pub fn basis_state(qubits: usize, index: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { qubits, amplitudes })
    }

    /// Every amplitude equal to `1/√N`.
    pub fn uniform_superposition(qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            qubits,
            amplitudes: vec![amp; dim],
        })
    }

    /// `(|0…0⟩ + |1…1⟩)/√2`.
    pub fn ghz_plus(qubits: usize) -> Result<Self> {
        Self::ghz(qubits, 1.0)
    }

    /// `(|0…0⟩ - |1…1⟩)/√2`.
    pub fn ghz_minus(qubits: usize) -> Result<Self> {
        Self::ghz(qubits, -1.0)
    }

    fn ghz(qubits: usize, sign: f64) -> Result<Self> {
        let mut state = Self::basis_state(qubits, 0)?;
        let last = state.dim() - 1;
        state.amplitudes[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        state.amplitudes[last] = Complex64::new(sign * FRAC_1_SQRT_2, 0.0);
        Ok(state)
    }

    /// Wraps an explicit amplitude vector. The length must be `2^n` for a
    /// supported `n` and the norm must be one within [`MATCH_TOL`].
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() {
            return Err(Error::BadLength(dim));
        }
        let qubits = dim.trailing_zeros() as usize;
        check_qubits(qubits)?;
        let norm = kernels::norm_sqr(&amplitudes);
        if norm.is_nan() || (norm - 1.0).abs() > MATCH_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { qubits, amplitudes })
    }

    pub(crate) fn from_raw(qubits: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << qubits);
        Self { qubits, amplitudes }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    /// `N = 2^n`.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Result<Complex64> {
        self.amplitudes
            .get(index)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index,
                dim: self.dim(),
            })
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// `Σ |c_i|²`.
    pub fn norm_sqr(&self) -> f64 {
        kernels::norm_sqr(&self.amplitudes)
    }

    /// Applies `gate` to `qubit` pairwise over indices differing in that bit.
    pub fn apply_single_qubit(&mut self, qubit: usize, gate: &SingleQubitGate) -> Result<()> {
        if qubit >= self.qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                qubits: self.qubits,
            });
        }
        kernels::apply_gate(&mut self.amplitudes, qubit, gate.entries());
        Ok(())
    }

    /// `W = M ⊗ … ⊗ M`. Self-inverse, so this also applies `W⁻¹`.
    pub fn walsh_hadamard(&mut self) {
        kernels::walsh_hadamard(&mut self.amplitudes);
    }

    /// Multiplies each listed amplitude by `e^{iφ}`; unlisted ones are untouched.
    pub fn apply_phase_oracle(&mut self, oracle: &PhaseOracle) -> Result<()> {
        oracle.check_dim(self.dim())?;
        for (&index, &angle) in &oracle.entries {
            self.amplitudes[index] *= Complex64::from_polar(1.0, angle);
        }
        Ok(())
    }

    /// Multiplies every amplitude by `factor`. Only unit-modulus factors keep
    /// the state normalized; the Grover iterate uses `-1`.
    pub fn scale(&mut self, factor: Complex64) {
        kernels::scale(&mut self.amplitudes, factor);
    }

    /// `a ← -(a + shift)` on every amplitude.
    pub(crate) fn shift_negate(&mut self, shift: Complex64) {
        kernels::shift_negate(&mut self.amplitudes, shift);
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Total probability on `targets`. Repeated indices count once.
    pub fn success_probability<I>(&self, targets: I) -> Result<f64>
    where
        I: IntoIterator<Item = usize>,
    {
        let dim = self.dim();
        let mut seen = std::collections::BTreeSet::new();
        for index in targets {
            if index >= dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
            seen.insert(index);
        }
        if seen.is_empty() {
            return Err(Error::EmptyTargets);
        }
        Ok(seen.iter().map(|&i| self.amplitudes[i].norm_sqr()).sum())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(kernels::inner(&self.amplitudes, &other.amplitudes))
    }

    /// `|⟨reference|self⟩|²`, insensitive to global phase.
    pub fn fidelity(&self, reference: &StateVector) -> Result<f64> {
        Ok(reference.inner(self)?.norm_sqr())
    }

    /// Largest `|c_i - d_i|` over all indices.
    pub fn max_deviation(&self, other: &StateVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// A 2×2 unitary, validated when constructed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitGate {
    u: [Complex64; 4],
}

impl SingleQubitGate {
    /// Row-major entries `[[u00, u01], [u10, u11]]`.
    pub fn new(u00: Complex64, u01: Complex64, u10: Complex64, u11: Complex64) -> Result<Self> {
        let u = [u00, u01, u10, u11];
        let deviation = unitarity_deviation(&u);
        if deviation.is_nan() || deviation > GATE_UNITARITY_TOL {
            return Err(Error::NonUnitary(deviation));
        }
        Ok(Self { u })
    }

    /// The Hadamard gate `M = [[1, 1], [1, -1]]/√2`.
    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self { u: [h, h, h, -h] }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            u: [one, zero, zero, one],
        }
    }

    pub fn entries(&self) -> [Complex64; 4] {
        self.u
    }
}

/// Largest entry of `|U†U - I|`.
fn unitarity_deviation(u: &[Complex64; 4]) -> f64 {
    let [a, b, c, d] = *u;
    let p00 = a.conj() * a + c.conj() * c - 1.0;
    let p01 = a.conj() * b + c.conj() * d;
    let p10 = b.conj() * a + d.conj() * c;
    let p11 = b.conj() * b + d.conj() * d - 1.0;
    let norms = [p00, p01, p10, p11].map(|z| z.norm());
    if norms.iter().any(|x| x.is_nan()) {
        return f64::NAN;
    }
    norms.into_iter().fold(0.0, f64::max)
}

/// Sparse diagonal unitary `diag(e^{iφ_0}, …, e^{iφ_{N-1}})`; indices not
/// listed carry `φ = 0`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseOracle {
    entries: BTreeMap<usize, f64>,
}

impl PhaseOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an oracle from `(index, angle)` pairs; a repeated index keeps its
    /// last angle.
    pub fn from_entries<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let mut oracle = Self::new();
        for (index, angle) in entries {
            oracle.set(index, angle)?;
        }
        Ok(oracle)
    }

    /// The same `angle` on every index in `indices`.
    pub fn uniform<I>(indices: I, angle: f64) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        Self::from_entries(indices.into_iter().map(|i| (i, angle)))
    }

    /// `χ₀(α)`: phase `alpha` on `|0⟩` only.
    pub fn zero(alpha: f64) -> Result<Self> {
        Self::from_entries([(0, alpha)])
    }

    pub fn set(&mut self, index: usize, angle: f64) -> Result<()> {
        if !angle.is_finite() {
            return Err(Error::NonFinitePhase(index));
        }
        self.entries.insert(index, angle);
        Ok(())
    }

    pub fn angle(&self, index: usize) -> f64 {
        self.entries.get(&index).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|(&i, &a)| (i, a))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        match self.entries.keys().next_back() {
            Some(&index) if index >= dim => Err(Error::IndexOutOfRange { index, dim }),
            _ => Ok(()),
        }
    }
}
