//! Slice-level kernels behind [`StateVector`](crate::StateVector).
//!
//! [`seq`] is always compiled. With the `parallel` feature, [`par`] provides
//! rayon versions and the dispatchers below switch to them for slices of at
//! least [`PAR_THRESHOLD`] amplitudes. Both flavours perform the same
//! floating-point operations in the same order per element, and reductions
//! go through fixed [`SUM_CHUNK`]-sized partial sums, so the two produce
//! bitwise identical results.

use num_complex::Complex64;

pub mod seq;

#[cfg(feature = "parallel")]
pub mod par;

/// Slices shorter than this always take the sequential path.
pub const PAR_THRESHOLD: usize = 1 << 14;

/// Partial-sum granularity for reductions.
pub const SUM_CHUNK: usize = 1 << 12;

macro_rules! dispatch {
    ($len:expr, $name:ident ( $($arg:expr),* )) => {{
        #[cfg(feature = "parallel")]
        {
            if $len >= PAR_THRESHOLD {
                return par::$name($($arg),*);
            }
        }
        seq::$name($($arg),*)
    }};
}

/// Applies `f` to every pair `(amps[i], amps[i + half])` where bit `half` of
/// `i` is clear. `half` must be a power of two dividing `amps.len() / 2`.
pub fn butterfly<F>(amps: &mut [Complex64], half: usize, f: F)
where
    F: Fn(&mut Complex64, &mut Complex64) + Sync,
{
    dispatch!(amps.len(), butterfly(amps, half, f))
}

/// Normalized Walsh–Hadamard transform, in place.
pub fn walsh_hadamard(amps: &mut [Complex64]) {
    dispatch!(amps.len(), walsh_hadamard(amps))
}

/// Applies the 2×2 matrix `[[u00, u01], [u10, u11]]` to bit `qubit`.
pub fn apply_gate(amps: &mut [Complex64], qubit: usize, u: [Complex64; 4]) {
    dispatch!(amps.len(), apply_gate(amps, qubit, u))
}

/// `a ← factor · a` for every amplitude.
pub fn scale(amps: &mut [Complex64], factor: Complex64) {
    dispatch!(amps.len(), scale(amps, factor))
}

/// `a ← -(a + shift)` for every amplitude.
pub fn shift_negate(amps: &mut [Complex64], shift: Complex64) {
    dispatch!(amps.len(), shift_negate(amps, shift))
}

pub fn sum(amps: &[Complex64]) -> Complex64 {
    dispatch!(amps.len(), sum(amps))
}

pub fn norm_sqr(amps: &[Complex64]) -> f64 {
    dispatch!(amps.len(), norm_sqr(amps))
}

/// `Σ conj(a_i) · b_i`. Slices must have equal length.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    dispatch!(a.len(), inner(a, b))
}

pub(crate) fn fold_partials<I>(partials: I) -> Complex64
where
    I: IntoIterator<Item = Complex64>,
{
    partials
        .into_iter()
        .fold(Complex64::new(0.0, 0.0), |acc, p| acc + p)
}
