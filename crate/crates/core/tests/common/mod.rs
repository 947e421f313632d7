#![allow(dead_code)]

use ghz_grover::{Complex64, SingleQubitGate, StateVector};
use rand::Rng;

/// A Haar-ish random normalized state (Gaussian components, normalized).
pub fn random_state<R: Rng>(rng: &mut R, qubits: usize) -> StateVector {
    let dim = 1usize << qubits;
    let raw: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

/// `e^{iδ}[[a, -b̄], [b, ā]]` with `|a|² + |b|² = 1`.
pub fn random_gate<R: Rng>(rng: &mut R) -> SingleQubitGate {
    let t: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let a = Complex64::from_polar(t.cos(), rng.gen_range(-3.0..3.0));
    let b = Complex64::from_polar(t.sin(), rng.gen_range(-3.0..3.0));
    let g = Complex64::from_polar(1.0, rng.gen_range(-3.0..3.0));
    SingleQubitGate::new(g * a, -g * b.conj(), g * b, g * a.conj()).unwrap()
}

/// Random marked set of `m` distinct indices below `dim`.
pub fn random_marked<R: Rng>(rng: &mut R, dim: usize, m: usize) -> Vec<usize> {
    let mut set = std::collections::BTreeSet::new();
    while set.len() < m {
        set.insert(rng.gen_range(0..dim));
    }
    set.into_iter().collect()
}
