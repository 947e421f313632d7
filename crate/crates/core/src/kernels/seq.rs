//! Single-threaded kernels.

use num_complex::Complex64;

use super::{fold_partials, SUM_CHUNK};

pub fn butterfly<F>(amps: &mut [Complex64], half: usize, f: F)
where
    F: Fn(&mut Complex64, &mut Complex64),
{
    for block in amps.chunks_exact_mut(2 * half) {
        let (lo, hi) = block.split_at_mut(half);
        for (a, b) in lo.iter_mut().zip(hi) {
            f(a, b);
        }
    }
}

pub(crate) fn sum_hadamard_pair(a: &mut Complex64, b: &mut Complex64) {
    let (x, y) = (*a, *b);
    *a = x + y;
    *b = x - y;
}

pub fn walsh_hadamard(amps: &mut [Complex64]) {
    let len = amps.len();
    let mut half = 1;
    while half < len {
        butterfly(amps, half, sum_hadamard_pair);
        half <<= 1;
    }
    scale(amps, Complex64::new(1.0 / (len as f64).sqrt(), 0.0));
}

pub fn apply_gate(amps: &mut [Complex64], qubit: usize, u: [Complex64; 4]) {
    butterfly(amps, 1 << qubit, |a, b| {
        let (x, y) = (*a, *b);
        *a = u[0] * x + u[1] * y;
        *b = u[2] * x + u[3] * y;
    });
}

pub fn scale(amps: &mut [Complex64], factor: Complex64) {
    for a in amps {
        *a *= factor;
    }
}

pub fn shift_negate(amps: &mut [Complex64], shift: Complex64) {
    for a in amps {
        *a = -(*a + shift);
    }
}

pub(crate) fn chunk_sum(chunk: &[Complex64]) -> Complex64 {
    chunk
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, a| acc + a)
}

pub(crate) fn chunk_norm_sqr(chunk: &[Complex64]) -> f64 {
    chunk.iter().map(|a| a.norm_sqr()).sum()
}

pub(crate) fn chunk_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

pub fn sum(amps: &[Complex64]) -> Complex64 {
    fold_partials(amps.chunks(SUM_CHUNK).map(chunk_sum))
}

pub fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.chunks(SUM_CHUNK)
        .map(chunk_norm_sqr)
        .fold(0.0, |acc, p| acc + p)
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    fold_partials(
        a.chunks(SUM_CHUNK)
            .zip(b.chunks(SUM_CHUNK))
            .map(|(x, y)| chunk_inner(x, y)),
    )
}
