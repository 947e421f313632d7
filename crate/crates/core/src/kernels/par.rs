//! Rayon kernels. Work is split into fixed-size chunks so that each element
//! sees exactly the arithmetic of [`super::seq`].

use num_complex::Complex64;
use rayon::prelude::*;

use super::{fold_partials, seq, SUM_CHUNK};

/// Elements handed to one rayon task by the elementwise and butterfly kernels.
const TASK_CHUNK: usize = 1 << 12;

pub fn butterfly<F>(amps: &mut [Complex64], half: usize, f: F)
where
    F: Fn(&mut Complex64, &mut Complex64) + Sync,
{
    let block = 2 * half;
    if block <= TASK_CHUNK {
        amps.par_chunks_mut(TASK_CHUNK)
            .for_each(|chunk| seq::butterfly(chunk, half, &f));
    } else {
        // Few, wide blocks: split each block's halves into matching stripes.
        for blk in amps.chunks_exact_mut(block) {
            let (lo, hi) = blk.split_at_mut(half);
            lo.par_chunks_mut(TASK_CHUNK / 2)
                .zip(hi.par_chunks_mut(TASK_CHUNK / 2))
                .for_each(|(l, h)| {
                    for (a, b) in l.iter_mut().zip(h) {
                        f(a, b);
                    }
                });
        }
    }
}

pub fn walsh_hadamard(amps: &mut [Complex64]) {
    let len = amps.len();
    let mut half = 1;
    while half < len {
        butterfly(amps, half, seq::sum_hadamard_pair);
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
    amps.par_chunks_mut(TASK_CHUNK)
        .for_each(|chunk| seq::scale(chunk, factor));
}

pub fn shift_negate(amps: &mut [Complex64], shift: Complex64) {
    amps.par_chunks_mut(TASK_CHUNK)
        .for_each(|chunk| seq::shift_negate(chunk, shift));
}

pub fn sum(amps: &[Complex64]) -> Complex64 {
    let partials: Vec<Complex64> = amps.par_chunks(SUM_CHUNK).map(seq::chunk_sum).collect();
    fold_partials(partials)
}

pub fn norm_sqr(amps: &[Complex64]) -> f64 {
    let partials: Vec<f64> = amps
        .par_chunks(SUM_CHUNK)
        .map(seq::chunk_norm_sqr)
        .collect();
    partials.into_iter().fold(0.0, |acc, p| acc + p)
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let partials: Vec<Complex64> = a
        .par_chunks(SUM_CHUNK)
        .zip(b.par_chunks(SUM_CHUNK))
        .map(|(x, y)| seq::chunk_inner(x, y))
        .collect();
    fold_partials(partials)
}
