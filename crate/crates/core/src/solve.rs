//! Phase solver for a single arbitrary-phase iterate.
//!
//! Every planner reduces to the same question: given a state `ψ` and a marked
//! set `M`, find `(α, β)` such that `Q(α, β, M)ψ` sits at rotation angle
//! `target` in the plane spanned by the uniform-over-marked and
//! uniform-over-unmarked vectors, up to a global phase. By linearity the
//! group means after the iterate depend on `ψ` only through its two group
//! sums, so the residual is exact for the simulated state and costs O(1) per
//! evaluation once the sums are taken.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::exact::{PhasePair, SeedSource};
use crate::statevector::StateVector;
use crate::tolerance::SOLVER_TOL;

/// Wraps an angle into `(-π, π]`.
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct GroupSums {
    marked: Complex64,
    unmarked: Complex64,
    marked_count: f64,
    dim: f64,
}

impl GroupSums {
    pub(crate) fn of(state: &StateVector, marked: &BTreeSet<usize>) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let mut marked_sum = zero;
        let mut unmarked_sum = zero;
        let mut next = marked.iter().peekable();
        for (i, &a) in state.amplitudes().iter().enumerate() {
            if next.peek() == Some(&&i) {
                next.next();
                marked_sum += a;
            } else {
                unmarked_sum += a;
            }
        }
        Self {
            marked: marked_sum,
            unmarked: unmarked_sum,
            marked_count: marked.len() as f64,
            dim: state.dim() as f64,
        }
    }

    /// Residual `X_u sin t - X_m cos t` of `Q(pair)ψ` against angle `target`,
    /// with `X_m`, `X_u` the marked and unmarked components, and its
    /// derivatives with respect to the two phases.
    fn residual_with_jacobian(
        &self,
        pair: PhasePair,
        target: f64,
    ) -> (Complex64, Complex64, Complex64) {
        let (m, n) = (self.marked_count, self.dim);
        let u = n - m;
        let z = Complex64::from_polar(1.0, pair.zero);
        let w = Complex64::from_polar(1.0, pair.marked);
        let i = Complex64::i();
        let mean = (w * self.marked + self.unmarked) / n;
        let marked_mean = -(w * self.marked / m + (z - 1.0) * mean);
        let unmarked_mean = -(self.unmarked / u + (z - 1.0) * mean);

        let d_mean_db = i * w * self.marked / n;
        let d_marked_da = -(i * z * mean);
        let d_unmarked_da = d_marked_da;
        let d_marked_db = -(i * w * self.marked / m + (z - 1.0) * d_mean_db);
        let d_unmarked_db = -((z - 1.0) * d_mean_db);

        let (s, c) = target.sin_cos();
        let (sm, su) = (m.sqrt(), u.sqrt());
        let r = su * unmarked_mean * s - sm * marked_mean * c;
        let ra = su * d_unmarked_da * s - sm * d_marked_da * c;
        let rb = su * d_unmarked_db * s - sm * d_marked_db * c;
        (r, ra, rb)
    }

    pub(crate) fn residual(&self, pair: PhasePair, target: f64) -> f64 {
        self.residual_with_jacobian(pair, target).0.norm()
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SolverConfig {
    pub initial_step: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            initial_step: 1e-3,
            tolerance: SOLVER_TOL,
            max_iterations: 100,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Root {
    pub pair: PhasePair,
    pub residual: f64,
    pub iterations: usize,
}

/// Damped Newton iteration on the complex residual, treated as two real
/// equations in two unknowns. Steps are clipped to a trust radius that
/// starts at `initial_step`, doubles after each accepted step and shrinks
/// after each rejected one.
pub(crate) fn newton(
    sums: &GroupSums,
    target: f64,
    seed: PhasePair,
    cfg: &SolverConfig,
) -> Result<Root, Root> {
    let mut x = seed;
    let (mut r, mut ra, mut rb) = sums.residual_with_jacobian(x, target);
    let mut radius = cfg.initial_step;
    for iteration in 0..cfg.max_iterations {
        if r.norm() < cfg.tolerance {
            return Ok(Root {
                pair: x,
                residual: r.norm(),
                iterations: iteration,
            });
        }
        // [ra.re rb.re; ra.im rb.im] · d = -[r.re; r.im]
        let det = ra.re * rb.im - rb.re * ra.im;
        let (mut da, mut db) = if det.abs() > 1e-14 {
            (
                -(rb.im * r.re - rb.re * r.im) / det,
                -(-ra.im * r.re + ra.re * r.im) / det,
            )
        } else {
            // Singular Jacobian: fall back to steepest descent on |r|².
            (
                -(ra.re * r.re + ra.im * r.im),
                -(rb.re * r.re + rb.im * r.im),
            )
        };
        let len = da.hypot(db);
        if !len.is_finite() || len == 0.0 {
            break;
        }
        if len > radius {
            da *= radius / len;
            db *= radius / len;
        }
        let step = da.hypot(db);
        let trial = PhasePair {
            zero: x.zero + da,
            marked: x.marked + db,
        };
        let (tr, tra, trb) = sums.residual_with_jacobian(trial, target);
        if tr.norm() < r.norm() {
            x = trial;
            (r, ra, rb) = (tr, tra, trb);
            radius = (2.0 * step).max(radius).min(PI);
        } else {
            radius = step / 4.0;
            if radius < 1e-16 {
                break;
            }
        }
    }
    let root = Root {
        pair: x,
        residual: r.norm(),
        iterations: cfg.max_iterations,
    };
    if root.residual < cfg.tolerance {
        Ok(root)
    } else {
        Err(root)
    }
}

fn cost(pair: PhasePair) -> f64 {
    wrap_angle(pair.zero).abs() + wrap_angle(pair.marked).abs()
}

fn normalize(root: Root) -> Root {
    Root {
        pair: PhasePair {
            zero: wrap_angle(root.pair.zero),
            marked: wrap_angle(root.pair.marked),
        },
        ..root
    }
}

pub(crate) struct Solution {
    pub root: Root,
    pub source: SeedSource,
    /// Signed closed-form candidate the root was polished from.
    pub chosen_closed_form: Option<PhasePair>,
}

/// Finds phases steering `sums` to `target`.
///
/// With a closed-form prediction, its four sign combinations are ranked by
/// residual (ties by smaller `|α| + |β|`) and polished in that order. If none
/// converges, or there is no prediction, a fixed grid of seeds is polished
/// and the converged root with the smallest `|α| + |β|` wins.
pub(crate) fn solve_phases(
    sums: &GroupSums,
    target: f64,
    closed_form: Option<PhasePair>,
    cfg: &SolverConfig,
) -> Result<Solution, Root> {
    let mut best_failure: Option<Root> = None;
    let mut note_failure = |root: Root| {
        if best_failure.is_none_or(|b| root.residual < b.residual) {
            best_failure = Some(root);
        }
    };

    if let Some(cf) = closed_form {
        let mut candidates: Vec<(PhasePair, f64)> =
            [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
                .iter()
                .map(|&(sa, sb)| {
                    let pair = PhasePair {
                        zero: sa * cf.zero,
                        marked: sb * cf.marked,
                    };
                    // Anything already below tolerance ranks as an exact hit.
                    let residual = sums.residual(pair, target);
                    (
                        pair,
                        if residual < cfg.tolerance {
                            0.0
                        } else {
                            residual
                        },
                    )
                })
                .collect();
        candidates.sort_by(|a, b| {
            a.1.total_cmp(&b.1)
                .then_with(|| cost(a.0).total_cmp(&cost(b.0)))
        });
        for (seed, _) in candidates {
            match newton(sums, target, seed, cfg) {
                Ok(root) => {
                    return Ok(Solution {
                        root: normalize(root),
                        source: SeedSource::ClosedForm,
                        chosen_closed_form: Some(seed),
                    })
                }
                Err(root) => note_failure(root),
            }
        }
    }

    let mut seeds: Vec<PhasePair> = Vec::with_capacity(64);
    for a in -3..=4 {
        for b in -3..=4 {
            seeds.push(PhasePair {
                zero: a as f64 * FRAC_PI_4,
                marked: b as f64 * FRAC_PI_4,
            });
        }
    }
    let mut best: Option<Root> = None;
    for seed in seeds {
        match newton(sums, target, seed, cfg) {
            Ok(root) => {
                let root = normalize(root);
                let better = match best {
                    None => true,
                    Some(b) => match cost(root.pair).total_cmp(&cost(b.pair)) {
                        Ordering::Less => cost(b.pair) - cost(root.pair) > 1e-9,
                        _ => false,
                    },
                };
                if better {
                    best = Some(root);
                }
            }
            Err(root) => note_failure(root),
        }
    }
    match best {
        Some(root) => Ok(Solution {
            root,
            source: SeedSource::Search,
            chosen_closed_form: None,
        }),
        None => Err(best_failure.expect("at least one seed was tried")),
    }
}
