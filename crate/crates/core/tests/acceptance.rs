//! Exit criteria for the library. Each test prints one PASS/FAIL line; run
//! with `cargo test -p ghz-grover --test acceptance -- --nocapture` to see them.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;
use std::time::{Duration, Instant};

use ghz_grover::reference::{
    dense_apply, dense_grover, dense_phase, dense_single_qubit, dense_walsh,
};
use ghz_grover::{
    execute, grover_iterate, plan_exact_search, plan_ghz, plan_reinit, plan_retard, standard_q,
    to_minus_variant, GroverParams, Method, MethodChoice, PhaseOracle, StateVector,
    TrajectoryModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, name: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {name}: {detail}");
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn min_time<F: FnMut()>(reps: usize, mut f: F) -> Duration {
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn non_integer_counts() -> Vec<usize> {
    (2..=12)
        .filter(|&n| {
            let j = TrajectoryModel::ghz(n).unwrap().optimal_iteration_count();
            (j - j.round()).abs() >= 1e-9
        })
        .collect()
}

#[test]
fn criterion_1_three_qubit_direct() {
    let target = StateVector::ghz_plus(3).unwrap();
    let mut fidelity = 0.0;
    let elapsed = min_time(5, || {
        let mut s = StateVector::uniform_superposition(3).unwrap();
        standard_q(&mut s);
        fidelity = s.fidelity(&target).unwrap();
    });
    let pass = (fidelity - 1.0).abs() < 1e-12 && elapsed < Duration::from_millis(1);
    verdict(
        1,
        "n=3 one standard iterate gives GHZ",
        pass,
        format!("fidelity={fidelity:.15}, time={elapsed:?}"),
    );
}

#[test]
fn criterion_2_two_qubit_bell() {
    let mut s = StateVector::uniform_superposition(2).unwrap();
    grover_iterate(
        &mut s,
        &GroverParams::new(FRAC_PI_2, FRAC_PI_2, [0, 3]).unwrap(),
    )
    .unwrap();
    let fidelity = s.fidelity(&StateVector::ghz_plus(2).unwrap()).unwrap();
    verdict(
        2,
        "n=2 half-pi phased iterate gives Bell state",
        (fidelity - 1.0).abs() < 1e-12,
        format!("fidelity={fidelity:.15}"),
    );
}

#[test]
fn criterion_3_trajectory_model() {
    let mut worst_amp: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    for n in 2..=12 {
        let model = TrajectoryModel::ghz(n).unwrap();
        let dim = model.dim();
        let root = (dim as f64).sqrt();
        let j_max = 2 * model.optimal_iteration_count().ceil() as usize;
        let mut s = StateVector::uniform_superposition(n).unwrap();
        for j in 0..=j_max {
            if j > 0 {
                standard_q(&mut s);
            }
            let (k, l) = model.amplitudes(j);
            let amps = s.amplitudes();
            for &i in &[0, dim - 1] {
                worst_amp = worst_amp.max((amps[i].norm() - k.abs() / root).abs());
            }
            for a in &amps[1..dim - 1] {
                worst_amp = worst_amp.max((a.norm() - l.abs() / root).abs());
            }
            let identity = 2.0 * k * k / dim as f64 + (dim as f64 - 2.0) * l * l / dim as f64;
            worst_norm = worst_norm.max((identity - 1.0).abs());
        }
    }
    verdict(
        3,
        "closed-form trajectory matches simulation",
        worst_amp < 1e-10 && worst_norm < 1e-12,
        format!("max amplitude gap={worst_amp:.3e}, max normalization gap={worst_norm:.3e}"),
    );
}

#[test]
fn criterion_4_exact_methods() {
    let start = Instant::now();
    let mut worst_success: f64 = 1.0;
    let mut worst_phase: f64 = 0.0;
    let mut failures = Vec::new();
    for n in non_integer_counts() {
        for (name, plan) in [("reinit", plan_reinit(n)), ("retard", plan_retard(n))] {
            match plan.and_then(|p| execute(&p)) {
                Ok(report) => {
                    worst_success = worst_success.min(report.success_probability);
                    worst_phase = worst_phase.max(report.relative_phase.abs());
                    if report.success_probability < 1.0 - 1e-9
                        || report.relative_phase.abs() >= 1e-6
                    {
                        failures.push(format!("{name} n={n}"));
                    }
                }
                Err(e) => failures.push(format!("{name} n={n}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        4,
        "reinit and retard are exact for n=2..12",
        failures.is_empty() && elapsed < Duration::from_secs(10),
        format!(
            "min success={worst_success:.15}, max |relative phase|={worst_phase:.3e}, time={elapsed:?}, failures={failures:?}"
        ),
    );
}

#[test]
fn criterion_5_minus_variant() {
    let mut worst: f64 = 1.0;
    for n in non_integer_counts() {
        let report = execute(&plan_reinit(n).unwrap()).unwrap();
        let mut state = report.final_state;
        to_minus_variant(&mut state);
        let f = state.fidelity(&StateVector::ghz_minus(n).unwrap()).unwrap();
        worst = worst.min(f);
    }
    verdict(
        5,
        "phase flip on |N-1> gives the minus GHZ state",
        (1.0 - worst).abs() < 1e-9,
        format!("min fidelity={worst:.15}"),
    );
}

#[test]
fn criterion_6_generalized_exact_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut worst_unmarked: f64 = 0.0;
    let mut worst_spread: f64 = 0.0;
    let mut failures = Vec::new();
    for n in 3..=6 {
        for _ in 0..20 {
            let m = rng.gen_range(1..=3);
            let marked = common::random_marked(&mut rng, 1 << n, m);
            match plan_exact_search(n, marked.iter().copied()).and_then(|p| execute(&p)) {
                Ok(r) => {
                    let probs: Vec<f64> = marked
                        .iter()
                        .map(|&i| r.final_state.success_probability([i]).unwrap())
                        .collect();
                    let hi = probs.iter().cloned().fold(f64::MIN, f64::max);
                    let lo = probs.iter().cloned().fold(f64::MAX, f64::min);
                    worst_unmarked = worst_unmarked.max(r.offtarget_probability);
                    worst_spread = worst_spread.max(hi - lo);
                    if r.offtarget_probability >= 1e-9 || hi - lo >= 1e-9 {
                        failures.push(format!("n={n} marked={marked:?}"));
                    }
                }
                Err(e) => failures.push(format!("n={n} marked={marked:?}: {e}")),
            }
        }
    }
    verdict(
        6,
        "exact search over random marked sets",
        failures.is_empty(),
        format!(
            "max unmarked prob={worst_unmarked:.3e}, max marked spread={worst_spread:.3e}, failures={failures:?}"
        ),
    );
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst: f64 = 0.0;
    for trial in 0..200 {
        let n = rng.gen_range(2..=6);
        let dim = 1usize << n;
        let state = common::random_state(&mut rng, n);
        let mut fast = state.clone();
        let dense = match trial % 4 {
            0 => {
                fast.walsh_hadamard();
                dense_walsh(n).unwrap()
            }
            1 => {
                let gate = common::random_gate(&mut rng);
                let q = rng.gen_range(0..n);
                fast.apply_single_qubit(q, &gate).unwrap();
                dense_single_qubit(&gate, q, n).unwrap()
            }
            2 => {
                let k = rng.gen_range(1..=dim);
                let entries: Vec<(usize, f64)> = (0..k)
                    .map(|_| (rng.gen_range(0..dim), rng.gen_range(-4.0..4.0)))
                    .collect();
                let oracle = PhaseOracle::from_entries(entries).unwrap();
                fast.apply_phase_oracle(&oracle).unwrap();
                dense_phase(&oracle, n).unwrap()
            }
            _ => {
                let m = rng.gen_range(1..dim);
                let marked = common::random_marked(&mut rng, dim, m);
                let params =
                    GroverParams::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0), marked)
                        .unwrap();
                grover_iterate(&mut fast, &params).unwrap();
                dense_grover(&params, n).unwrap()
            }
        };
        let slow = dense_apply(&dense, &state).unwrap();
        worst = worst.max(fast.max_deviation(&slow).unwrap());
    }
    verdict(
        7,
        "200 fast-kernel vs dense-matrix trials",
        worst < 1e-10,
        format!("max amplitude deviation={worst:.3e}"),
    );
}

#[test]
fn criterion_8_performance() {
    let n = 20;
    let mut state = StateVector::uniform_superposition(n).unwrap();
    let iterate = min_time(3, || standard_q(&mut state));

    let start = Instant::now();
    let plan = plan_ghz(n, MethodChoice::Auto).unwrap();
    let report = execute(&plan).unwrap();
    let full = start.elapsed();
    let pass = iterate < Duration::from_millis(100)
        && full < Duration::from_secs(5)
        && report.success_probability >= 1.0 - 1e-9;
    verdict(
        8,
        "n=20 iterate and full preparation budgets",
        pass,
        format!(
            "iterate={iterate:?}, full {} preparation ({} iterates)={full:?}, success={:.12}",
            plan.method.as_str(),
            plan.j_whole,
            report.success_probability
        ),
    );
}

#[test]
fn criterion_9_formula_audit() {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 2..=12 {
        let mut plans = vec![plan_retard(n).unwrap()];
        let reinit = plan_reinit(n).unwrap();
        if reinit.method == Method::Reinit {
            plans.push(reinit);
        }
        for plan in plans {
            let report = execute(&plan).unwrap();
            let audit = &report.formula_vs_solved;
            let consistent = audit.len() == 2
                && audit.iter().all(|a| {
                    a.refined.is_finite() && a.deviation.is_some() == a.closed_form.is_some()
                });
            ok &= consistent;
            let cells: Vec<String> = audit
                .iter()
                .map(|a| match a.deviation {
                    Some(d) => format!("{}: dev {d:.3e}", a.angle),
                    None => format!("{}: closed form out of domain", a.angle),
                })
                .collect();
            lines.push(format!(
                "n={n} {}: {}",
                plan.method.as_str(),
                cells.join(", ")
            ));
        }
    }
    for line in &lines {
        println!("    {line}");
    }
    let methods: BTreeSet<_> = lines.iter().map(|l| l.split(' ').nth(1).unwrap()).collect();
    verdict(
        9,
        "closed-form vs refined angles recorded for n=2..12",
        ok && methods.len() == 2,
        format!("{} audited plans", lines.len()),
    );
}
