//! Planners that reach the target with probability one.
//!
//! The real-valued optimal count `j = π/(4θ) - 1/2` is rarely an integer. Two
//! fixes are offered, each built around one arbitrary-phase iterate:
//!
//! - **reinit**: a leading `Q(α, β)` rotates the uniform state to the angle
//!   from which `⌈j⌉` standard iterates land exactly on `π/2`.
//! - **retard**: `⌊j⌋` standard iterates, then a trailing `Q(φ, ϕ)` that
//!   completes the rotation exactly.
//!
//! Closed-form angle predictions are evaluated for both, but the angles that
//! are executed come from a root-find on the simulated state; the gap between
//! the two is reported per angle in [`PrepReport::formula_vs_solved`].

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grover::{grover_iterate, GroverParams, TrajectoryModel};
use crate::solve::{solve_phases, wrap_angle, GroupSums, SolverConfig};
use crate::statevector::{check_qubits, PhaseOracle, StateVector};
use crate::tolerance::{COS_DOMAIN_TOL, INTEGRALITY_TOL, RELATIVE_PHASE_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Reinit,
    Retard,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Reinit => "reinit",
            Method::Retard => "retard",
        }
    }
}

/// What the caller asks for; `Auto` takes `Direct` when the optimal count is
/// an integer and `Retard` otherwise, since `⌊j⌋ < ⌈j⌉`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MethodChoice {
    #[default]
    Auto,
    Direct,
    Reinit,
    Retard,
}

/// Which GHZ state to finish in: `(|0⟩ + |N-1⟩)/√2` or `(|0⟩ - |N-1⟩)/√2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Plus,
    Minus,
}

/// Phases of one arbitrary-phase iterate: `zero` on `|0⟩` inside the
/// transform conjugation (`α` or `φ`), `marked` on the marked set (`β` or `ϕ`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePair {
    pub zero: f64,
    pub marked: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSource {
    /// Polished from a sign choice of the closed-form angles.
    ClosedForm,
    /// Closed forms missing or not convergent; found from a seed grid.
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    pub residual: f64,
    pub iterations: usize,
    pub seed: SeedSource,
}

/// Closed-form predictions for the phases of the arbitrary-phase step.
///
/// Only cosines are determined; `zero`/`marked` carry the sign picked by the
/// solver's sign search, or `None` when the cosine is outside `[-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormulaAngles {
    pub cos_zero: f64,
    pub cos_marked: f64,
    pub zero: Option<f64>,
    pub marked: Option<f64>,
}

impl FormulaAngles {
    fn from_cosines(cos_zero: f64, cos_marked: f64) -> Self {
        Self {
            cos_zero,
            cos_marked,
            zero: principal_acos(cos_zero),
            marked: principal_acos(cos_marked),
        }
    }

    fn pair(&self) -> Option<PhasePair> {
        Some(PhasePair {
            zero: self.zero?,
            marked: self.marked?,
        })
    }
}

fn principal_acos(c: f64) -> Option<f64> {
    if c.is_finite() && c.abs() <= 1.0 + COS_DOMAIN_TOL {
        Some(c.clamp(-1.0, 1.0).acos())
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrepPlan {
    pub method: Method,
    pub qubits: usize,
    pub marked: BTreeSet<usize>,
    pub variant: Variant,
    /// `sin²θ = |M|/N`.
    pub theta: f64,
    /// Real optimal iteration count.
    pub j_real: f64,
    /// Standard iterates executed: `j` (direct), `j₁` (reinit) or `j₀` (retard).
    pub j_whole: usize,
    /// `(α, β)` of the leading iterate (reinit only).
    pub pre_phase: Option<PhasePair>,
    /// `(φ, ϕ)` of the trailing iterate (retard only).
    pub post_phase: Option<PhasePair>,
    pub formula: Option<FormulaAngles>,
    /// Reinit: pair amplitude predicted by the closed form, `sin(π/(4j₁+2))/√2`.
    pub a1_formula: Option<f64>,
    /// Reinit: pair amplitude the leading iterate actually has to produce,
    /// `sin(π/2 - 2j₁θ)/√2`.
    pub a1: Option<f64>,
    /// Extra phase on the last marked index, applied when the landing state
    /// had a nonzero relative phase.
    pub corrective_phase: Option<f64>,
    pub solver: Option<SolverStats>,
    pub predicted_success: f64,
}

impl PrepPlan {
    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    fn validate(&self) -> Result<()> {
        check_qubits(self.qubits)?;
        let dim = self.dim();
        match self.marked.last() {
            None => return Err(Error::EmptyTargets),
            Some(&index) if index >= dim => return Err(Error::IndexOutOfRange { index, dim }),
            _ => {}
        }
        let phases_ok = match self.method {
            Method::Direct => self.pre_phase.is_none() && self.post_phase.is_none(),
            Method::Reinit => self.pre_phase.is_some() && self.post_phase.is_none(),
            Method::Retard => self.pre_phase.is_none() && self.post_phase.is_some(),
        };
        if !phases_ok {
            return Err(Error::InvalidPlan(format!(
                "phase fields do not match method {}",
                self.method.as_str()
            )));
        }
        Ok(())
    }

    /// Names of the solved angles, in `(zero, marked)` order.
    pub fn angle_names(&self) -> Option<(&'static str, &'static str)> {
        match self.method {
            Method::Direct => None,
            Method::Reinit => Some(("alpha", "beta")),
            Method::Retard => Some(("phi", "varphi")),
        }
    }

    /// The solved phases of the arbitrary-phase step, if any.
    pub fn solved_phase(&self) -> Option<PhasePair> {
        self.pre_phase.or(self.post_phase)
    }
}

/// Deviation of one refined angle from its closed-form prediction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleAudit {
    pub angle: String,
    pub closed_form: Option<f64>,
    pub refined: f64,
    /// `|wrap(refined - closed_form)|`; `None` when the closed form is out of
    /// domain.
    pub deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrepReport {
    pub plan: PrepPlan,
    pub final_state: StateVector,
    /// Probability on the marked set.
    pub success_probability: f64,
    /// Probability on the unmarked states, summed directly.
    pub offtarget_probability: f64,
    /// Largest unmarked amplitude magnitude.
    pub residual_offtarget: f64,
    /// `arg(c_last / c_first)` over the marked set.
    pub relative_phase: f64,
    pub formula_vs_solved: Vec<AngleAudit>,
}

struct Problem {
    qubits: usize,
    marked: BTreeSet<usize>,
    model: TrajectoryModel,
}

impl Problem {
    fn ghz(qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let marked = [0, (1usize << qubits) - 1].into_iter().collect();
        Ok(Self {
            qubits,
            marked,
            model: TrajectoryModel::ghz(qubits)?,
        })
    }

    /// Formula-only problem: the marked indices are placeholders and only
    /// their count enters.
    fn counted(qubits: usize, marked_count: usize) -> Result<Self> {
        let model = TrajectoryModel::new(qubits, marked_count)?;
        let marked = if marked_count == 2 {
            [0, (1usize << qubits) - 1].into_iter().collect()
        } else {
            (0..marked_count).collect()
        };
        Ok(Self {
            qubits,
            marked,
            model,
        })
    }

    fn search(qubits: usize, marked: BTreeSet<usize>) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        if marked.is_empty() {
            return Err(Error::EmptyTargets);
        }
        if let Some(&index) = marked.last() {
            if index >= dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
        }
        if 2 * marked.len() >= dim {
            return Err(Error::MarkedSetTooLarge {
                marked: marked.len(),
                dim,
            });
        }
        let model = TrajectoryModel::new(qubits, marked.len())?;
        Ok(Self {
            qubits,
            marked,
            model,
        })
    }

    fn dim(&self) -> usize {
        1 << self.qubits
    }

    fn j_real(&self) -> f64 {
        self.model.optimal_iteration_count()
    }

    fn integral_j(&self) -> Option<usize> {
        let j = self.j_real();
        let r = j.round();
        ((j - r).abs() < INTEGRALITY_TOL).then_some(r as usize)
    }

    fn base_plan(&self, method: Method, j_whole: usize) -> PrepPlan {
        PrepPlan {
            method,
            qubits: self.qubits,
            marked: self.marked.clone(),
            variant: Variant::Plus,
            theta: self.model.theta(),
            j_real: self.j_real(),
            j_whole,
            pre_phase: None,
            post_phase: None,
            formula: None,
            a1_formula: None,
            a1: None,
            corrective_phase: None,
            solver: None,
            predicted_success: 1.0,
        }
    }

    fn standard(&self) -> GroverParams {
        GroverParams::standard(self.marked.iter().copied()).expect("marked set is nonempty")
    }

    fn direct(&self) -> Option<PrepPlan> {
        let j = self.integral_j()?;
        let mut plan = self.base_plan(Method::Direct, j);
        plan.predicted_success = self.model.angle_after(j).sin().powi(2);
        Some(plan)
    }

    /// Closed forms for the trailing iterate after `j0` standard steps of
    /// the two-state model:
    ///
    /// ```text
    /// cos φ = 1 - N·l²/4
    /// cos ϕ = -(N - 4)/(4k) · √((N - 2k²)/(N - 2))      (k, l) = (k_j0, l_j0)
    /// ```
    fn retard_formula(&self, j0: usize) -> Option<FormulaAngles> {
        if self.marked.len() != 2 {
            return None;
        }
        let n = self.dim() as f64;
        let (k, l) = self.model.amplitudes(j0);
        let cos_zero = 1.0 - n * l * l / 4.0;
        let cos_marked = -(n - 4.0) / (4.0 * k) * ((n - 2.0 * k * k) / (n - 2.0)).max(0.0).sqrt();
        Some(FormulaAngles::from_cosines(cos_zero, cos_marked))
    }

    /// Closed form for the leading iterate: `a₁ = sin(π/(4j₁+2))/√2` and
    /// `cos α = cos β = (a₁N√N + N - 4)/(2(N - 2))`.
    fn reinit_formula(&self, j1: usize) -> (f64, FormulaAngles) {
        let n = self.dim() as f64;
        let a1 = (PI / (4.0 * j1 as f64 + 2.0)).sin() * FRAC_1_SQRT_2;
        let c = (a1 * n * n.sqrt() + n - 4.0) / (2.0 * (n - 2.0));
        (a1, FormulaAngles::from_cosines(c, c))
    }

    fn retard_count(&self) -> usize {
        self.integral_j().unwrap_or(self.j_real().floor() as usize)
    }

    // With ⌊j⌋ = 0 the leading iterate alone completes the rotation.
    fn reinit_count(&self) -> usize {
        let j = self.j_real();
        if let Some(whole) = self.integral_j() {
            whole
        } else if j < 1.0 {
            0
        } else {
            j.ceil() as usize
        }
    }

    fn reinit_target(&self, j1: usize) -> f64 {
        FRAC_PI_2 - 2.0 * j1 as f64 * self.model.theta()
    }

    fn reinit_closed_form(&self, j1: usize) -> (f64, Option<FormulaAngles>) {
        if j1 == 0 {
            (FRAC_1_SQRT_2, self.retard_formula(0))
        } else if self.marked.len() != 2 {
            (self.reinit_formula(j1).0, None)
        } else {
            let (a1, f) = self.reinit_formula(j1);
            (a1, Some(f))
        }
    }

    fn retard(&self) -> Result<PrepPlan> {
        let j0 = self.retard_count();
        let mut state = StateVector::uniform_superposition(self.qubits)?;
        let standard = self.standard();
        for _ in 0..j0 {
            grover_iterate(&mut state, &standard)?;
        }
        let sums = GroupSums::of(&state, &self.marked);
        let mut plan = self.base_plan(Method::Retard, j0);
        let formula = self.retard_formula(j0);
        let (phase, formula, stats) = solve(&sums, FRAC_PI_2, formula)?;
        plan.post_phase = Some(phase);
        plan.formula = formula;
        plan.solver = Some(stats);
        Ok(plan)
    }

    fn reinit(&self) -> Result<PrepPlan> {
        if let Some(plan) = self.direct() {
            return Ok(plan);
        }
        let j1 = self.reinit_count();
        let target = self.reinit_target(j1);
        let mut plan = self.base_plan(Method::Reinit, j1);
        let (a1_formula, formula) = self.reinit_closed_form(j1);
        plan.a1_formula = Some(a1_formula);
        plan.a1 = Some(target.sin() * FRAC_1_SQRT_2);
        let uniform = StateVector::uniform_superposition(self.qubits)?;
        let sums = GroupSums::of(&uniform, &self.marked);
        let (phase, formula, stats) = solve(&sums, target, formula)?;
        plan.pre_phase = Some(phase);
        plan.formula = formula;
        plan.solver = Some(stats);
        Ok(plan)
    }
}

fn solve(
    sums: &GroupSums,
    target: f64,
    formula: Option<FormulaAngles>,
) -> Result<(PhasePair, Option<FormulaAngles>, SolverStats)> {
    let cfg = SolverConfig::default();
    let seed = formula.as_ref().and_then(FormulaAngles::pair);
    match solve_phases(sums, target, seed, &cfg) {
        Ok(sol) => {
            let formula = formula.map(|f| match sol.chosen_closed_form {
                Some(signed) => FormulaAngles {
                    zero: Some(signed.zero),
                    marked: Some(signed.marked),
                    ..f
                },
                None => f,
            });
            let stats = SolverStats {
                residual: sol.root.residual,
                iterations: sol.root.iterations,
                seed: sol.source,
            };
            Ok((sol.root.pair, formula, stats))
        }
        Err(root) => Err(Error::NoConvergence {
            residual: root.residual,
            iterations: root.iterations,
        }),
    }
}

/// Closed-form quantities for a register and marked-set size, evaluated
/// without simulating anything.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedForms {
    pub qubits: usize,
    pub marked_count: usize,
    pub theta: f64,
    pub j_real: f64,
    /// Standard iterates before the trailing phase step (retard).
    pub j0: usize,
    /// Standard iterates after the leading phase step (reinit).
    pub j1: usize,
    /// Pair amplitude after the leading step, closed form.
    pub a1_formula: f64,
    /// Pair amplitude the leading step must actually reach.
    pub a1: f64,
    /// Unsigned closed-form `(α, β)`.
    pub reinit: Option<FormulaAngles>,
    /// Unsigned closed-form `(φ, ϕ)`; pairs only.
    pub retard: Option<FormulaAngles>,
}

pub fn closed_forms(qubits: usize, marked_count: usize) -> Result<ClosedForms> {
    let problem = Problem::counted(qubits, marked_count)?;
    let j0 = problem.retard_count();
    let j1 = problem.reinit_count();
    let (a1_formula, reinit) = problem.reinit_closed_form(j1);
    Ok(ClosedForms {
        qubits,
        marked_count,
        theta: problem.model.theta(),
        j_real: problem.j_real(),
        j0,
        j1,
        a1_formula,
        a1: problem.reinit_target(j1).sin() * FRAC_1_SQRT_2,
        reinit,
        retard: problem.retard_formula(j0),
    })
}

/// The direct plan when the optimal count for the GHZ pair is an integer
/// (within [`INTEGRALITY_TOL`]); `None` when an exact method is needed.
pub fn plan_direct(qubits: usize) -> Result<Option<PrepPlan>> {
    Ok(Problem::ghz(qubits)?.direct())
}

/// Re-initialization: one arbitrary-phase iterate on the uniform state, then
/// `j₁ = ⌈j⌉` standard iterates. Falls back to the direct plan at integer `j`.
pub fn plan_reinit(qubits: usize) -> Result<PrepPlan> {
    Problem::ghz(qubits)?.reinit()
}

/// Retardation: `j₀ = ⌊j⌋` standard iterates, then one arbitrary-phase
/// iterate. At integer `j` the trailing iterate is solved anyway and comes
/// out as the identity up to phase.
pub fn plan_retard(qubits: usize) -> Result<PrepPlan> {
    Problem::ghz(qubits)?.retard()
}

/// GHZ plan for a method choice.
pub fn plan_ghz(qubits: usize, choice: MethodChoice) -> Result<PrepPlan> {
    let problem = Problem::ghz(qubits)?;
    match choice {
        MethodChoice::Auto => match problem.direct() {
            Some(plan) => Ok(plan),
            None => problem.retard(),
        },
        MethodChoice::Direct => problem.direct().ok_or_else(|| {
            Error::InvalidPlan(format!(
                "direct preparation needs an integer iteration count, got j = {}",
                problem.j_real()
            ))
        }),
        MethodChoice::Reinit => problem.reinit(),
        MethodChoice::Retard => problem.retard(),
    }
}

/// Exact search for an explicit marked set with `1 ≤ |M| < N/2`: direct at
/// integer `j`, otherwise retard-style with the trailing phases solved so
/// every unmarked amplitude vanishes.
pub fn plan_exact_search<I>(qubits: usize, marked: I) -> Result<PrepPlan>
where
    I: IntoIterator<Item = usize>,
{
    let problem = Problem::search(qubits, marked.into_iter().collect())?;
    match problem.direct() {
        Some(plan) => Ok(plan),
        None => problem.retard(),
    }
}

/// Flips the sign of `|N-1⟩`, turning `(|0⟩ + |N-1⟩)/√2` into
/// `(|0⟩ - |N-1⟩)/√2`.
pub fn to_minus_variant(state: &mut StateVector) {
    let last = state.dim() - 1;
    let flip = PhaseOracle::from_entries([(last, PI)]).expect("finite angle");
    state
        .apply_phase_oracle(&flip)
        .expect("last index is in range");
}

/// Runs `plan` from the uniform superposition and measures the result.
pub fn execute(plan: &PrepPlan) -> Result<PrepReport> {
    plan.validate()?;
    let marked = &plan.marked;
    let mut state = StateVector::uniform_superposition(plan.qubits)?;
    if let Some(pre) = plan.pre_phase {
        grover_iterate(
            &mut state,
            &GroverParams::new(pre.zero, pre.marked, marked.iter().copied())?,
        )?;
    }
    let standard = GroverParams::standard(marked.iter().copied())?;
    for _ in 0..plan.j_whole {
        grover_iterate(&mut state, &standard)?;
    }
    if let Some(post) = plan.post_phase {
        grover_iterate(
            &mut state,
            &GroverParams::new(post.zero, post.marked, marked.iter().copied())?,
        )?;
    }

    let mut plan = plan.clone();
    let first = *marked.first().expect("validated");
    let last = *marked.last().expect("validated");
    let correction = match plan.corrective_phase {
        Some(c) => Some(c),
        None => {
            let rel = relative_phase(&state, first, last);
            (rel.abs() > RELATIVE_PHASE_TOL).then_some(-rel)
        }
    };
    if let Some(c) = correction {
        state.apply_phase_oracle(&PhaseOracle::from_entries([(last, c)])?)?;
        plan.corrective_phase = Some(c);
    }
    if plan.variant == Variant::Minus {
        to_minus_variant(&mut state);
    }

    let mut offtarget = 0.0;
    let mut max_offtarget: f64 = 0.0;
    for (i, a) in state.amplitudes().iter().enumerate() {
        if !marked.contains(&i) {
            offtarget += a.norm_sqr();
            max_offtarget = max_offtarget.max(a.norm());
        }
    }
    let success = state.success_probability(marked.iter().copied())?;
    let relative = relative_phase(&state, first, last);
    let formula_vs_solved = audit(&plan);

    Ok(PrepReport {
        plan,
        final_state: state,
        success_probability: success,
        offtarget_probability: offtarget,
        residual_offtarget: max_offtarget,
        relative_phase: relative,
        formula_vs_solved,
    })
}

fn relative_phase(state: &StateVector, first: usize, last: usize) -> f64 {
    let amps = state.amplitudes();
    let (a, b) = (amps[first], amps[last]);
    if first == last || a.norm() == 0.0 || b.norm() == 0.0 {
        0.0
    } else {
        (b / a).arg()
    }
}

fn audit(plan: &PrepPlan) -> Vec<AngleAudit> {
    let (Some((zero_name, marked_name)), Some(solved)) = (plan.angle_names(), plan.solved_phase())
    else {
        return Vec::new();
    };
    let closed = plan.formula.as_ref();
    let entry = |name: &str, cf: Option<f64>, refined: f64| AngleAudit {
        angle: name.to_string(),
        closed_form: cf,
        refined,
        deviation: cf.map(|c| wrap_angle(refined - c).abs()),
    };
    vec![
        entry(zero_name, closed.and_then(|f| f.zero), solved.zero),
        entry(marked_name, closed.and_then(|f| f.marked), solved.marked),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::SUCCESS_TOL;

    #[test]
    fn direct_availability() {
        let p3 = plan_direct(3).unwrap().expect("n = 3 is direct");
        assert_eq!(p3.method, Method::Direct);
        assert_eq!(p3.j_whole, 1);
        assert!(plan_direct(4).unwrap().is_none());
        assert!(plan_direct(2).unwrap().is_none());
        assert_eq!(plan_direct(1), Err(Error::UnsupportedQubits(1)));
    }

    #[test]
    fn direct_three_qubits_reaches_ghz() {
        let report = execute(&plan_direct(3).unwrap().unwrap()).unwrap();
        let f = report
            .final_state
            .fidelity(&StateVector::ghz_plus(3).unwrap())
            .unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        assert!(report.formula_vs_solved.is_empty());
        assert!(report.plan.corrective_phase.is_none());
    }

    #[test]
    fn reinit_four_qubits() {
        let plan = plan_reinit(4).unwrap();
        assert_eq!(plan.method, Method::Reinit);
        assert_eq!(plan.j_whole, 2);
        let a1f = plan.a1_formula.unwrap();
        assert!((a1f - 0.218508).abs() < 1e-6);
        let f = plan.formula.unwrap();
        assert!((f.cos_zero - 0.92802).abs() < 1e-5);
        // acos(0.9280183136557955)
        assert!((f.zero.unwrap().abs() - 0.38173869761946827).abs() < 1e-12);
        let report = execute(&plan).unwrap();
        assert!(report.success_probability >= 1.0 - SUCCESS_TOL);
        assert_eq!(report.formula_vs_solved.len(), 2);
        assert_eq!(report.formula_vs_solved[0].angle, "alpha");
    }

    #[test]
    fn closed_forms_match_plans() {
        let c = closed_forms(4, 2).unwrap();
        assert_eq!((c.j0, c.j1), (1, 2));
        assert!((c.j_real - 1.6734079041462837).abs() < 1e-12);
        assert!((c.a1_formula - 0.218508).abs() < 1e-6);
        let retard = c.retard.unwrap();
        assert!((retard.zero.unwrap() - FRAC_PI_2).abs() < 1e-12);
        assert!((retard.cos_marked + 0.6).abs() < 1e-12);
        let plan = plan_reinit(4).unwrap();
        assert_eq!(c.a1, plan.a1.unwrap());

        let c3 = closed_forms(3, 2).unwrap();
        assert_eq!((c3.j0, c3.j1), (1, 1));

        let c2 = closed_forms(2, 2).unwrap();
        assert_eq!((c2.j0, c2.j1), (0, 0));
        assert!((c2.j_real - 0.5).abs() < 1e-12);

        let single = closed_forms(4, 1).unwrap();
        assert!(single.retard.is_none() && single.reinit.is_none());
    }

    #[test]
    fn reinit_two_qubits_uses_half_pi_phases() {
        let plan = plan_reinit(2).unwrap();
        assert_eq!(plan.j_whole, 0);
        let pre = plan.pre_phase.unwrap();
        assert!((pre.zero - FRAC_PI_2).abs() < 1e-12);
        assert!((pre.marked - FRAC_PI_2).abs() < 1e-12);
        let report = execute(&plan).unwrap();
        let f = report
            .final_state
            .fidelity(&StateVector::ghz_plus(2).unwrap())
            .unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reinit_at_integer_count_is_direct() {
        let plan = plan_reinit(3).unwrap();
        assert_eq!(plan.method, Method::Direct);
        assert_eq!(plan.j_whole, 1);
    }

    #[test]
    fn retard_four_qubits_closed_forms() {
        let plan = plan_retard(4).unwrap();
        assert_eq!(plan.j_whole, 1);
        let f = plan.formula.unwrap();
        assert!(f.cos_zero.abs() < 1e-12);
        assert!((f.cos_marked + 0.6).abs() < 1e-12);
        let post = plan.post_phase.unwrap();
        assert!((post.zero - FRAC_PI_2).abs() < 1e-9);
        assert!((post.marked.cos() + 0.6).abs() < 1e-9);
        assert_eq!(plan.solver.unwrap().seed, SeedSource::ClosedForm);
        let report = execute(&plan).unwrap();
        assert!(report.success_probability >= 1.0 - SUCCESS_TOL);
    }

    #[test]
    fn retard_three_qubits_is_trivial() {
        let plan = plan_retard(3).unwrap();
        assert_eq!(plan.method, Method::Retard);
        assert_eq!(plan.j_whole, 1);
        let f = plan.formula.unwrap();
        assert!((f.cos_zero - 1.0).abs() < 1e-12);
        let post = plan.post_phase.unwrap();
        assert!(post.zero.abs() < 1e-9);
        let report = execute(&plan).unwrap();
        let f = report
            .final_state
            .fidelity(&StateVector::ghz_plus(3).unwrap())
            .unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn retard_two_qubits_matches_reinit() {
        let retard = execute(&plan_retard(2).unwrap()).unwrap();
        let reinit = execute(&plan_reinit(2).unwrap()).unwrap();
        let f = retard.final_state.fidelity(&reinit.final_state).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn retard_six_qubits() {
        let plan = plan_retard(6).unwrap();
        assert_eq!(plan.j_whole, 3);
        let report = execute(&plan).unwrap();
        assert!(report.success_probability >= 1.0 - SUCCESS_TOL);
        assert!(report.relative_phase.abs() < RELATIVE_PHASE_TOL);
    }

    #[test]
    fn minus_variant() {
        let mut g = StateVector::ghz_plus(3).unwrap();
        to_minus_variant(&mut g);
        assert!(
            g.max_deviation(&StateVector::ghz_minus(3).unwrap())
                .unwrap()
                < 1e-15
        );
        to_minus_variant(&mut g);
        assert!(g.max_deviation(&StateVector::ghz_plus(3).unwrap()).unwrap() < 1e-15);
        let mut b = StateVector::basis_state(4, 0).unwrap();
        to_minus_variant(&mut b);
        assert_eq!(b, StateVector::basis_state(4, 0).unwrap());

        let plan = plan_ghz(5, MethodChoice::Auto)
            .unwrap()
            .with_variant(Variant::Minus);
        let report = execute(&plan).unwrap();
        let f = report
            .final_state
            .fidelity(&StateVector::ghz_minus(5).unwrap())
            .unwrap();
        assert!((f - 1.0).abs() < 1e-9);
        assert!((report.relative_phase.abs() - PI).abs() < 1e-6);
    }

    #[test]
    fn auto_and_forced_direct() {
        assert_eq!(
            plan_ghz(3, MethodChoice::Auto).unwrap().method,
            Method::Direct
        );
        assert_eq!(
            plan_ghz(4, MethodChoice::Auto).unwrap().method,
            Method::Retard
        );
        assert!(matches!(
            plan_ghz(4, MethodChoice::Direct),
            Err(Error::InvalidPlan(_))
        ));
    }

    #[test]
    fn exact_search_examples() {
        let p = plan_exact_search(3, [0, 7]).unwrap();
        assert_eq!(p, plan_direct(3).unwrap().unwrap());

        let p = plan_exact_search(4, [5]).unwrap();
        assert_eq!(p.method, Method::Retard);
        assert!((p.theta - 0.25f64.asin()).abs() < 1e-15);
        assert!((p.j_real - 2.6082688394304085).abs() < 1e-12);
        let r = execute(&p).unwrap();
        assert!(r.final_state.success_probability([5]).unwrap() >= 1.0 - SUCCESS_TOL);

        let r = execute(&plan_exact_search(4, [1, 2, 3]).unwrap()).unwrap();
        for i in 1..=3 {
            let p = r.final_state.success_probability([i]).unwrap();
            assert!((p - 1.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_search_errors() {
        assert_eq!(
            plan_exact_search(4, 0..8),
            Err(Error::MarkedSetTooLarge { marked: 8, dim: 16 })
        );
        assert_eq!(plan_exact_search(4, []), Err(Error::EmptyTargets));
        assert_eq!(
            plan_exact_search(3, [8]),
            Err(Error::IndexOutOfRange { index: 8, dim: 8 })
        );
    }

    #[test]
    fn execute_rejects_inconsistent_plan() {
        let mut plan = plan_retard(4).unwrap();
        plan.pre_phase = plan.post_phase;
        assert!(matches!(execute(&plan), Err(Error::InvalidPlan(_))));
    }

    #[test]
    fn corrective_phase_is_recorded() {
        // Execute a plan whose landing state carries a deliberate relative
        // phase: a direct plan on three qubits with the last index rotated.
        let mut plan = plan_direct(3).unwrap().unwrap();
        plan.corrective_phase = Some(0.5);
        let report = execute(&plan).unwrap();
        assert!((report.relative_phase - 0.5).abs() < 1e-12);
        assert_eq!(report.plan.corrective_phase, Some(0.5));
    }
}
