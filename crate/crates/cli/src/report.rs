use ghz_grover::{
    AngleAudit, ClosedForms, Complex64, FormulaAngles, Method, PrepReport, SolverStats,
    TrajectoryModel, Variant,
};
use serde::{Deserialize, Serialize};

/// Rounds to 12 significant digits, the precision angles are printed with.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn sig12_opt(x: Option<f64>) -> Option<f64> {
    x.map(sig12)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AngleSet {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub phi: Option<f64>,
    pub varphi: Option<f64>,
}

impl AngleSet {
    fn set(&mut self, name: &str, value: Option<f64>) {
        let slot = match name {
            "alpha" => &mut self.alpha,
            "beta" => &mut self.beta,
            "phi" => &mut self.phi,
            "varphi" => &mut self.varphi,
            _ => return,
        };
        *slot = sig12_opt(value);
    }

    fn from_formula(names: (&str, &str), formula: Option<&FormulaAngles>) -> (Self, Self) {
        let mut angles = Self::default();
        let mut cosines = Self::default();
        if let Some(f) = formula {
            angles.set(names.0, f.zero);
            angles.set(names.1, f.marked);
            cosines.set(names.0, Some(f.cos_zero));
            cosines.set(names.1, Some(f.cos_marked));
        }
        (angles, cosines)
    }
}

/// Closed-form angles, their cosines, and the angles actually executed.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Angles {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub phi: Option<f64>,
    pub varphi: Option<f64>,
    pub cosines: AngleSet,
    pub refined: AngleSet,
}

/// One amplitude as `[re, im]`.
pub type Pair = [f64; 2];

fn pair(c: Complex64) -> Pair {
    [c.re, c.im]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupAmplitudes {
    /// Amplitude shared by the marked states (first marked index).
    pub pair: Pair,
    /// Amplitude shared by the unmarked states (first unmarked index).
    pub middle: Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkedProbability {
    pub index: usize,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Validation {
    /// Largest amplitude gap between the fast run and the dense replay.
    pub max_deviation: f64,
}

/// Report for `prepare` and `search`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub dim: usize,
    pub method: Method,
    pub variant: Variant,
    pub marked: Vec<usize>,
    pub theta: f64,
    pub j_real: f64,
    /// Standard iterates executed.
    pub iterations: usize,
    /// Arbitrary-phase iterates executed (0 or 1).
    pub phase_iterations: usize,
    pub angles: Angles,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1_formula: Option<f64>,
    pub success_probability: f64,
    pub unmarked_probability: f64,
    pub marked_probabilities: Vec<MarkedProbability>,
    pub relative_phase: f64,
    pub corrective_phase: Option<f64>,
    pub amplitudes: GroupAmplitudes,
    /// Largest unmarked amplitude magnitude.
    pub residual: f64,
    pub solver: Option<SolverStats>,
    pub formula_vs_solved: Vec<AngleAudit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<Validation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_state: Option<Vec<Pair>>,
}

impl RunReport {
    pub fn new(command: &str, report: &PrepReport) -> Self {
        let plan = &report.plan;
        let state = report.final_state.amplitudes();
        let first_marked = *plan.marked.first().expect("plan has a marked set");
        let first_unmarked = (0..plan.dim())
            .find(|i| !plan.marked.contains(i))
            .expect("marked set is a proper subset");

        let mut angles = Angles::default();
        if let Some(names) = plan.angle_names() {
            let (closed, cosines) = AngleSet::from_formula(names, plan.formula.as_ref());
            angles.alpha = closed.alpha;
            angles.beta = closed.beta;
            angles.phi = closed.phi;
            angles.varphi = closed.varphi;
            angles.cosines = cosines;
            if let Some(p) = plan.solved_phase() {
                angles.refined.set(names.0, Some(p.zero));
                angles.refined.set(names.1, Some(p.marked));
            }
        }

        let formula_vs_solved = report
            .formula_vs_solved
            .iter()
            .map(|a| AngleAudit {
                angle: a.angle.clone(),
                closed_form: sig12_opt(a.closed_form),
                refined: sig12(a.refined),
                deviation: a.deviation,
            })
            .collect();

        Self {
            command: command.to_string(),
            n: plan.qubits,
            dim: plan.dim(),
            method: plan.method,
            variant: plan.variant,
            marked: plan.marked.iter().copied().collect(),
            theta: sig12(plan.theta),
            j_real: plan.j_real,
            iterations: plan.j_whole,
            phase_iterations: usize::from(plan.solved_phase().is_some()),
            angles,
            a1: plan.a1,
            a1_formula: plan.a1_formula,
            success_probability: report.success_probability,
            unmarked_probability: report.offtarget_probability,
            marked_probabilities: plan
                .marked
                .iter()
                .map(|&index| MarkedProbability {
                    index,
                    probability: state[index].norm_sqr(),
                })
                .collect(),
            relative_phase: sig12(report.relative_phase),
            corrective_phase: sig12_opt(plan.corrective_phase),
            amplitudes: GroupAmplitudes {
                pair: pair(state[first_marked]),
                middle: pair(state[first_unmarked]),
            },
            residual: report.residual_offtarget,
            solver: plan.solver,
            formula_vs_solved,
            validation: None,
            full_state: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub j: usize,
    pub k_j: f64,
    pub l_j: f64,
    /// `sin²((2j+1)θ)`.
    pub success_probability: f64,
}

/// Report for `analyze`: closed forms only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub command: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub dim: usize,
    pub marked_count: usize,
    pub theta: f64,
    pub j_real: f64,
    pub j0: usize,
    pub j1: usize,
    pub a1: f64,
    pub a1_effective: f64,
    /// Unsigned principal values; `null` when the closed form is out of
    /// domain or does not apply to this marked-set size.
    pub angles: AngleSet,
    pub cosines: AngleSet,
    pub trajectory: Vec<TrajectoryPoint>,
}

impl AnalyzeReport {
    pub fn new(forms: &ClosedForms) -> Self {
        let model = TrajectoryModel::new(forms.qubits, forms.marked_count)
            .expect("closed forms were built from a valid model");
        let (mut angles, mut cosines) =
            AngleSet::from_formula(("alpha", "beta"), forms.reinit.as_ref());
        let (retard, retard_cos) = AngleSet::from_formula(("phi", "varphi"), forms.retard.as_ref());
        angles.phi = retard.phi;
        angles.varphi = retard.varphi;
        cosines.phi = retard_cos.phi;
        cosines.varphi = retard_cos.varphi;
        let last = forms.j_real.ceil() as usize + 1;
        let trajectory = (0..=last)
            .map(|j| {
                let (k_j, l_j) = model.amplitudes(j);
                TrajectoryPoint {
                    j,
                    k_j,
                    l_j,
                    success_probability: model.angle_after(j).sin().powi(2),
                }
            })
            .collect();
        Self {
            command: "analyze".into(),
            n: forms.qubits,
            dim: 1 << forms.qubits,
            marked_count: forms.marked_count,
            theta: sig12(forms.theta),
            j_real: forms.j_real,
            j0: forms.j0,
            j1: forms.j1,
            a1: forms.a1_formula,
            a1_effective: forms.a1,
            angles,
            cosines,
            trajectory,
        }
    }
}

/// Flattens a JSON value into `(dotted.path, scalar)` rows.
pub fn flatten(value: &serde_json::Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, value: &serde_json::Value, out: &mut Vec<(String, String)>) {
        let join = |key: &str| {
            if prefix.is_empty() {
                key.to_string()
            } else {
                format!("{prefix}.{key}")
            }
        };
        match value {
            serde_json::Value::Object(map) => {
                for (k, v) in map {
                    walk(&join(k), v, out);
                }
            }
            serde_json::Value::Array(items) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&join(&i.to_string()), v, out);
                }
            }
            serde_json::Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}
