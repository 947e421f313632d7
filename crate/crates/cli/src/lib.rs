//! Command-line front end for `ghz-grover`.
//!
//! Exit codes are a stable contract: 0 on success, 2 on a usage error, 3 on
//! a numerical failure (solver non-convergence, or a result that misses the
//! success threshold).

pub mod config;
pub mod report;

use std::fs::File;
use std::io::Write;
use std::path::Path;

use ghz_grover::reference::replay_plan;
use ghz_grover::tolerance::SUCCESS_TOL;
use ghz_grover::{
    closed_forms, execute, grover_iterate, plan_exact_search, plan_ghz, Error as CoreError,
    GroverParams, PrepPlan, StateVector, TrajectoryModel,
};
use serde::Serialize;
use thiserror::Error;

pub use config::{Cli, OutputFormat, RunConfig, SubcommandKind};
pub use report::{AnalyzeReport, RunReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

/// Dense replay must agree with the fast run to this amplitude gap.
pub const VALIDATION_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Numerical {
        message: String,
        residual: Option<f64>,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numerical { .. } => EXIT_NUMERICAL,
        }
    }

    /// Machine-readable form printed on standard output for numerical
    /// failures.
    pub fn to_json(&self) -> serde_json::Value {
        let residual = match self {
            CliError::Numerical { residual, .. } => *residual,
            _ => None,
        };
        serde_json::json!({
            "error": self.to_string(),
            "exit_code": self.exit_code(),
            "residual": residual,
        })
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NoConvergence { residual, .. } => CliError::Numerical {
                message: e.to_string(),
                residual: Some(residual),
            },
            CoreError::UnsupportedQubits(_)
            | CoreError::IndexOutOfRange { .. }
            | CoreError::EmptyTargets
            | CoreError::MarkedSetTooLarge { .. }
            | CoreError::DenseTooLarge(_)
            | CoreError::InvalidPlan(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical {
                message: e.to_string(),
                residual: None,
            },
        }
    }
}

/// Runs one command, writing the report to `out`, and returns the exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<u8, CliError> {
    config.check()?;
    match config.subcommand {
        SubcommandKind::Prepare => cmd_prepare(config, out),
        SubcommandKind::Search => cmd_search(config, out),
        SubcommandKind::Analyze => cmd_analyze(config, out),
    }
}

pub fn cmd_prepare(config: &RunConfig, out: &mut dyn Write) -> Result<u8, CliError> {
    let plan = plan_ghz(config.qubits, config.method)?.with_variant(config.variant);
    let report = run_plan("prepare", &plan, config)?;
    emit(&report, config.output_format, out)?;
    Ok(if report.success_probability >= 1.0 - SUCCESS_TOL {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    })
}

pub fn cmd_search(config: &RunConfig, out: &mut dyn Write) -> Result<u8, CliError> {
    let marked = config
        .marked
        .clone()
        .ok_or_else(|| CliError::Usage("search requires --marked".into()))?;
    let plan = plan_exact_search(config.qubits, marked)?;
    let report = run_plan("search", &plan, config)?;
    emit(&report, config.output_format, out)?;
    Ok(if report.unmarked_probability < SUCCESS_TOL {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    })
}

pub fn cmd_analyze(config: &RunConfig, out: &mut dyn Write) -> Result<u8, CliError> {
    let marked_count = match &config.marked {
        Some(m) => {
            let mut m = m.clone();
            m.sort_unstable();
            m.dedup();
            m.len()
        }
        None => 2,
    };
    let forms = closed_forms(config.qubits, marked_count)?;
    if let Some(path) = &config.dump_trajectory {
        let marked = match &config.marked {
            Some(m) => m.clone(),
            None => vec![0, (1 << config.qubits) - 1],
        };
        dump_trajectory(path, config.qubits, &marked)?;
    }
    emit(&AnalyzeReport::new(&forms), config.output_format, out)?;
    Ok(EXIT_OK)
}

fn run_plan(command: &str, plan: &PrepPlan, config: &RunConfig) -> Result<RunReport, CliError> {
    let executed = execute(plan)?;
    let mut report = RunReport::new(command, &executed);
    if config.validate {
        let dense = replay_plan(&executed.plan)?;
        let max_deviation = dense.max_deviation(&executed.final_state)?;
        if max_deviation >= VALIDATION_TOL {
            return Err(CliError::Numerical {
                message: format!("dense replay deviates by {max_deviation:e}"),
                residual: Some(max_deviation),
            });
        }
        report.validation = Some(report::Validation { max_deviation });
    }
    if config.full_state {
        report.full_state = Some(
            executed
                .final_state
                .amplitudes()
                .iter()
                .map(|a| [a.re, a.im])
                .collect(),
        );
    }
    if let Some(path) = &config.dump_trajectory {
        let marked: Vec<usize> = plan.marked.iter().copied().collect();
        dump_trajectory(path, config.qubits, &marked)?;
    }
    Ok(report)
}

#[derive(Debug, Serialize)]
struct TrajectoryRow {
    j: usize,
    k_j: f64,
    l_j: f64,
    simulated_pair_amp: f64,
    simulated_middle_amp: f64,
    success_probability: f64,
}

/// Writes the standard-iterate trajectory for `j = 0..=⌈j⌉+1`. `k_j`, `l_j`
/// are the closed forms; the simulated columns are raw amplitudes of the
/// first marked and first unmarked index, so `simulated_pair_amp = k_j/√N`.
pub fn dump_trajectory(path: &Path, qubits: usize, marked: &[usize]) -> Result<(), CliError> {
    let params = GroverParams::standard(marked.iter().copied())?;
    let marked_set = params.marked().clone();
    let model = TrajectoryModel::new(qubits, marked_set.len())?;
    let first_marked = *marked_set.first().expect("nonempty");
    let first_unmarked = (0..1usize << qubits)
        .find(|i| !marked_set.contains(i))
        .ok_or_else(|| CliError::Usage("marked set covers every basis state".into()))?;
    let last = model.optimal_iteration_count().ceil() as usize + 1;

    let mut writer = csv::Writer::from_writer(File::create(path)?);
    let mut state = StateVector::uniform_superposition(qubits)?;
    for j in 0..=last {
        if j > 0 {
            grover_iterate(&mut state, &params)?;
        }
        let (k_j, l_j) = model.amplitudes(j);
        let amps = state.amplitudes();
        writer
            .serialize(TrajectoryRow {
                j,
                k_j,
                l_j,
                simulated_pair_amp: amps[first_marked].re,
                simulated_middle_amp: amps[first_unmarked].re,
                success_probability: state.success_probability(marked_set.iter().copied())?,
            })
            .map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::Io(io),
        other => CliError::Usage(format!("csv: {other:?}")),
    }
}

/// Writes a report as pretty JSON, `field,value` CSV, or aligned text.
pub fn emit<T: Serialize>(
    report: &T,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(report).expect("report serializes");
            writeln!(out, "{text}")?;
        }
        OutputFormat::Csv | OutputFormat::Text => {
            let value = serde_json::to_value(report).expect("report serializes");
            let rows = report::flatten(&value);
            if format == OutputFormat::Csv {
                let mut writer = csv::Writer::from_writer(&mut *out);
                writer.write_record(["field", "value"]).map_err(csv_error)?;
                for (k, v) in &rows {
                    writer.write_record([k, v]).map_err(csv_error)?;
                }
                writer.flush()?;
            } else {
                let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &rows {
                    writeln!(out, "{k:<width$}  {v}")?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ghz_grover::{MethodChoice, Variant};

    fn config(subcommand: SubcommandKind, qubits: usize) -> RunConfig {
        RunConfig {
            subcommand,
            qubits,
            method: MethodChoice::Auto,
            variant: Variant::Plus,
            marked: None,
            output_format: OutputFormat::Json,
            dump_trajectory: None,
            validate: false,
            full_state: false,
        }
    }

    #[test]
    fn non_convergence_is_numerical_with_residual() {
        let e = CliError::from(CoreError::NoConvergence {
            residual: 0.25,
            iterations: 100,
        });
        assert_eq!(e.exit_code(), EXIT_NUMERICAL);
        let v = e.to_json();
        assert_eq!(v["residual"], 0.25);
        assert_eq!(v["exit_code"], 3);
    }

    #[test]
    fn precondition_errors_are_usage() {
        let e = CliError::from(CoreError::MarkedSetTooLarge { marked: 8, dim: 16 });
        assert_eq!(e.exit_code(), EXIT_USAGE);
        assert_eq!(
            CliError::from(CoreError::InvalidPlan("x".into())).exit_code(),
            EXIT_USAGE
        );
    }

    #[test]
    fn config_checks() {
        assert!(config(SubcommandKind::Prepare, 3).check().is_ok());
        assert!(config(SubcommandKind::Prepare, 1).check().is_err());
        assert!(config(SubcommandKind::Search, 3).check().is_err());
        let mut c = config(SubcommandKind::Search, 3);
        c.marked = Some(vec![]);
        assert!(c.check().is_err());
        c.marked = Some(vec![1, 8]);
        assert!(c.check().is_err());
        c.marked = Some(vec![1, 7]);
        assert!(c.check().is_ok());
    }

    #[test]
    fn run_writes_report_and_exit_code() {
        let mut out = Vec::new();
        let code = run(&config(SubcommandKind::Prepare, 4), &mut out).unwrap();
        assert_eq!(code, EXIT_OK);
        let report: RunReport = serde_json::from_slice(&out).unwrap();
        assert_eq!(report.method, ghz_grover::Method::Retard);
        assert!(report.success_probability >= 1.0 - SUCCESS_TOL);
    }
}
