use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghz_grover::{MethodChoice, Variant, MAX_QUBITS, MIN_QUBITS};

use crate::CliError;

/// Exact GHZ-state preparation and exact search by Grover amplitude
/// amplification on a simulated state vector.
#[derive(Debug, Parser)]
#[command(name = "ghz-grover", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prepare (|0…0⟩ ± |1…1⟩)/√2 with probability one.
    Prepare(PrepareArgs),
    /// Exactly search an explicit marked set.
    Search(SearchArgs),
    /// Tabulate the closed-form trajectory and angles without simulating.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Number of qubits n (N = 2^n basis states).
    #[arg(short = 'n', long)]
    pub qubits: usize,

    #[arg(short, long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Write the standard-iterate trajectory as CSV to this path.
    #[arg(long, value_name = "PATH")]
    pub dump_trajectory: Option<PathBuf>,

    /// Re-run the plan on the dense-matrix reference (n ≤ 8).
    #[arg(long, hide = true)]
    pub validate: bool,

    /// Include every amplitude in the report (n ≤ 16).
    #[arg(long)]
    pub full_state: bool,
}

#[derive(Debug, Args)]
pub struct PrepareArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    #[arg(short, long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,

    #[arg(long, value_enum, default_value_t = VariantArg::Plus)]
    pub variant: VariantArg,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Comma-separated marked basis indices.
    #[arg(long, value_delimiter = ',', required = true)]
    pub marked: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Marked indices; only their count matters. Defaults to the GHZ pair.
    #[arg(long, value_delimiter = ',')]
    pub marked: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Direct,
    Reinit,
    Retard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcommandKind {
    Prepare,
    Search,
    Analyze,
}

/// Validated settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub qubits: usize,
    pub method: MethodChoice,
    pub variant: Variant,
    pub marked: Option<Vec<usize>>,
    pub output_format: OutputFormat,
    pub dump_trajectory: Option<PathBuf>,
    pub validate: bool,
    pub full_state: bool,
}

/// Largest register whose full state may be printed.
pub const FULL_STATE_MAX_QUBITS: usize = 16;

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (subcommand, common, method, variant, marked) = match cli.command {
            Command::Prepare(a) => (
                SubcommandKind::Prepare,
                a.common,
                match a.method {
                    MethodArg::Auto => MethodChoice::Auto,
                    MethodArg::Direct => MethodChoice::Direct,
                    MethodArg::Reinit => MethodChoice::Reinit,
                    MethodArg::Retard => MethodChoice::Retard,
                },
                match a.variant {
                    VariantArg::Plus => Variant::Plus,
                    VariantArg::Minus => Variant::Minus,
                },
                None,
            ),
            Command::Search(a) => (
                SubcommandKind::Search,
                a.common,
                MethodChoice::Auto,
                Variant::Plus,
                Some(a.marked),
            ),
            Command::Analyze(a) => (
                SubcommandKind::Analyze,
                a.common,
                MethodChoice::Auto,
                Variant::Plus,
                a.marked,
            ),
        };
        let config = RunConfig {
            subcommand,
            qubits: common.qubits,
            method,
            variant,
            marked,
            output_format: common.format,
            dump_trajectory: common.dump_trajectory,
            validate: common.validate,
            full_state: common.full_state,
        };
        config.check()?;
        Ok(config)
    }

    pub fn check(&self) -> Result<(), CliError> {
        let n = self.qubits;
        if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
            return Err(CliError::Usage(format!(
                "--qubits must be in {MIN_QUBITS}..={MAX_QUBITS}, got {n}"
            )));
        }
        if self.subcommand == SubcommandKind::Search && self.marked.is_none() {
            return Err(CliError::Usage("search requires --marked".into()));
        }
        if let Some(marked) = &self.marked {
            let dim = 1usize << n;
            if marked.is_empty() {
                return Err(CliError::Usage("--marked must not be empty".into()));
            }
            if let Some(&bad) = marked.iter().find(|&&i| i >= dim) {
                return Err(CliError::Usage(format!(
                    "marked index {bad} out of range for {dim} basis states"
                )));
            }
        }
        if self.validate && n > ghz_grover::reference::MAX_DENSE_QUBITS {
            return Err(CliError::Usage(format!(
                "--validate supports at most {} qubits",
                ghz_grover::reference::MAX_DENSE_QUBITS
            )));
        }
        if self.full_state && n > FULL_STATE_MAX_QUBITS {
            return Err(CliError::Usage(format!(
                "--full-state supports at most {FULL_STATE_MAX_QUBITS} qubits"
            )));
        }
        Ok(())
    }
}
