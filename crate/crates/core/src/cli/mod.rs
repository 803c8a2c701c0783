//! Command-line front end. The `scalecap` binary only parses arguments and
//! calls [`run`]; everything else lives here so it can be driven from tests.
//!
//! Exit codes: 0 on success, 2 for input or validation errors, 3 for internal
//! numeric failures.

mod commands;
mod input;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;
pub use input::{parse_series, read_series};

#[derive(Debug, Parser)]
#[command(
    name = "scalecap",
    version,
    about = "Fit and analyze multiprocessor capacity laws"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit capacity models to a `p,throughput` CSV file.
    Fit(FitArgs),
    /// Emit capacity curves as CSV plot data.
    Curves(CurvesArgs),
    /// Tabulate the repairman model: exact MVA and the synchronous bound.
    Repairman(RepairmanArgs),
    /// Tabulate uniform-Coxian service moments and P-K response times.
    Coxian(CoxianArgs),
    /// Run a discrete-event simulation and compare with the analytic value.
    Simulate(SimulateArgs),
    /// Print the geometric factor matched to an Amdahl seriality.
    Match(MatchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Amdahl,
    Mpf,
    Usl,
    All,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct FormatArgs {
    /// Emit CSV instead of a human-readable table.
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
    /// Emit JSON instead of a human-readable table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Csv,
    Json,
}

impl FormatArgs {
    pub fn format(&self) -> Format {
        match (self.csv, self.json) {
            (true, _) => Format::Csv,
            (_, true) => Format::Json,
            _ => Format::Human,
        }
    }
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV file with header `p,throughput`; `#` lines are comments.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = ModelChoice::All)]
    pub model: ModelChoice,
    /// Uniprocessor throughput X(1), required when the file has no p=1 row.
    #[arg(long)]
    pub baseline: Option<f64>,
    /// Processor counts at which to predict capacity, e.g. `16,64,256`.
    #[arg(long, value_delimiter = ',')]
    pub extrapolate: Vec<u32>,
    /// Column holding the throughput values.
    #[arg(long, default_value = "throughput")]
    pub column: String,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Matching {
    None,
    Asymptotic,
    Leading,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    /// Amdahl seriality σ.
    #[arg(long)]
    pub amdahl: Option<f64>,
    /// Geometric multiprocessing factor φ.
    #[arg(long)]
    pub mpf: Option<f64>,
    /// USL parameters as `alpha,beta`.
    #[arg(long, value_delimiter = ',', num_args = 2, value_names = ["ALPHA", "BETA"])]
    pub usl: Option<Vec<f64>>,
    #[arg(long, default_value_t = 64)]
    pub p_max: u32,
    /// Derive the MPF curve from `--amdahl` by matching asymptotes or leading behaviour.
    #[arg(long, value_enum, default_value_t = Matching::None)]
    pub matching: Matching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepairmanMode {
    Exact,
    Sync,
    Both,
}

#[derive(Debug, Args)]
pub struct RepairmanArgs {
    /// Mean bus service demand D (seconds).
    #[arg(long = "d", short = 'D')]
    pub d: f64,
    /// Mean think time Z (seconds).
    #[arg(long = "z", short = 'Z')]
    pub z: f64,
    #[arg(long, default_value_t = 64)]
    pub p_max: u32,
    #[arg(long, value_enum, default_value_t = RepairmanMode::Both)]
    pub mode: RepairmanMode,
}

#[derive(Debug, Args)]
pub struct CoxianArgs {
    /// Per-stage service rate μ.
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    /// Advance probability φ.
    #[arg(long)]
    pub phi: f64,
    /// Total server utilization λE{S}, in (0, 1).
    #[arg(long)]
    pub rho: f64,
    #[arg(long, default_value_t = 100)]
    pub p_max: u32,
    /// Instead of a per-stage table, sweep utilization for the `--stages` chains.
    #[arg(long)]
    pub sweep: bool,
    /// Chain lengths for `--sweep`.
    #[arg(long, value_delimiter = ',', default_values_t = [1, 10, 50])]
    pub stages: Vec<u32>,
    /// Number of utilization points in `--sweep`, spread evenly below `--rho`.
    #[arg(long, default_value_t = 20)]
    pub rho_points: u32,
}

#[derive(Debug, Clone, Args)]
pub struct SimControl {
    /// Seed for the random stream.
    #[arg(long, env = "SCALECAP_SEED", default_value_t = crate::sim::DEFAULT_SEED)]
    pub seed: u64,
    /// Measured completions.
    #[arg(long, default_value_t = crate::sim::DEFAULT_MEASURED)]
    pub completions: u64,
    #[arg(long, default_value_t = crate::sim::DEFAULT_WARMUP)]
    pub warmup: u64,
    #[arg(long, default_value_t = crate::sim::DEFAULT_BATCHES)]
    pub batches: u64,
    /// Independent replications with consecutive seeds, run concurrently.
    #[arg(long, default_value_t = 1)]
    pub reps: u64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(subcommand)]
    pub scenario: Scenario,
}

#[derive(Debug, Subcommand)]
pub enum Scenario {
    /// Closed repairman network with exponential think and bus times.
    Repairman {
        #[arg(long)]
        p: u32,
        #[arg(long = "d", short = 'D')]
        d: f64,
        #[arg(long = "z", short = 'Z')]
        z: f64,
        #[command(flatten)]
        control: SimControl,
    },
    /// M/G/1 queue with a uniform Coxian server.
    Mg1 {
        /// Arrival rate λ.
        #[arg(long, required_unless_present = "rho", conflicts_with = "rho")]
        lambda: Option<f64>,
        /// Total utilization λE{S}; sets λ from the service mean.
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long, default_value_t = 1)]
        stages: u32,
        #[command(flatten)]
        control: SimControl,
    },
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    /// Amdahl seriality σ.
    #[arg(long)]
    pub sigma: f64,
}

/// Failure of a command, carrying its process exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub const INPUT: u8 = 2;
    pub const NUMERIC: u8 = 3;

    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: Self::INPUT,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl From<crate::Error> for CliError {
    fn from(err: crate::Error) -> Self {
        let code = match err {
            crate::Error::Numeric(_) => CliError::NUMERIC,
            _ => CliError::INPUT,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}
