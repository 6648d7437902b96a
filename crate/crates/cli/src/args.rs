//! Command-line surface: subcommands, flags and their defaults.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// First-detection statistics of a repeatedly monitored two-level system.
///
/// Exit codes: 0 success, 1 usage error, 2 numerical failure,
/// 3 comparison/acceptance failure.
#[derive(Parser, Debug)]
#[command(name = "qreset", version, about, long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate the first-detection time density over a time grid
    Pdf(PdfArgs),
    /// Sweep the measurement rate: mean, variance and decay time per rate
    MeanSweep(MeanSweepArgs),
    /// Run a trajectory ensemble and compare it with the analytic law
    Simulate(SimulateArgs),
    /// Report the small-time and late-time laws of the detection density
    Asymptotics(AsymptoticsArgs),
    /// Locate the measurement rates minimising mean, variance and decay time
    OptimalRate(OptimalRateArgs),
    /// Run the full acceptance suite, one pass/fail line per criterion
    Accept(AcceptArgs),
}

/// Model, scheme and waiting-time protocol selection.
#[derive(Args, Debug, Clone)]
pub struct PhysicsArgs {
    /// Model: "jc" (built-in, uses --g/--n) or a path to a Hamiltonian
    /// JSON file with entries h11,h12,h21,h22 as [re, im] pairs and an
    /// optional "initial_state": "plus" | "minus"
    #[arg(long, default_value = "jc")]
    pub model: String,

    /// Detection scheme: 1 detects the transition to the orthogonal
    /// state, 2 detects the return to the initial state
    #[arg(long, default_value_t = 1)]
    pub scheme: u8,

    /// Waiting-time protocol: "exponential" (rate --r),
    /// "gamma:SHAPE:SCALE" or "lomax:MU:TAU0"
    #[arg(long, default_value = "exponential")]
    pub protocol: String,

    /// Measurement rate of the exponential protocol
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,

    /// Coupling strength g of the built-in model
    #[arg(long, default_value_t = 0.1)]
    pub g: f64,

    /// Excitation number n of the built-in model
    #[arg(long, default_value_t = 37)]
    pub n: u32,
}

/// Destination and format of tabular output.
#[derive(Args, Debug, Clone)]
pub struct TableOutputArgs {
    /// Output file; omitted means stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format of the table
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

/// Destination and format of report output (JSON by default).
#[derive(Args, Debug, Clone)]
pub struct ReportOutputArgs {
    /// Output file; omitted means stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format of the report; csv flattens to key,value rows
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct PdfArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,

    /// End of the time grid; defaults to ten decay times (exponential
    /// protocol) or twenty mean detection times (other protocols)
    #[arg(long)]
    pub tmax: Option<f64>,

    /// Number of grid points, spaced uniformly over [0, tmax]
    #[arg(long, default_value_t = 201)]
    pub grid: usize,

    #[command(flatten)]
    pub output: TableOutputArgs,
}

#[derive(Args, Debug)]
pub struct MeanSweepArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,

    /// Smallest rate of the sweep
    #[arg(long, default_value_t = 0.05)]
    pub r_min: f64,

    /// Largest rate of the sweep
    #[arg(long, default_value_t = 4.0)]
    pub r_max: f64,

    /// Number of rates, spaced uniformly over [r-min, r-max]
    #[arg(long, default_value_t = 80)]
    pub grid: usize,

    #[command(flatten)]
    pub output: TableOutputArgs,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,

    /// Number of trajectories in the ensemble
    #[arg(long, default_value_t = 100_000)]
    pub trajectories: usize,

    /// RNG seed (overridden by the QRESET_SEED environment variable)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (overridden by QRESET_WORKERS); results are
    /// byte-identical for every worker count
    #[arg(long, default_value_t = 1)]
    pub workers: usize,

    /// Censoring cutoff; defaults to fifty analytic mean detection times
    #[arg(long)]
    pub tmax: Option<f64>,

    /// Number of uniform histogram bins over [0, cutoff]
    #[arg(long, default_value_t = 400)]
    pub bins: usize,

    /// Output base path: writes BASE.histogram.csv and BASE.summary.json;
    /// omitted means both go to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,

    #[command(flatten)]
    pub output: ReportOutputArgs,
}

#[derive(Args, Debug)]
pub struct OptimalRateArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,

    #[command(flatten)]
    pub output: ReportOutputArgs,
}

#[derive(Args, Debug)]
pub struct AcceptArgs {
    /// Run only the listed criterion numbers (1-12)
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}
