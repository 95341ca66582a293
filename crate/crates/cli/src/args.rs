use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wfeq", version, about = "Wright-Fisher equilibria, trajectories and sampling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the interior equilibrium and print it as JSON.
    Equilibrium(EquilibriumArgs),
    /// Iterate the deterministic dynamics and write the trajectory as CSV.
    Simulate(SimulateArgs),
    /// Sample finite-population paths and summarize the martingale noise.
    SimulateStochastic(StochasticArgs),
    /// Iterate the closed-form two-state model.
    Binary(BinaryArgs),
    /// Run the algebraic identity checks against a model.
    Validate(ValidateArgs),
    /// Print exact reference values for the documented examples.
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Main output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EquilibriumArgs {
    /// Model JSON file.
    pub model: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    /// `W_m(p) / W(p)` from the survival matrix.
    Regression,
    /// Equilibrium-parameterized drift from `(ρ, π)`.
    Fluctuation,
}

#[derive(Debug, Args)]
pub struct IterationArgs {
    /// Maximum number of generations.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    /// Stop when the largest increment falls below this.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Summary JSON file (default: standard error).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Model JSON file.
    pub model: PathBuf,
    /// Initial frequencies, comma separated (default: uniform).
    #[arg(long, value_delimiter = ',')]
    pub p0: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = Form::Regression)]
    pub form: Form,
    /// Accept an initial state on the simplex boundary.
    #[arg(long)]
    pub allow_boundary: bool,
    #[command(flatten)]
    pub iteration: IterationArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BinaryArgs {
    #[arg(long)]
    pub w_plus: f64,
    #[arg(long)]
    pub w_minus: f64,
    /// Initial frequency of the `+` state.
    #[arg(long, default_value_t = 0.5)]
    pub p0: f64,
    #[arg(long)]
    pub allow_boundary: bool,
    #[command(flatten)]
    pub iteration: IterationArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StochasticArgs {
    /// Model JSON file.
    pub model: PathBuf,
    /// Population size N.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub pop: u64,
    /// Generations per replica.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub replicas: u64,
    #[arg(long, env = "WFEQ_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Initial counts, comma separated, summing to N (default: even split).
    #[arg(long, value_delimiter = ',')]
    pub init: Option<Vec<u64>>,
    /// Worker threads for replicas (default: number of processors).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Moment summary JSON file (default: standard error).
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Model JSON file.
    pub model: PathBuf,
    /// Random interior states to check.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}
