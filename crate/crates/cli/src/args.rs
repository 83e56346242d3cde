use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ecc",
    version,
    about = "Clustering of edge-colored hypergraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance with the chosen algorithm and report the coloring.
    Solve(SolveArgs),
    /// Monte-Carlo satisfaction frequencies of a MaxECC rounding, per edge.
    Estimate(EstimateArgs),
    /// Sweep protected-color budgets and report the bicriteria trade-off as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Max,
    Min,
    Pmean,
    Colorfair,
    Protected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgArg {
    LpRound,
    HyperMax,
    GraphMax,
    Matching,
    Fpt,
    Brute,
    Lovasz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Hyper,
    Graph,
}

fn parse_p(s: &str) -> Result<f64, String> {
    let p = match s.to_ascii_lowercase().as_str() {
        "inf" | "infinity" => f64::INFINITY,
        other => other.parse::<f64>().map_err(|e| e.to_string())?,
    };
    if p > 0.0 {
        Ok(p)
    } else {
        Err(format!("p must be positive or inf, got {s}"))
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemArg,
    #[arg(long, value_enum)]
    pub alg: AlgArg,
    /// Exponent of the p-mean objective (`inf` for color-fair).
    #[arg(long, value_parser = parse_p)]
    pub p: Option<f64>,
    /// Bicriteria trade-off in (0, 1/2] for protected LP rounding.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Unsatisfied weight allowed in the protected color.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Per-color bound for the color-fair decision problem.
    #[arg(long)]
    pub tau: Option<u64>,
    /// Total unsatisfied weight allowed by protected FPT.
    #[arg(long = "t")]
    pub t: Option<u64>,
    /// Protected color, 1-based.
    #[arg(long)]
    pub protected_color: Option<usize>,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Master seed of the randomized roundings.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Include wall-clock time in the report (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long, default_value_t = 20_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemArg,
    /// Protected color, 1-based.
    #[arg(long)]
    pub protected_color: usize,
    /// Budget fractions of the protected class weight, e.g. `0,0.25,0.5`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub fractions: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub rho: f64,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}
