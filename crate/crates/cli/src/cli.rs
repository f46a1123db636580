use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Tight lower bounds on f-divergences from generalized variational divergences.
#[derive(Debug, Parser)]
#[command(name = "pinsker", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Best lower bound on one divergence given V or a constraint file.
    Bound(BoundArgs),
    /// Bound curves over a grid of V values.
    Curve(CurveArgs),
    /// Run an invariant suite and report PASS/FAIL per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["v", "constraints"])))]
pub struct BoundArgs {
    /// Catalog name, e.g. kl, hellinger, chi2.
    #[arg(long)]
    pub divergence: String,

    /// The variational divergence V = sum |p - q|, in [0, 2].
    #[arg(long, allow_negative_numbers = true)]
    pub v: Option<f64>,

    /// JSON file of the form {"constraints": [{"pi": 0.5, "v": 0.25}, ...]}.
    #[arg(long)]
    pub constraints: Option<PathBuf>,

    /// Defaults to closed for a single constraint at pi = 1/2, solver otherwise.
    #[arg(long, value_enum)]
    pub method: Option<BoundMethod>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundMethod {
    Closed,
    Solver,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub divergence: String,

    /// Comma-separated columns.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub method: Vec<CurveMethod>,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub v_min: f64,

    #[arg(long, default_value_t = 1.9, allow_negative_numbers = true)]
    pub v_max: f64,

    #[arg(long, default_value_t = 100)]
    pub steps: usize,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveMethod {
    Classical,
    Kullback,
    Topsoe,
    Toussaint,
    Vajda,
    Fedotov,
    Explicit,
}

impl CurveMethod {
    pub fn name(self) -> &'static str {
        match self {
            CurveMethod::Classical => "classical",
            CurveMethod::Kullback => "kullback",
            CurveMethod::Topsoe => "topsoe",
            CurveMethod::Toussaint => "toussaint",
            CurveMethod::Vajda => "vajda",
            CurveMethod::Fedotov => "fedotov",
            CurveMethod::Explicit => "explicit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Random cases per check; each suite has its own default.
    #[arg(long)]
    pub trials: Option<usize>,

    /// Alphabet size of random pairs.
    #[arg(long, default_value_t = 4)]
    pub atoms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Representation,
    Tightness,
    Oracle,
    Ladder,
}
