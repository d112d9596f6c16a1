use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(
    name = "winding",
    version,
    about = "Winding-angle density of planar Brownian motion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Relative quadrature tolerance
    #[arg(long, global = true, env = "WINDING_TOL")]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write the table here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density of the winding angle on a θ grid
    Density(DensityArgs),
    /// Partial sums of the large-t expansions, or their coefficients
    Expand(ExpandArgs),
    /// Local-limit corrections for P(α < Θ_t < β)
    Lll(LllArgs),
    /// Monte Carlo estimate of the density or of an interval probability
    Simulate(SimulateArgs),
    /// Run the invariant suites
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityFormula {
    F1,
    F2,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    /// Comma list or start:stop:count
    #[arg(long, allow_hyphen_values = true)]
    pub theta_grid: String,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, value_enum, default_value_t = DensityFormula::F2)]
    pub formula: DensityFormula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpandMode {
    /// Expansion of log√t·f(θ log√t, t; ρ)
    Spitzer,
    /// Expansion of log√t·f(θ, t) at ρ = 1
    Local,
}

#[derive(Debug, Clone, Args)]
pub struct ExpandArgs {
    #[arg(long, value_enum)]
    pub mode: ExpandMode,
    /// Expansion order
    #[arg(long = "N", short = 'N', default_value_t = 1)]
    pub order: usize,
    #[arg(long, default_value = "1e4")]
    pub t_grid: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub theta_grid: String,
    /// Starting distance (spitzer mode only)
    #[arg(long)]
    pub rho: Option<f64>,
    /// Emit coefficient tables instead of partial sums
    #[arg(long)]
    pub coeffs: bool,
}

#[derive(Debug, Clone, Args)]
pub struct LllArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, default_value = "1e4,1e8")]
    pub t_grid: String,
    #[arg(long = "N", short = 'N', default_value_t = 1)]
    pub order: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 10.0)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub n_paths: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of histogram bins on [lo, hi]
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long, default_value_t = -6.0, allow_hyphen_values = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 6.0, allow_hyphen_values = true)]
    pub hi: f64,
    /// Interval lower bound ("-inf" allowed); with --beta, estimates P(α < Θ_t < β)
    #[arg(long, allow_hyphen_values = true, requires = "beta")]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "alpha")]
    pub beta: Option<f64>,
    /// Largest time step (default t/1000)
    #[arg(long)]
    pub h_max: Option<f64>,
    /// Near-origin step factor
    #[arg(long, default_value_t = 0.01)]
    pub kappa: f64,
    /// Worker threads for the path loop; output does not depend on it
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    Density,
    Coefficients,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Seed for the randomized draws
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
