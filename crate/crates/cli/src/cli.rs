use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Love-number relaxation of a homogeneous incompressible sphere with a
/// generalized Maxwell rheology.
///
/// Inputs and outputs are in SI units. Laplace variables s are in 1/s,
/// times in seconds. Power-law sweeps use the dimensionless z = s·τ* with
/// τ* = η*/μ*.
#[derive(Debug, Parser)]
#[command(name = "gmb-love", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Evaluate grids on a single thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complex shear modulus μ̃(s) of a Maxwell-body model over an s grid.
    Modulus(ModulusArgs),
    /// Normalized power-law modulus M(z; p, q) by closed form and/or series.
    Powerlaw(PowerlawArgs),
    /// Relaxation spectrum (s_n, L_n) and elastic amplitude L_e.
    Spectrum(SpectrumArgs),
    /// Time-domain response by Heaviside expansion or Post–Widder inversion.
    ///
    /// Without --grid, times are 10 log-spaced points over
    /// 0.1·min τ … 10·(1+λ²Σμ′)·max τ.
    Invert(InvertArgs),
    /// Compare Heaviside expansion against Post–Widder over a time grid.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Grid as START STOP POINTS.
    #[arg(long, num_args = 3, value_names = ["START", "STOP", "POINTS"], allow_negative_numbers = true)]
    pub grid: Option<Vec<f64>>,

    /// Logarithmic spacing (endpoints must be positive).
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
pub struct ModelSource {
    /// Model file (JSON).
    #[arg(long, conflicts_with = "random")]
    pub model: Option<PathBuf>,

    /// Draw a random model with this many elements instead of reading one.
    #[arg(long, requires = "seed")]
    pub random: Option<usize>,

    /// Seed for --random.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Write the model actually used (JSON) to this path.
    #[arg(long)]
    pub save_model: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProblemOptions {
    /// Harmonic degree used with --random.
    #[arg(long, default_value_t = 2)]
    pub degree: u32,

    /// Fluid limit: a number, or `h` / `k` for the tidal fluid Love numbers
    /// of a homogeneous incompressible sphere, (2l+1)/(2(l-1)) and
    /// 3/(2(l-1)). These presets are conventional values supplied for
    /// convenience; they are not derived by this tool. Overrides the value
    /// in the problem file.
    #[arg(long)]
    pub fluid_limit: Option<String>,
}

#[derive(Debug, Args)]
pub struct PwOptions {
    /// Highest Post–Widder order.
    #[arg(long, default_value_t = 24)]
    pub pw_nmax: u32,

    /// Working precision in decimal digits [default: max(34, 2.5·nmax)].
    #[arg(long, env = "GMB_LOVE_PRECISION")]
    pub pw_digits: Option<u32>,

    /// Relative tolerance for reporting convergence.
    #[arg(long, default_value_t = 1e-6)]
    pub pw_tol: f64,

    /// Disable rho acceleration.
    #[arg(long)]
    pub no_acceleration: bool,
}

#[derive(Debug, Args)]
pub struct ModulusArgs {
    #[command(flatten)]
    pub source: ModelSource,

    #[command(flatten)]
    pub grid: GridArgs,

    /// Output CSV path [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PowerlawArgs {
    /// Exponents P Q of μ_n = μ*/n^p, η_n = η*/n^q.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], required = true)]
    pub pq: Vec<u32>,

    #[command(flatten)]
    pub grid: GridArgs,

    /// Closed form (default when --series is absent).
    #[arg(long)]
    pub closed: bool,

    /// Series value with its tail bound.
    #[arg(long)]
    pub series: bool,

    /// Sum exactly N terms instead of summing to --tol.
    #[arg(long)]
    pub n_terms: Option<usize>,

    /// Target tail bound for the automatic series.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,

    /// Output CSV path [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub source: ModelSource,

    #[command(flatten)]
    pub problem: ProblemOptions,

    /// Report amplitudes multiplied by the fluid limit.
    #[arg(long)]
    pub physical: bool,

    /// Write the JSON report to this path; the table still goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Heaviside,
    Postwidder,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[command(flatten)]
    pub source: ModelSource,

    #[command(flatten)]
    pub problem: ProblemOptions,

    #[command(flatten)]
    pub grid: GridArgs,

    #[arg(long, value_enum, default_value_t = Method::Heaviside)]
    pub method: Method,

    #[command(flatten)]
    pub pw: PwOptions,

    /// Multiply responses by the fluid limit.
    #[arg(long)]
    pub physical: bool,

    /// Output CSV path [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: ModelSource,

    #[command(flatten)]
    pub problem: ProblemOptions,

    #[command(flatten)]
    pub grid: GridArgs,

    #[command(flatten)]
    pub pw: PwOptions,

    /// Write the JSON report to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
