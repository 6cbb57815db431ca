use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "etf",
    version,
    about = "Equiangular tight frames, their measurements, uncertainty bounds and witnesses"
)]
pub struct Cli {
    /// Validation tolerance for frames and states [env: ETF_TOL; default 1e-8]
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate, validate or complement frames
    #[command(subcommand)]
    Frame(FrameCommand),
    /// Generate density matrices
    #[command(subcommand)]
    State(StateCommand),
    /// Outcome distribution of a state under a frame's POVM (CSV)
    Measure(MeasureArgs),
    /// Certify the uncertainty bounds on one state or a random sweep (CSV)
    Bounds(BoundsArgs),
    /// Evaluate separability and steering criteria on a bipartite state (CSV)
    Witness(WitnessArgs),
    /// Shorthand for `witness --mode steer`
    Steer(SteerArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FrameKind {
    Basis,
    Simplex,
    Optimize,
    Complement,
}

#[derive(Debug, Subcommand)]
pub enum FrameCommand {
    /// Build a frame and write it as JSON
    Gen(FrameGenArgs),
    /// Validate a frame file and print its residuals
    Validate(FrameValidateArgs),
    /// Write the Naimark complement of a frame file
    Complement(FrameComplementArgs),
}

#[derive(Debug, Args)]
pub struct FrameGenArgs {
    #[arg(long, value_enum)]
    pub kind: FrameKind,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Source frame for `--kind complement`
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Optimizer restarts
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct FrameValidateArgs {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct FrameComplementArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Subcommand)]
pub enum StateCommand {
    /// Ginibre random state, or a random separable state with `--separable K`
    Random(StateRandomArgs),
    /// Maximally entangled state on d ⊗ d
    Maxent(StateMaxentArgs),
}

#[derive(Debug, Args)]
pub struct StateRandomArgs {
    #[arg(long)]
    pub d: usize,
    /// Rank of the Ginibre factor [default: d]
    #[arg(long)]
    pub rank: Option<usize>,
    /// Number of product terms; produces a state on d ⊗ d
    #[arg(long)]
    pub separable: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct StateMaxentArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub frame: PathBuf,
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub frame: PathBuf,
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub state: Option<PathBuf>,
    /// Certify K Ginibre states (ranks cycling through 1..d, seeds seed..seed+K)
    #[arg(long, value_name = "K")]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Entropy orders; `inf` for the min-entropy
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5,2,3,5,10,inf")]
    pub alphas: Vec<String>,
    /// Bound families (coincidence, maxprob, min-entropy, collision, renyi, tsallis, inefficiency) or `all`
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub family: Vec<String>,
    /// Detection efficiency for the inefficiency rows
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessMode {
    /// Correlation measure G against the separable bound
    G,
    /// Max-probability and Tsallis tests of the convolution measurement
    Convolution,
    /// Tsallis steering inequality
    Steer,
    All,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub frame: PathBuf,
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub mode: WitnessMode,
    /// Tsallis orders in (0, 2]
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5,2")]
    pub alphas: Vec<f64>,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct SteerArgs {
    #[arg(long)]
    pub frame: PathBuf,
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5,2")]
    pub alphas: Vec<f64>,
    #[arg(long, default_value = "-")]
    pub out: String,
}
