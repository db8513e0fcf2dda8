use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "orecode", version, about = "Linearized Reed–Muller codes from multivariate Ore polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Length, dimension and designed distance, without building the code.
    Params(ParamsArgs),
    /// Run invariant suites and report pass/fail per suite.
    Verify(VerifyArgs),
    /// Build a code and write its descriptor and generator matrix.
    Build(BuildArgs),
    /// Encode a message with a previously built code.
    Encode(EncodeArgs),
    /// Compare the code with its image in the LAG code.
    EmbedCheck(EmbedArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ring,
    Nrd,
    Cocycle,
    Dimker,
    Zerosum,
    Distance,
    Embedding,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Ring => "ring",
            Suite::Nrd => "nrd",
            Suite::Cocycle => "cocycle",
            Suite::Dimker => "dimker",
            Suite::Zerosum => "zerosum",
            Suite::Distance => "distance",
            Suite::Embedding => "embedding",
        }
    }
}

/// Field, twist and message space.
#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    /// Characteristic of F_q.
    #[arg(long)]
    pub p: Option<u32>,
    /// F_q = F_{p^a}.
    #[arg(long)]
    pub a: Option<u32>,
    /// Field size q, as an alternative to --p/--a.
    #[arg(long)]
    pub q: Option<u32>,
    /// Degree [L : F_q].
    #[arg(long)]
    pub r: u32,
    /// Number of variables; defaults to the length of --e.
    #[arg(long)]
    pub m: Option<usize>,
    /// Twist vector, comma separated; defaults to (0, …, 0, 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub e: Option<Vec<i64>>,
    /// total:d, simplex:d or ac:d.
    #[arg(long)]
    pub spec: Option<String>,
    /// Simplex vertices "w1;w2;…", each comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub basis: Option<String>,
    /// Accept a --basis family that does not generate the lattice.
    #[arg(long)]
    pub experimental: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Suites to run, comma separated; none is a successful no-op.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides the per-suite sample counts.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Largest |L|^k the exhaustive distance search may enumerate.
    #[arg(long)]
    pub budget: Option<u128>,
    /// Exhaustive instead of sampled minimum distance.
    #[arg(long)]
    pub exhaustive: bool,
    /// Degree of F_{q^n} for the embedding suite.
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Recorded in the descriptor.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EncodeArgs {
    /// File written by `build`.
    #[arg(long)]
    pub code: PathBuf,
    /// JSON array of k elements of L, each an F_p digit vector.
    #[arg(long)]
    pub message: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
}
