use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qkernel::solver::{PickPolicy, Strategy, WitnessRule};
use qkernel::{GraphClass, Rational};

use crate::CliError;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  other failure (I/O, generation)
  2  usage error
  3  instance file could not be parsed
  4  digraph has a source
  5  exact search budget exceeded
  6  digraph is not in the requested class";

#[derive(Debug, Parser)]
#[command(name = "qk", version, about = "Small quasi-kernels in sourceless digraphs", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a quasi-kernel greedily and print the result with its phase trace.
    Solve(SolveArgs),
    /// Find a smallest quasi-kernel (and optionally kernel) by exhaustive search.
    Exact(ExactArgs),
    /// Check whether a vertex set is a quasi-kernel.
    Verify(VerifyArgs),
    /// Certify membership in a digraph class.
    Detect(DetectArgs),
    /// Generate an instance file.
    Gen(GenArgs),
    /// Run the size-bound experiment over a generated family and emit CSV rows.
    Bounds(BoundsArgs),
    /// Print the bound factors of the star-free and short-cycle-free classes.
    BoundTable(BoundTableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleName {
    Baseline,
    Tratio,
    Outdeg3,
    StarFree,
    ShortCycleFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PickName {
    LowestId,
    MaxOutDegree,
}

#[derive(Debug, Clone, Args)]
pub struct StrategyArgs {
    #[arg(long, value_enum, default_value = "outdeg3")]
    pub strategy: RuleName,
    /// Threshold for `tratio`, as `p/q` or an integer.
    #[arg(long, default_value = "1/1")]
    pub t: Rational,
    /// Degree parameter for `star-free` and `short-cycle-free`.
    #[arg(long)]
    pub d: Option<u32>,
    /// Solve the remainder exactly once at most this many vertices are left.
    #[arg(long)]
    pub exact_tail: Option<usize>,
    #[arg(long, value_enum, default_value = "lowest-id")]
    pub source_pick: PickName,
}

impl StrategyArgs {
    pub fn strategy(&self) -> Result<Strategy, CliError> {
        let need_d = || {
            self.d
                .ok_or_else(|| CliError::Usage(format!("--d is required for {:?}", self.strategy)))
        };
        let rule = match self.strategy {
            RuleName::Baseline => WitnessRule::Baseline,
            RuleName::Tratio => WitnessRule::TRatio { t: self.t },
            RuleName::Outdeg3 => WitnessRule::OutDeg3,
            RuleName::StarFree => WitnessRule::StarFree { d: need_d()? },
            RuleName::ShortCycleFree => WitnessRule::ShortCycleFree { d: need_d()? },
        };
        let mut strategy = Strategy::new(rule).with_source_pick(match self.source_pick {
            PickName::LowestId => PickPolicy::LowestId,
            PickName::MaxOutDegree => PickPolicy::MaxOutDegree,
        });
        if let Some(cap) = self.exact_tail {
            strategy = strategy.with_exact_tail(cap);
        }
        Ok(strategy)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub path: PathBuf,
    #[command(flatten)]
    pub strategy: StrategyArgs,
    /// Also write a DOT rendering with the quasi-kernel highlighted.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Store the JSON result under `<dir>/<hash>.json`.
    #[arg(long)]
    pub results_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    pub path: PathBuf,
    /// Also search for a smallest kernel.
    #[arg(long)]
    pub kernel: bool,
    #[arg(long, default_value_t = 24)]
    pub max_n: usize,
    #[arg(long, default_value_t = 200_000_000)]
    pub max_nodes: u64,
    #[arg(long)]
    pub time_limit_ms: Option<u64>,
    #[arg(long)]
    pub results_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// Comma-separated vertex ids.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub set: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassName {
    Sourceless,
    Oriented,
    MaxOutDegree,
    Outdeg3,
    StarFree,
    ShortCycleFree,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    pub path: PathBuf,
    #[arg(long, value_enum)]
    pub class: ClassName,
    #[arg(long)]
    pub d: Option<u32>,
}

impl DetectArgs {
    pub fn class(&self) -> Result<GraphClass, CliError> {
        let d = || {
            self.d
                .ok_or_else(|| CliError::Usage(format!("--d is required for {:?}", self.class)))
        };
        Ok(match self.class {
            ClassName::Sourceless => GraphClass::Sourceless,
            ClassName::Oriented => GraphClass::Oriented,
            ClassName::MaxOutDegree => GraphClass::MaxOutDegree { d: d()? },
            ClassName::Outdeg3 => GraphClass::OutDeg3,
            ClassName::StarFree => GraphClass::StarFree { d: d()? },
            ClassName::ShortCycleFree => GraphClass::ShortCycleFree { d: d()? },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Cycle,
    DisjointC4s,
    Rotational,
    Paley,
    PaleySinks,
    RandomSourceless,
    RandomShortCycleFree,
    RandomStarFree,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub residues: Vec<usize>,
    #[arg(long)]
    pub oriented: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundsFamily {
    DisjointC4s,
    RandomOutdeg3,
    RandomSourceless,
    RandomStarFree,
    RandomShortCycleFree,
    PaleySinks,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub family: BoundsFamily,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest instance size; sizes are drawn from `min-n..=n`.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub min_n: usize,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    /// Fixed cycle count for `disjoint-c4s`; otherwise trial i uses i + 1.
    #[arg(long)]
    pub m: Option<usize>,
    /// Paley order for `paley-sinks`.
    #[arg(long, default_value_t = 7)]
    pub q: usize,
    /// Fixed sink count for `paley-sinks`; otherwise trial i uses i + 1.
    #[arg(long)]
    pub k: Option<usize>,
    /// Threshold used by `tratio` rows.
    #[arg(long, default_value = "1/1")]
    pub t: Rational,
    /// Run the exact oracle on instances with at most this many vertices.
    #[arg(long, default_value_t = 14)]
    pub exact_max_n: usize,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BoundTableArgs {
    #[arg(long, default_value_t = 8)]
    pub max_d: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: TableFormat,
}
