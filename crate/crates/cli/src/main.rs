mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser)]
#[command(name = "bubblecut", version, about = "Exact maximum cut via bubble partitions and clique-width")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve MaxCut and print a run report.
    Solve(SolveArgs),
    /// Emit a bubble model of a proper interval graph.
    Model(ArtifactArgs),
    /// Emit a bubble partition (column partition, or exhaustive search).
    Partition(PartitionArgs),
    /// Emit a clique-width expression built from column partitions.
    Cwd(ArtifactArgs),
    /// Benchmark the solvers on generated instances; prints a TSV table.
    Bench(BenchArgs),
    /// Generate an instance.
    Gen(GenArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Graph file (edge-list format), or interval file with `--intervals`.
    input: PathBuf,
    /// Read the input as an interval representation.
    #[arg(long)]
    intervals: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    BubbleDp,
    CwVectors,
    CwTight,
    Oracle,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "bubble-dp")]
    algo: AlgoArg,
    /// Bubble partition file for bubble-dp (otherwise derived).
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Clique-width expression file for the cw algorithms (otherwise derived).
    #[arg(long)]
    expr: Option<PathBuf>,
    /// Skip the oracle cross-check on small graphs.
    #[arg(long)]
    no_verify: bool,
    /// Print a single JSON object instead of key=value lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ArtifactArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output file; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    artifact: ArtifactArgs,
    /// Search all bubble partitions for the smallest width.
    #[arg(long)]
    exhaustive: bool,
    /// Independence number bound for `--exhaustive`.
    #[arg(long, default_value_t = 1)]
    alpha: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFamily {
    ProperInterval,
    ForcedP,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long = "gen", value_enum, default_value = "proper-interval")]
    family: BenchFamily,
    /// Vertex counts: `N` or inclusive `A..B`.
    #[arg(long, default_value = "8..16")]
    n: String,
    /// Forced `p(G)` values for the forced-p family: `P` or `A..B`.
    #[arg(long, default_value = "2")]
    p: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances per (n, p) pair, with seeds `seed, seed+1, ...`.
    #[arg(long, default_value_t = 1)]
    repeat: u64,
    /// Edge density for the proper-interval family.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Comma-separated subset of bubble-dp,cw-tight,cw-vectors,oracle.
    #[arg(long, value_delimiter = ',', default_value = "bubble-dp,cw-tight,cw-vectors,oracle")]
    algos: Vec<AlgoArg>,
    /// Output file; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    ProperInterval,
    MixedUnit,
    ForcedP,
    Gnp,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability (gnp) or interval density (interval families).
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Target `p(G)` for forced-p.
    #[arg(long, default_value_t = 2)]
    p: usize,
    /// Emit the interval representation instead of the graph.
    #[arg(long)]
    intervals: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => commands::solve(&a),
        Command::Model(a) => commands::model(&a),
        Command::Partition(a) => commands::partition(&a),
        Command::Cwd(a) => commands::cwd(&a),
        Command::Bench(a) => commands::bench(&a),
        Command::Gen(a) => commands::gen(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Capability(_) => 3,
        }
    }
}
