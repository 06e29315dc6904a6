//! `majill`: detect, construct and certify majority illusions.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
//! 3 internal invariant failure.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::Format;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "majill",
    version,
    about = "Majority illusions on 2-colored graphs"
)]
struct Cli {
    /// Report format; graph files are always plain text.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated graph
    Gen(GenArgs),
    /// Color a graph: weak majority coloring or an illusion witness
    Color(ColorArgs),
    /// Per-agent table and network report of a colored graph
    Analyze(AnalyzeArgs),
    /// Whether some k-regular graph on n nodes admits a majority-majority illusion
    Feasible(FeasibleArgs),
    /// Build a k-regular graph on n nodes under majority-majority illusion
    Construct(ConstructArgs),
    /// Exhaustive search over all colorings of a small graph
    Oracle(OracleArgs),
    /// Model-check a Global Majority Logic formula
    Mc(McArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    /// Attach a random coloring drawn from this seed
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Subcommand)]
enum Family {
    /// Cycle on n nodes
    Cycle { n: usize },
    /// Complete graph on n nodes
    Complete { n: usize },
    /// Circulant graph: node i joined to i ± d for every offset d
    Circulant {
        n: usize,
        #[arg(required = true, num_args = 1..)]
        offsets: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ColorMode {
    /// Local search to a weak majority coloring, starting from the input
    /// coloring or a seeded random one
    WeakMajority,
    /// Majority-weak-majority illusion, which every graph admits
    Illusion,
    /// Strict illusion from a proper 2-coloring (bipartite graphs only)
    Strict,
}

#[derive(Debug, Args)]
struct ColorArgs {
    /// Graph file; stdin when absent or "-"
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ColorMode::Illusion)]
    mode: ColorMode,
    /// Seed for the random start of `weak-majority` on uncolored input
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the run summary; stderr by default
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Colored graph file; stdin when absent or "-"
    input: Option<PathBuf>,
    /// Fraction of agents for p-q illusions, e.g. 1/2
    #[arg(long, requires = "q")]
    p: Option<String>,
    /// Local/global threshold for q-illusions
    #[arg(long, requires = "p")]
    q: Option<String>,
}

#[derive(Debug, Args)]
struct FeasibleArgs {
    n: usize,
    k: usize,
    /// Check weak-majority-majority instead of majority-majority
    #[arg(long)]
    weak: bool,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    n: usize,
    k: usize,
    /// Complete-bipartite shortcut for n ≡ 2 (mod 4), n ≤ 2k − 2, k even
    #[arg(long)]
    fast: bool,
    /// Where to write the stage report; stderr by default
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    MaxStrictIllusion,
    MaxWeakIllusion,
    MinMonochromatic,
}

#[allow(clippy::enum_variant_names)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    MajorityMajority,
    WeakMajorityMajority,
    MajorityWeakMajority,
    WeakMajorityWeakMajority,
    UnanimityMajority,
    UnanimityWeakMajority,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Graph file; stdin when absent or "-"
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::MaxStrictIllusion)]
    objective: ObjectiveArg,
    /// Smallest coloring realising this network illusion instead of an optimum;
    /// exits 1 when there is none
    #[arg(long, value_enum, conflicts_with = "objective")]
    kind: Option<KindArg>,
    /// Largest node count to enumerate
    #[arg(long)]
    cap: Option<usize>,
    /// Disable the parallel search
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct McArgs {
    /// Graph file, colored unless --valuation is given; stdin when absent or "-"
    input: Option<PathBuf>,
    /// Valuation file with lines "<node> <atom>..."
    #[arg(long)]
    valuation: Option<PathBuf>,
    /// Formula, e.g. "GM ((GM p & M ~p) | (GM ~p & M p))"
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    formula: Option<String>,
    /// Named formula such as agent-majority-illusion or majority-majority
    #[arg(long)]
    preset: Option<String>,
    /// Atom standing for red
    #[arg(long, default_value = "p")]
    atom: String,
    /// Evaluate at this node
    #[arg(long, required_unless_present_any = ["global", "possible"], conflicts_with_all = ["global", "possible"])]
    node: Option<usize>,
    /// True iff the formula holds at every node
    #[arg(long, conflicts_with = "possible")]
    global: bool,
    /// True iff some valuation of the atom satisfies the formula somewhere
    #[arg(long)]
    possible: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let f = cli.format;
    match cli.command {
        Command::Gen(a) => commands::gen(&a.family, a.seed),
        Command::Color(a) => commands::color(&a, f),
        Command::Analyze(a) => commands::analyze(&a, f),
        Command::Feasible(a) => commands::feasible(&a, f),
        Command::Construct(a) => commands::construct(&a, f),
        Command::Oracle(a) => commands::oracle(&a, f),
        Command::Mc(a) => commands::mc(&a, f),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("majill: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Internal(_) => 3,
            })
        }
    }
}
