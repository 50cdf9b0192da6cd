mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "chessevo", version, about = "Evolve chess evaluation parameters from game records and self-play")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Worker threads for fitness evaluation and games. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Optional `key = value` file of defaults; command-line flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Supervised evolution against moves from a PGN corpus.
    Evolve(EvolveArgs),
    /// Round-robin coevolution of previously evolved chromosomes.
    Coevolve(CoevolveArgs),
    /// Fraction of positions where the 1-ply choice equals the recorded move.
    Accuracy(AccuracyArgs),
    /// Colour-balanced match between two chromosomes.
    Match(MatchArgs),
    /// Generate a synthetic PGN corpus of decisive engine games.
    Selfplay(SelfplayArgs),
    /// Write a uniformly random chromosome.
    Random(RandomArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Fixed search depth in plies.
    #[arg(long, default_value_t = 2, conflicts_with_all = ["movetime_ms", "side_budget_ms"])]
    pub depth: u32,
    /// Per-move time budget instead of a fixed depth (not reproducible).
    #[arg(long)]
    pub movetime_ms: Option<u64>,
    /// Per-side total budget split over 40 moves (not reproducible).
    #[arg(long)]
    pub side_budget_ms: Option<u64>,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long)]
    pub pgn: PathBuf,
    /// Positions sampled before the train/test split.
    #[arg(long, default_value_t = 10_000)]
    pub positions: usize,
    #[arg(long, default_value_t = 0.5)]
    pub train_fraction: f64,
    #[arg(long, default_value_t = 2600)]
    pub min_elo: u32,
    #[arg(long, default_value_t = 100)]
    pub pop: usize,
    #[arg(long, default_value_t = 200)]
    pub gens: usize,
    #[arg(long, default_value_t = 0.75)]
    pub crossover: f64,
    #[arg(long, default_value_t = 0.005)]
    pub mutation: f64,
    #[arg(long, default_value_t = 1)]
    pub elitism: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CoevolveArgs {
    /// Chromosome hex files, or directories of `*.hex` files.
    #[arg(long, num_args = 1.., required = true)]
    pub seeds: Vec<PathBuf>,
    /// Population size; defaults to the number of seeds.
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub gens: usize,
    #[arg(long, default_value_t = 4)]
    pub games_per_pair: u32,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value_t = 0.75)]
    pub crossover: f64,
    #[arg(long, default_value_t = 0.005)]
    pub mutation: f64,
    #[arg(long, default_value_t = 1)]
    pub elitism: usize,
    /// FEN file of start positions; the bundled set by default.
    #[arg(long)]
    pub openings: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct AccuracyArgs {
    #[arg(long)]
    pub chromosome: PathBuf,
    /// `<FEN>;<UCI move>` lines, as written by `evolve`.
    #[arg(long)]
    pub positions: PathBuf,
}

#[derive(Args, Debug)]
pub struct MatchArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub games: usize,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long)]
    pub openings: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Per-game CSV report.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// PGN dump of all games.
    #[arg(long)]
    pub pgn: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelfplayArgs {
    /// Decisive games to produce.
    #[arg(long, default_value_t = 1200)]
    pub games: usize,
    #[arg(long, default_value_t = 4)]
    pub depth: u32,
    #[arg(long, default_value_t = 2)]
    pub random_plies: usize,
    #[arg(long, default_value_t = 0.3)]
    pub perturbation: f64,
    #[arg(long)]
    pub openings: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RandomArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let result = config::parse_with_config(args).and_then(commands::run);
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
