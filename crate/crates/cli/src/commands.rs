use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use rand::SeedableRng;

use chessevo::arena::play_match;
use chessevo::coevolution::{coevol_stats_csv, coevolve_observed, CoevolConfig};
use chessevo::eval::Chromosome;
use chessevo::ga::{evolve_observed, match_count, stats_csv, GaConfig};
use chessevo::pgn::{load_pgn, prepare_sets, write_pgn, TrainingSet};
use chessevo::play::{GameSettings, Openings};
use chessevo::search::SearchLimits;
use chessevo::selfplay::{generate_corpus, CorpusConfig};

use crate::{AccuracyArgs, Cli, CoevolveArgs, Command, EvolveArgs, MatchArgs, RandomArgs, SearchArgs, SelfplayArgs};

pub fn run(cli: Cli) -> Result<()> {
    ensure!(cli.jobs >= 1, "--jobs must be at least 1");
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build().context("starting worker threads")?;
    let jobs = cli.jobs;
    pool.install(|| match cli.command {
        Command::Evolve(args) => evolve(args, jobs),
        Command::Coevolve(args) => coevolve(args, jobs),
        Command::Accuracy(args) => accuracy(args),
        Command::Match(args) => run_match(args, jobs),
        Command::Selfplay(args) => selfplay(args, jobs),
        Command::Random(args) => random(args),
    })
}

/// Effective settings, logged to stderr and optionally saved as a config
/// file that reproduces the run.
struct RunLog {
    lines: Vec<(String, String)>,
}

impl RunLog {
    fn new(command: &str) -> RunLog {
        eprintln!("chessevo {command}");
        RunLog { lines: Vec::new() }
    }

    fn set(&mut self, key: &str, value: impl Display) -> &mut Self {
        let value = value.to_string();
        eprintln!("  {key} = {value}");
        self.lines.push((key.to_string(), value));
        self
    }

    fn save(&self, dir: &Path) -> Result<()> {
        let text: String = self.lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        write(&dir.join("config.txt"), &text)
    }
}

fn seed_or_random(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn read_chromosome(path: &Path) -> Result<Chromosome> {
    let text = read(path)?;
    Chromosome::from_hex(&text).with_context(|| format!("parsing chromosome {}", path.display()))
}

fn read_openings(path: Option<&Path>) -> Result<Openings> {
    match path {
        Some(p) => Openings::parse(&read(p)?).with_context(|| format!("parsing openings {}", p.display())),
        None => Ok(Openings::builtin()),
    }
}

fn limits(args: &SearchArgs) -> Result<SearchLimits> {
    Ok(match (args.movetime_ms, args.side_budget_ms) {
        (Some(ms), _) => SearchLimits::movetime_ms(ms),
        (None, Some(ms)) => SearchLimits::from_side_budget(std::time::Duration::from_millis(ms)),
        (None, None) => SearchLimits::depth(args.depth)?,
    })
}

fn percent(k: u32, n: usize) -> String {
    format!("{k}/{n} ({:.1}%)", 100.0 * k as f64 / n.max(1) as f64)
}

fn evolve(args: EvolveArgs, jobs: usize) -> Result<()> {
    let seed = seed_or_random(args.seed);
    let config = GaConfig {
        population_size: args.pop,
        crossover_rate: args.crossover,
        mutation_rate: args.mutation,
        generations: args.gens,
        elitism_count: args.elitism,
        master_seed: seed,
    };
    let mut log = RunLog::new("evolve");
    log.set("pgn", args.pgn.display())
        .set("positions", args.positions)
        .set("train-fraction", args.train_fraction)
        .set("min-elo", args.min_elo)
        .set("pop", config.population_size)
        .set("gens", config.generations)
        .set("crossover", config.crossover_rate)
        .set("mutation", config.mutation_rate)
        .set("elitism", config.elitism_count)
        .set("seed", seed)
        .set("jobs", jobs);
    config.validate()?;

    let text = read(&args.pgn)?;
    let load = load_pgn(&text);
    for e in load.errors.iter().take(5) {
        eprintln!("warning: {e}");
    }
    ensure!(!load.games.is_empty(), "no games could be read from {}", args.pgn.display());
    eprintln!("loaded {} games ({} rejected)", load.games.len(), load.errors.len());
    let (train, test) = prepare_sets(&load.games, args.min_elo, args.positions, args.train_fraction, seed)?;
    ensure!(!train.is_empty(), "no training positions: corpus too small or rating filter too strict");
    eprintln!("training positions: {}, test positions: {}", train.len(), test.len());

    let run = evolve_observed(&config, &train, |s| {
        eprintln!(
            "generation {:>3}: best {} mean fitness {:.1}",
            s.generation,
            percent(s.best_match_count, train.len()),
            s.mean_fitness
        );
    })?;

    out_dir(&args.out)?;
    let best = run.best.chromosome;
    write(&args.out.join("best.hex"), &format!("{best}\n"))?;
    write(&args.out.join("best.params"), &best.decode().to_string())?;
    write(&args.out.join("stats.csv"), &stats_csv(&run.history))?;
    write(&args.out.join("train.txt"), &train.to_text())?;
    write(&args.out.join("test.txt"), &test.to_text())?;
    log.save(&args.out)?;

    let params = best.decode();
    println!("train: {}", percent(match_count(&params, &train), train.len()));
    println!("test: {}", percent(match_count(&params, &test), test.len()));
    Ok(())
}

fn gather_seeds(paths: &[PathBuf]) -> Result<Vec<(PathBuf, Chromosome)>> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(path)
                .with_context(|| format!("listing {}", path.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "hex"))
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    files.into_iter().map(|p| read_chromosome(&p).map(|c| (p, c))).collect()
}

fn coevolve(args: CoevolveArgs, jobs: usize) -> Result<()> {
    let seed = seed_or_random(args.seed);
    let seeds = gather_seeds(&args.seeds)?;
    let pop = args.pop.unwrap_or(seeds.len());
    let config = CoevolConfig {
        population_size: pop,
        generations: args.gens,
        games_per_pair: args.games_per_pair,
        game: GameSettings { limits: limits(&args.search)?, ..GameSettings::default() },
        crossover_rate: args.crossover,
        mutation_rate: args.mutation,
        elitism_count: args.elitism,
        master_seed: seed,
    };
    let mut log = RunLog::new("coevolve");
    log.set("seeds", seeds.iter().map(|(p, _)| p.display().to_string()).collect::<Vec<_>>().join(" "))
        .set("pop", pop)
        .set("gens", config.generations)
        .set("games-per-pair", config.games_per_pair);
    match config.game.limits {
        SearchLimits::Depth(d) => log.set("depth", d),
        SearchLimits::MoveTime(t) => log.set("movetime-ms", t.as_millis()),
    };
    log.set("crossover", config.crossover_rate)
        .set("mutation", config.mutation_rate)
        .set("elitism", config.elitism_count)
        .set("seed", seed)
        .set("jobs", jobs);
    if let Some(p) = &args.openings {
        log.set("openings", p.display());
    }
    config.validate()?;
    if seeds.len() < pop {
        bail!("coevolution needs {pop} seed chromosomes, got {}", seeds.len());
    }
    let openings = read_openings(args.openings.as_deref())?;
    let initial: Vec<Chromosome> = seeds.iter().take(pop).map(|&(_, c)| c).collect();

    let mut pgn = String::new();
    let run = coevolve_observed(&initial, &config, &openings, |g| {
        let s = &g.stats;
        eprintln!(
            "generation {:>3}: best {:.1} points ({:.1}%), {} games",
            s.generation,
            s.best_points,
            100.0 * s.best_score_rate,
            s.games_played
        );
        for game in &g.score.games {
            pgn.push_str(&write_pgn(&game.game.record));
        }
    })?;

    out_dir(&args.out)?;
    write(&args.out.join("best.hex"), &format!("{}\n", run.best))?;
    write(&args.out.join("best.params"), &run.best.decode().to_string())?;
    write(&args.out.join("stats.csv"), &coevol_stats_csv(&run.history))?;
    write(&args.out.join("games.pgn"), &pgn)?;
    log.save(&args.out)?;
    println!("best: {}", run.best);
    Ok(())
}

fn accuracy(args: AccuracyArgs) -> Result<()> {
    let chromosome = read_chromosome(&args.chromosome)?;
    let set = TrainingSet::parse(&read(&args.positions)?)
        .with_context(|| format!("parsing positions {}", args.positions.display()))?;
    ensure!(!set.is_empty(), "{} contains no positions", args.positions.display());
    let k = match_count(&chromosome.decode(), &set);
    println!("matched {}", percent(k, set.len()));
    Ok(())
}

fn run_match(args: MatchArgs, jobs: usize) -> Result<()> {
    let seed = seed_or_random(args.seed);
    let settings = GameSettings { limits: limits(&args.search)?, ..GameSettings::default() };
    let mut log = RunLog::new("match");
    log.set("a", args.a.display()).set("b", args.b.display()).set("games", args.games).set("limits", settings.limits);
    log.set("seed", seed).set("jobs", jobs);
    ensure!(args.games > 0 && args.games.is_multiple_of(2), "--games must be even and positive so colours balance, got {}", args.games);
    let a = read_chromosome(&args.a)?.decode();
    let b = read_chromosome(&args.b)?.decode();
    let openings = read_openings(args.openings.as_deref())?;
    let report = play_match(&a, &b, args.games, &settings, &openings, seed)?;
    if let Some(path) = &args.csv {
        write(path, &report.csv())?;
    }
    if let Some(path) = &args.pgn {
        write(path, &report.pgn())?;
    }
    let r = report.result;
    println!("{r}");
    println!("wins {} draws {} losses {}", r.wins, r.draws, r.losses);
    Ok(())
}

fn selfplay(args: SelfplayArgs, jobs: usize) -> Result<()> {
    let seed = seed_or_random(args.seed);
    let config = CorpusConfig {
        games: args.games,
        depth: args.depth,
        seed,
        random_plies: args.random_plies,
        perturbation: args.perturbation,
        ..CorpusConfig::default()
    };
    let mut log = RunLog::new("selfplay");
    log.set("games", config.games)
        .set("depth", config.depth)
        .set("random-plies", config.random_plies)
        .set("perturbation", config.perturbation)
        .set("seed", seed)
        .set("jobs", jobs);
    ensure!(config.depth >= 1, "--depth must be at least 1");
    ensure!((0.0..1.0).contains(&config.perturbation), "--perturbation must lie in [0, 1)");
    let openings = read_openings(args.openings.as_deref())?;
    let games = generate_corpus(&config, &openings, |kept, tried| eprintln!("{kept} decisive games from {tried} attempts"));
    let text: String = games.iter().map(write_pgn).collect();
    write(&args.out, &text)?;
    println!("wrote {} games to {}", games.len(), args.out.display());
    Ok(())
}

fn random(args: RandomArgs) -> Result<()> {
    let seed = seed_or_random(args.seed);
    RunLog::new("random").set("seed", seed);
    let c = Chromosome::random(&mut rand::rngs::StdRng::seed_from_u64(seed));
    write(&args.out, &format!("{c}\n"))?;
    println!("{c}");
    Ok(())
}
