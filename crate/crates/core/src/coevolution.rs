//! Coevolution: organisms are scored by round-robin play against each
//! other and bred with linear rank selection.

use std::fmt::Write;

use rand::Rng;
use rayon::prelude::*;

use crate::chess::Color;
use crate::eval::{Chromosome, EvalParams};
use crate::ga::{check_common, crossover_uniform, mutate, ranking, stream, GaError};
use crate::play::{play_game, GameSettings, Openings, PlayedGame};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoevolConfig {
    pub population_size: usize,
    /// Breeding rounds after the seed generation.
    pub generations: usize,
    pub games_per_pair: u32,
    pub game: GameSettings,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub elitism_count: usize,
    pub master_seed: u64,
}

impl Default for CoevolConfig {
    fn default() -> Self {
        CoevolConfig {
            population_size: 10,
            generations: 50,
            games_per_pair: 4,
            game: GameSettings::default(),
            crossover_rate: 0.75,
            mutation_rate: 0.005,
            elitism_count: 1,
            master_seed: 0,
        }
    }
}

impl CoevolConfig {
    pub fn validate(&self) -> Result<(), GaError> {
        check_common(self.population_size, self.crossover_rate, self.mutation_rate, self.elitism_count)?;
        if self.games_per_pair == 0 || !self.games_per_pair.is_multiple_of(2) {
            return Err(GaError::GamesPerPair(self.games_per_pair));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TournamentGame {
    pub white: usize,
    pub black: usize,
    pub opening_id: usize,
    pub game: PlayedGame,
}

/// Per-organism tallies, kept in half-points so totals are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct TournamentScore {
    pub half_points: Vec<u32>,
    pub white_games: Vec<u32>,
    pub black_games: Vec<u32>,
    pub games_played: u32,
    pub games: Vec<TournamentGame>,
}

impl TournamentScore {
    pub fn points(&self, i: usize) -> f64 {
        self.half_points[i] as f64 / 2.0
    }

    pub fn total_points(&self) -> f64 {
        self.half_points.iter().sum::<u32>() as f64 / 2.0
    }
}

/// Every unordered pair plays `games_per_pair` games. In game `k` of pair
/// `(i, j)` with `i < j`, `i` has white when `k` is even; both games of a
/// colour-swapped couple start from the same opening.
pub fn round_robin_scores(
    population: &[Chromosome],
    config: &CoevolConfig,
    openings: &Openings,
    generation: usize,
) -> TournamentScore {
    let n = population.len();
    let params: Vec<EvalParams> = population.iter().map(Chromosome::decode).collect();
    let mut schedule = Vec::new();
    let mut pair_index = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..config.games_per_pair as usize {
                let (white, black) = if k % 2 == 0 { (i, j) } else { (j, i) };
                let opening_id = (pair_index * config.games_per_pair as usize / 2 + k / 2 + generation) % openings.len();
                schedule.push((white, black, opening_id));
            }
            pair_index += 1;
        }
    }

    let games: Vec<TournamentGame> = schedule
        .into_par_iter()
        .map(|(white, black, opening_id)| {
            let mut game = play_game(&params[white], &params[black], openings.get(opening_id).position, &config.game);
            game.record.event = format!("coevolution generation {generation}");
            game.record.white = format!("organism {white}");
            game.record.black = format!("organism {black}");
            TournamentGame { white, black, opening_id, game }
        })
        .collect();

    let mut score = TournamentScore {
        half_points: vec![0; n],
        white_games: vec![0; n],
        black_games: vec![0; n],
        games_played: games.len() as u32,
        games: Vec::new(),
    };
    for g in &games {
        score.half_points[g.white] += g.game.half_points(Color::White);
        score.half_points[g.black] += g.game.half_points(Color::Black);
        score.white_games[g.white] += 1;
        score.black_games[g.black] += 1;
    }
    score.games = games;
    score
}

/// Linear ranking: the organism ranked `r` (1 = best) of `N` is picked with
/// probability `(N - r + 1) / (N (N + 1) / 2)`. Equal scores rank by index.
pub fn rank_select<R: Rng + ?Sized>(scores: &[u32], rng: &mut R) -> usize {
    let order = ranking(scores);
    let n = order.len();
    let mut ticket = rng.gen_range(0..n * (n + 1) / 2);
    for (r, &i) in order.iter().enumerate() {
        let weight = n - r;
        if ticket < weight {
            return i;
        }
        ticket -= weight;
    }
    unreachable!("ticket below total weight")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoevolStats {
    pub generation: usize,
    pub best_points: f64,
    pub mean_points: f64,
    pub games_played: u32,
    /// Best organism's points over the games it played.
    pub best_score_rate: f64,
    pub total_points: f64,
}

pub const COEVOL_STATS_HEADER: &str = "generation,best_points,mean_points,games_played,best_score_rate";

pub fn coevol_stats_csv(history: &[CoevolStats]) -> String {
    let mut out = format!("{COEVOL_STATS_HEADER}\n");
    for s in history {
        let _ = writeln!(
            out,
            "{},{:.1},{:.3},{},{:.6}",
            s.generation, s.best_points, s.mean_points, s.games_played, s.best_score_rate
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoevolGeneration {
    pub population: Vec<Chromosome>,
    pub score: TournamentScore,
    pub stats: CoevolStats,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoevolutionRun {
    /// Top scorer of the last generation.
    pub best: Chromosome,
    pub history: Vec<CoevolStats>,
    pub generations: Vec<CoevolGeneration>,
}

pub fn coevolve(seeds: &[Chromosome], config: &CoevolConfig, openings: &Openings) -> Result<CoevolutionRun, GaError> {
    coevolve_observed(seeds, config, openings, |_| {})
}

pub fn coevolve_observed(
    seeds: &[Chromosome],
    config: &CoevolConfig,
    openings: &Openings,
    mut observe: impl FnMut(&CoevolGeneration),
) -> Result<CoevolutionRun, GaError> {
    config.validate()?;
    if seeds.len() != config.population_size {
        return Err(GaError::SeedCount { expected: config.population_size, got: seeds.len() });
    }
    let n = config.population_size;
    let games_each = ((n - 1) as u32 * config.games_per_pair) as f64;
    let mut population = seeds.to_vec();
    let mut generations = Vec::with_capacity(config.generations + 1);

    for generation in 0..=config.generations {
        let score = round_robin_scores(&population, config, openings, generation);
        let order = ranking(&score.half_points);
        let best_points = score.points(order[0]);
        let stats = CoevolStats {
            generation,
            best_points,
            mean_points: score.total_points() / n as f64,
            games_played: score.games_played,
            best_score_rate: best_points / games_each,
            total_points: score.total_points(),
        };
        let record = CoevolGeneration { population: population.clone(), score, stats };
        observe(&record);
        generations.push(record);
        if generation == config.generations {
            break;
        }

        let half_points = &generations.last().expect("just pushed").score.half_points;
        let mut rng = stream(config.master_seed, generation as u64 + 1);
        let mut next: Vec<Chromosome> = order[..config.elitism_count].iter().map(|&i| population[i]).collect();
        while next.len() < n {
            let a = rank_select(half_points, &mut rng);
            let b = rank_select(half_points, &mut rng);
            let child = crossover_uniform(&population[a], &population[b], config.crossover_rate, &mut rng);
            next.push(mutate(&child, config.mutation_rate, &mut rng));
        }
        population = next;
    }

    let last = generations.last().expect("at least one generation");
    let best = last.population[ranking(&last.score.half_points)[0]];
    let history = generations.iter().map(|g| g.stats).collect();
    Ok(CoevolutionRun { best, history, generations })
}
