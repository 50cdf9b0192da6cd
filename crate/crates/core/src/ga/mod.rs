//! Supervised genetic algorithm: roulette selection, uniform crossover,
//! per-bit mutation and elitism over Gray-coded chromosomes.

mod fitness;

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::eval::Chromosome;
use crate::pgn::TrainingSet;

pub use fitness::{fitness_supervised, match_count, FeatureCache};

#[derive(Debug, Error, PartialEq)]
pub enum GaError {
    #[error("population size must be at least 2, got {0}")]
    Population(usize),
    #[error("{name} must lie in [0, 1], got {value}")]
    Rate { name: &'static str, value: f64 },
    #[error("elitism count {elitism} must be below the population size {population}")]
    Elitism { elitism: usize, population: usize },
    #[error("training set is empty")]
    EmptyTraining,
    #[error("expected {expected} seed chromosomes, got {got}")]
    SeedCount { expected: usize, got: usize },
    #[error("games per pair must be even and positive, got {0}")]
    GamesPerPair(u32),
}

pub(crate) fn check_common(population: usize, crossover: f64, mutation: f64, elitism: usize) -> Result<(), GaError> {
    if population < 2 {
        return Err(GaError::Population(population));
    }
    for (name, value) in [("crossover rate", crossover), ("mutation rate", mutation)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(GaError::Rate { name, value });
        }
    }
    if elitism >= population {
        return Err(GaError::Elitism { elitism, population });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Breeding rounds after the random initial generation.
    pub generations: usize,
    pub elitism_count: usize,
    pub master_seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 100,
            crossover_rate: 0.75,
            mutation_rate: 0.005,
            generations: 200,
            elitism_count: 1,
            master_seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), GaError> {
        check_common(self.population_size, self.crossover_rate, self.mutation_rate, self.elitism_count)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Organism {
    pub chromosome: Chromosome,
    /// Number of training positions matched; `None` until evaluated.
    pub matches: Option<u32>,
}

impl Organism {
    pub fn new(chromosome: Chromosome) -> Organism {
        Organism { chromosome, matches: None }
    }

    /// Squared match count.
    pub fn fitness(&self) -> Option<u64> {
        self.matches.map(|k| k as u64 * k as u64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenerationStats {
    pub generation: usize,
    pub best_fitness: u64,
    pub mean_fitness: f64,
    pub best_match_count: u32,
    pub best_match_rate: f64,
}

pub const STATS_HEADER: &str = "generation,best_fitness,mean_fitness,best_match_count,best_match_rate";

pub fn stats_csv(history: &[GenerationStats]) -> String {
    let mut out = format!("{STATS_HEADER}\n");
    for s in history {
        let _ = writeln!(
            out,
            "{},{},{:.3},{},{:.6}",
            s.generation, s.best_fitness, s.mean_fitness, s.best_match_count, s.best_match_rate
        );
    }
    out
}

/// Roulette-wheel selection over integer fitness; uniform when every
/// fitness is zero.
pub fn select_parent<R: Rng + ?Sized>(fitness: &[u64], rng: &mut R) -> usize {
    assert!(!fitness.is_empty());
    let total: u64 = fitness.iter().sum();
    if total == 0 {
        return rng.gen_range(0..fitness.len());
    }
    let mut ticket = rng.gen_range(0..total);
    for (i, &f) in fitness.iter().enumerate() {
        if ticket < f {
            return i;
        }
        ticket -= f;
    }
    unreachable!("ticket below total")
}

/// With probability `rate`, each bit comes from `a` or `b` with equal
/// odds; otherwise the child is a copy of `a`.
pub fn crossover_uniform<R: Rng + ?Sized>(a: &Chromosome, b: &Chromosome, rate: f64, rng: &mut R) -> Chromosome {
    if !rng.gen_bool(rate) {
        return *a;
    }
    let mask = Chromosome::random(rng);
    a.blend(b, &mask)
}

/// Flips each bit independently with probability `rate`.
pub fn mutate<R: Rng + ?Sized>(c: &Chromosome, rate: f64, rng: &mut R) -> Chromosome {
    let mut out = *c;
    for i in 0..Chromosome::LEN {
        if rng.gen_bool(rate) {
            out.flip(i);
        }
    }
    out
}

/// Indices sorted by descending score; ties keep the lower index first.
pub(crate) fn ranking<T: PartialOrd + Copy>(scores: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).expect("scores are comparable"));
    order
}

/// The per-generation breeding stream. Stream 0 seeds the initial
/// population; generation `g` breeds from stream `g + 1`.
pub(crate) fn stream(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

pub(crate) fn random_population(master_seed: u64, n: usize) -> Vec<Chromosome> {
    let mut rng = stream(master_seed, 0);
    (0..n).map(|_| Chromosome::random(&mut rng)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionRun {
    pub best: Organism,
    pub history: Vec<GenerationStats>,
    pub final_population: Vec<Organism>,
}

pub fn evolve(config: &GaConfig, training: &TrainingSet) -> Result<EvolutionRun, GaError> {
    evolve_observed(config, training, |_| {})
}

/// Like [`evolve`], calling `observe` after each generation is scored.
/// Fitness runs on the ambient rayon pool; results do not depend on its size.
pub fn evolve_observed(
    config: &GaConfig,
    training: &TrainingSet,
    mut observe: impl FnMut(&GenerationStats),
) -> Result<EvolutionRun, GaError> {
    config.validate()?;
    if training.is_empty() {
        return Err(GaError::EmptyTraining);
    }
    let cache = FeatureCache::new(training);
    let n = config.population_size;

    let mut population: Vec<Organism> =
        random_population(config.master_seed, n).into_iter().map(Organism::new).collect();
    let mut history = Vec::with_capacity(config.generations + 1);
    let mut best: Option<Organism> = None;

    for generation in 0..=config.generations {
        let scored: Vec<u32> = population
            .par_iter()
            .map(|o| o.matches.unwrap_or_else(|| cache.match_count(&o.chromosome.decode())))
            .collect();
        for (o, k) in population.iter_mut().zip(scored) {
            o.matches = Some(k);
        }

        let fitness: Vec<u64> = population.iter().map(|o| o.fitness().expect("scored")).collect();
        let order = ranking(&fitness);
        let leader = population[order[0]];
        let stats = GenerationStats {
            generation,
            best_fitness: fitness[order[0]],
            mean_fitness: fitness.iter().sum::<u64>() as f64 / n as f64,
            best_match_count: leader.matches.expect("scored"),
            best_match_rate: leader.matches.expect("scored") as f64 / training.len() as f64,
        };
        observe(&stats);
        history.push(stats);
        if best.is_none_or(|b| leader.matches > b.matches) {
            best = Some(leader);
        }
        if generation == config.generations {
            break;
        }

        let mut rng = stream(config.master_seed, generation as u64 + 1);
        let mut next: Vec<Organism> = order[..config.elitism_count].iter().map(|&i| population[i]).collect();
        while next.len() < n {
            let a = select_parent(&fitness, &mut rng);
            let b = select_parent(&fitness, &mut rng);
            let child = crossover_uniform(&population[a].chromosome, &population[b].chromosome, config.crossover_rate, &mut rng);
            next.push(Organism::new(mutate(&child, config.mutation_rate, &mut rng)));
        }
        population = next;
    }

    Ok(EvolutionRun { best: best.expect("at least one generation"), history, final_population: population })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_validation() {
        let c = GaConfig::default();
        assert_eq!((c.population_size, c.generations, c.elitism_count), (100, 200, 1));
        assert_eq!((c.crossover_rate, c.mutation_rate), (0.75, 0.005));
        assert!(c.validate().is_ok());
        assert_eq!(GaConfig { population_size: 1, ..c }.validate(), Err(GaError::Population(1)));
        assert!(GaConfig { mutation_rate: 1.5, ..c }.validate().is_err());
        assert!(GaConfig { elitism_count: 100, ..c }.validate().is_err());
    }

    #[test]
    fn zero_mass_is_never_selected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!((0..1000).all(|_| select_parent(&[1, 0], &mut rng) == 0));
    }

    #[test]
    fn selection_is_proportional() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let draws = 100_000;
        let first = (0..draws).filter(|_| select_parent(&[3, 1], &mut rng) == 0).count();
        let p = first as f64 / draws as f64;
        assert!((p - 0.75).abs() < 0.02, "{p}");
    }

    #[test]
    fn equal_fitness_is_uniform() {
        // Chi-square with 4 degrees of freedom; critical value at 0.01 is 13.28.
        for fitness in [[0u64; 5], [7u64; 5]] {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            let mut counts = [0f64; 5];
            let draws = 100_000;
            for _ in 0..draws {
                counts[select_parent(&fitness, &mut rng)] += 1.0;
            }
            let expected = draws as f64 / 5.0;
            let chi2: f64 = counts.iter().map(|c| (c - expected).powi(2) / expected).sum();
            assert!(chi2 < 13.28, "{chi2}");
        }
    }

    #[test]
    fn crossover_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Chromosome::random(&mut rng);
        let b = Chromosome::random(&mut rng);
        for _ in 0..100 {
            assert_eq!(crossover_uniform(&a, &a, 1.0, &mut rng), a);
            assert_eq!(crossover_uniform(&a, &b, 0.0, &mut rng), a);
        }
    }

    #[test]
    fn crossover_bits_are_fair() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Chromosome::zero();
        let b = Chromosome::ones();
        let trials = 10_000;
        let mut from_b = [0u32; 224];
        for _ in 0..trials {
            let child = crossover_uniform(&a, &b, 1.0, &mut rng);
            for (i, n) in from_b.iter_mut().enumerate() {
                *n += child.bit(i) as u32;
            }
        }
        for n in from_b {
            let f = n as f64 / trials as f64;
            assert!((0.47..=0.53).contains(&f), "{f}");
        }
    }

    #[test]
    fn mutation_rates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = Chromosome::random(&mut rng);
        assert_eq!(mutate(&c, 0.0, &mut rng), c);
        assert_eq!(mutate(&c, 1.0, &mut rng).hamming(&c), 224);
        let trials = 10_000;
        let flips: u32 = (0..trials).map(|_| mutate(&c, 0.005, &mut rng).hamming(&c)).sum();
        let mean = flips as f64 / trials as f64;
        assert!((0.9..=1.35).contains(&mean), "{mean}");
    }

    #[test]
    fn ranking_is_stable() {
        assert_eq!(ranking(&[1u64, 3, 3, 0]), vec![1, 2, 0, 3]);
    }

    #[test]
    fn csv_header() {
        let s = GenerationStats { generation: 0, best_fitness: 4, mean_fitness: 1.5, best_match_count: 2, best_match_rate: 0.2 };
        assert_eq!(stats_csv(&[s]), format!("{STATS_HEADER}\n0,4,1.500,2,0.200000\n"));
    }
}
