//! Synthetic game corpus: decisive engine games between randomly perturbed
//! copies of the reference evaluation, written with rating tags so the
//! usual filters apply.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::chess::{Color, Outcome};
use crate::eval::{EvalParams, SCHEMA};
use crate::ga::stream;
use crate::pgn::{GameRecord, GameResult};
use crate::play::Openings;
use crate::search::{search_game_move, SearchLimits, SearchOptions, TranspositionTable};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusConfig {
    /// Number of decisive games to produce.
    pub games: usize,
    pub depth: u32,
    pub seed: u64,
    /// Uniformly random moves played from the opening before searching.
    pub random_plies: usize,
    /// Each parameter is scaled by a factor drawn from `1 ± perturbation`.
    pub perturbation: f64,
    /// A side resigns after this many consecutive own moves scored at or
    /// below `-resign_score`.
    pub resign_moves: usize,
    pub resign_score: i32,
    pub max_plies: usize,
    pub elo_range: (u32, u32),
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            games: 1200,
            depth: 4,
            seed: 2600,
            random_plies: 2,
            perturbation: 0.3,
            resign_moves: 3,
            resign_score: 600,
            max_plies: 240,
            elo_range: (2600, 2800),
        }
    }
}

fn perturbed<R: Rng>(base: &EvalParams, amount: f64, rng: &mut R) -> EvalParams {
    let values: Vec<i32> = base
        .to_array()
        .iter()
        .zip(SCHEMA)
        .map(|(&v, field)| {
            let scaled = (v as f64 * rng.gen_range(1.0 - amount..=1.0 + amount)).round() as i32;
            scaled.clamp(0, field.max_value())
        })
        .collect();
    EvalParams::from_slice(&values).expect("clamped to field ranges")
}

/// Plays attempt `index`; `None` if it ended without a winner.
fn attempt(config: &CorpusConfig, openings: &Openings, index: usize) -> Option<GameRecord> {
    let mut rng = stream(config.seed, index as u64);
    let reference = EvalParams::reference();
    let players = [
        perturbed(&reference, config.perturbation, &mut rng),
        perturbed(&reference, config.perturbation, &mut rng),
    ];
    let start = openings.get(index).position;
    let mut tables = [TranspositionTable::new(16), TranspositionTable::new(16)];
    let mut history = Vec::new();
    let mut losing_streak = [0usize; 2];
    let mut pos = start;
    let mut moves = Vec::new();
    let result = loop {
        let outcome = pos.outcome(&history);
        if outcome.is_terminal() {
            break match outcome {
                Outcome::Checkmate { winner: Color::White } => GameResult::WhiteWins,
                Outcome::Checkmate { winner: Color::Black } => GameResult::BlackWins,
                _ => GameResult::Draw,
            };
        }
        if moves.len() >= config.max_plies {
            break GameResult::Draw;
        }
        let side = pos.side_to_move().index();
        let mv = if moves.len() < config.random_plies {
            *pos.legal_moves().choose(&mut rng).expect("not terminal")
        } else {
            let r = search_game_move(
                &pos,
                &players[side],
                SearchLimits::Depth(config.depth),
                SearchOptions::full(),
                &mut tables[side],
            )
            .expect("not terminal");
            if r.score <= -config.resign_score {
                losing_streak[side] += 1;
                if losing_streak[side] >= config.resign_moves {
                    break if side == 0 { GameResult::BlackWins } else { GameResult::WhiteWins };
                }
            } else {
                losing_streak[side] = 0;
            }
            r.best_move
        };
        moves.push(mv);
        history.push(pos);
        pos = pos.make(mv);
    };
    if !result.is_decisive() {
        return None;
    }
    let mut record = GameRecord::from_moves(start, &moves, result).expect("searched moves are legal");
    let (lo, hi) = config.elo_range;
    record.event = format!("synthetic corpus game {}", index + 1);
    record.white = format!("engine {}a", index + 1);
    record.black = format!("engine {}b", index + 1);
    record.white_elo = Some(rng.gen_range(lo..=hi));
    record.black_elo = Some(rng.gen_range(lo..=hi));
    Some(record)
}

/// Plays attempts in order until `config.games` decisive games exist.
/// Output depends only on the configuration, not on the thread count.
pub fn generate_corpus(config: &CorpusConfig, openings: &Openings, mut progress: impl FnMut(usize, usize)) -> Vec<GameRecord> {
    const BATCH: usize = 32;
    let mut games = Vec::with_capacity(config.games);
    let mut next = 0;
    while games.len() < config.games {
        let batch: Vec<Option<GameRecord>> =
            (next..next + BATCH).into_par_iter().map(|i| attempt(config, openings, i)).collect();
        next += BATCH;
        games.extend(batch.into_iter().flatten().take(config.games - games.len()));
        progress(games.len(), next);
    }
    games
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_decisive_rated_and_reproducible() {
        let config = CorpusConfig { games: 3, depth: 1, ..CorpusConfig::default() };
        let openings = Openings::builtin();
        let a = generate_corpus(&config, &openings, |_, _| {});
        assert_eq!(a.len(), 3);
        for g in &a {
            assert!(g.result.is_decisive());
            assert!(g.white_elo.unwrap() >= 2600 && g.black_elo.unwrap() >= 2600);
        }
        assert_eq!(a, generate_corpus(&config, &openings, |_, _| {}));
    }

    #[test]
    fn perturbation_stays_in_range() {
        let mut rng = stream(1, 1);
        for _ in 0..100 {
            let p = perturbed(&EvalParams::reference(), 0.9, &mut rng);
            assert!(EvalParams::from_slice(&p.to_array()).is_ok());
        }
    }
}
