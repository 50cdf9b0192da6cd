//! Winner-to-move training positions sampled from game records.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::chess::{Move, Position};

use super::GameRecord;

pub const DEFAULT_MIN_ELO: u32 = 2600;
/// Plies at the start of each game that are never sampled.
pub const OPENING_PLIES: usize = 8;

#[derive(Debug, Error, PartialEq)]
pub enum DataError {
    #[error("training set is empty")]
    Empty,
    #[error("train fraction must lie strictly between 0 and 1, got {0}")]
    Fraction(f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrainingPosition {
    position: Position,
    played_move: Move,
}

impl TrainingPosition {
    /// Returns `None` if `played_move` is not legal in `position`.
    pub fn new(position: Position, played_move: Move) -> Option<TrainingPosition> {
        position.legal_moves().contains(&played_move).then_some(TrainingPosition { position, played_move })
    }

    pub fn position(&self) -> &Position {
        &self.position
    }

    pub fn played_move(&self) -> Move {
        self.played_move
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrainingSet {
    pub positions: Vec<TrainingPosition>,
    /// Free-form description of where the set came from.
    pub provenance: String,
}

impl TrainingSet {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// At most `n` entries chosen by a seeded shuffle; the whole set, in
    /// order, when it is already small enough.
    pub fn subsample(&self, n: usize, seed: u64) -> TrainingSet {
        if self.len() <= n {
            return self.clone();
        }
        let mut positions = self.positions.clone();
        positions.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        positions.truncate(n);
        TrainingSet { positions, provenance: format!("{} subsample={n} seed={seed}", self.provenance) }
    }

    /// One `<FEN>;<UCI>` line per entry, after a `#` provenance line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.provenance.is_empty() {
            out.push_str("# ");
            out.push_str(&self.provenance.replace('\n', " "));
            out.push('\n');
        }
        for tp in &self.positions {
            out.push_str(&tp.position.to_fen());
            out.push(';');
            out.push_str(&tp.played_move.uci());
            out.push('\n');
        }
        out
    }

    /// Parses [`TrainingSet::to_text`] output. Blank lines are skipped and a
    /// leading `#` line becomes the provenance.
    pub fn parse(text: &str) -> Result<TrainingSet, DataError> {
        let mut set = TrainingSet::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if set.provenance.is_empty() {
                    set.provenance = comment.trim().to_string();
                }
                continue;
            }
            let err = |message: String| DataError::Parse { line: i + 1, message };
            let (fen, uci) = line.split_once(';').ok_or_else(|| err("expected '<FEN>;<move>'".into()))?;
            let position = Position::from_fen(fen).map_err(|e| err(e.to_string()))?;
            let mv = position.parse_uci(uci).ok_or_else(|| err(format!("'{}' is not a legal move", uci.trim())))?;
            set.positions.push(TrainingPosition { position, played_move: mv });
        }
        Ok(set)
    }
}

/// Keeps decisive games where both players are rated at least `min_elo`
/// and draws one winner-to-move ply from each, skipping the opening plies.
pub fn sample_training_positions(games: &[GameRecord], min_elo: u32, seed: u64) -> TrainingSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions = Vec::new();
    for game in games {
        let rated = matches!((game.white_elo, game.black_elo), (Some(w), Some(b)) if w >= min_elo && b >= min_elo);
        let Some(winner) = game.result.winner() else { continue };
        if !rated {
            continue;
        }
        let eligible: Vec<&(Position, Move)> =
            game.plies.iter().skip(OPENING_PLIES).filter(|(p, _)| p.side_to_move() == winner).collect();
        if eligible.is_empty() {
            continue;
        }
        let &(position, played_move) = eligible[rng.gen_range(0..eligible.len())];
        positions.push(TrainingPosition { position, played_move });
    }
    TrainingSet { positions, provenance: format!("min_elo={min_elo} seed={seed}") }
}

/// Seeded shuffle, then the first `floor(n * train_fraction)` entries
/// become the training set and the rest the test set.
pub fn split(set: &TrainingSet, train_fraction: f64, seed: u64) -> Result<(TrainingSet, TrainingSet), DataError> {
    if set.is_empty() {
        return Err(DataError::Empty);
    }
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DataError::Fraction(train_fraction));
    }
    let mut shuffled = set.positions.clone();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_train = (set.len() as f64 * train_fraction).floor() as usize;
    let test = shuffled.split_off(n_train);
    let part = |positions, name: &str| TrainingSet {
        positions,
        provenance: format!("{} {name} split={train_fraction} seed={seed}", set.provenance),
    };
    Ok((part(shuffled, "train"), part(test, "test")))
}

/// Sampling, subsampling to `positions` entries, then splitting, all from
/// one seed.
pub fn prepare_sets(
    games: &[GameRecord],
    min_elo: u32,
    positions: usize,
    train_fraction: f64,
    seed: u64,
) -> Result<(TrainingSet, TrainingSet), DataError> {
    let sampled = sample_training_positions(games, min_elo, seed).subsample(positions, seed);
    split(&sampled, train_fraction, seed)
}
