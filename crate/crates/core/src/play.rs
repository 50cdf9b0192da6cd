//! Engine-vs-engine games from a fixed set of opening positions.

use thiserror::Error;

use crate::chess::{Color, Outcome, Position};
use crate::eval::EvalParams;
use crate::pgn::{GameRecord, GameResult};
use crate::search::{search_game_move, SearchLimits, SearchOptions, TranspositionTable};

/// Games reaching this many plies are scored as draws.
pub const MAX_GAME_PLIES: usize = 200;

const BUILTIN_OPENINGS: &str = include_str!("../data/openings.fen");

#[derive(Debug, Error, PartialEq)]
pub enum OpeningError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("opening set is empty")]
    Empty,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Opening {
    pub name: String,
    pub position: Position,
}

/// One FEN per line; a `#` line names the FEN that follows it.
#[derive(Clone, Debug, PartialEq)]
pub struct Openings {
    entries: Vec<Opening>,
}

impl Openings {
    pub fn builtin() -> Openings {
        Openings::parse(BUILTIN_OPENINGS).expect("bundled openings are valid")
    }

    pub fn parse(text: &str) -> Result<Openings, OpeningError> {
        let mut entries = Vec::new();
        let mut name = None;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                name = Some(comment.split_once(':').map_or(comment, |(n, _)| n).trim().to_string());
                continue;
            }
            let position =
                Position::from_fen(line).map_err(|e| OpeningError::Parse { line: i + 1, message: e.to_string() })?;
            if position.outcome(&[]).is_terminal() {
                return Err(OpeningError::Parse { line: i + 1, message: "position is already decided".into() });
            }
            let name = name.take().unwrap_or_else(|| format!("opening {}", entries.len() + 1));
            entries.push(Opening { name, position });
        }
        if entries.is_empty() {
            return Err(OpeningError::Empty);
        }
        Ok(Openings { entries })
    }

    pub fn single(position: Position) -> Openings {
        Openings { entries: vec![Opening { name: "custom".into(), position }] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Wraps around.
    pub fn get(&self, index: usize) -> &Opening {
        &self.entries[index % self.entries.len()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameSettings {
    pub limits: SearchLimits,
    pub options: SearchOptions,
    /// Each player gets a fresh table of `1 << tt_bits` entries per game.
    pub tt_bits: u32,
    pub max_plies: usize,
}

impl GameSettings {
    pub fn depth(depth: u32) -> GameSettings {
        GameSettings { limits: SearchLimits::Depth(depth), ..GameSettings::default() }
    }
}

impl Default for GameSettings {
    fn default() -> Self {
        GameSettings {
            limits: SearchLimits::Depth(2),
            options: SearchOptions::full(),
            tt_bits: 16,
            max_plies: MAX_GAME_PLIES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Rules(Outcome),
    PlyCap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlayedGame {
    pub record: GameRecord,
    pub termination: Termination,
}

impl PlayedGame {
    pub fn result(&self) -> GameResult {
        self.record.result
    }

    /// Half-points earned by `color`: 2 for a win, 1 for a draw.
    pub fn half_points(&self, color: Color) -> u32 {
        match self.record.result.winner() {
            Some(w) if w == color => 2,
            Some(_) => 0,
            None => 1,
        }
    }
}

/// Plays one game to a rules outcome or the ply cap. Fixed-depth games are
/// deterministic.
pub fn play_game(white: &EvalParams, black: &EvalParams, start: Position, settings: &GameSettings) -> PlayedGame {
    let mut tables = [TranspositionTable::new(settings.tt_bits), TranspositionTable::new(settings.tt_bits)];
    let mut history: Vec<Position> = Vec::new();
    let mut pos = start;
    let mut moves = Vec::new();
    let termination = loop {
        let outcome = pos.outcome(&history);
        if outcome.is_terminal() {
            break Termination::Rules(outcome);
        }
        if moves.len() >= settings.max_plies {
            break Termination::PlyCap;
        }
        let side = pos.side_to_move();
        let params = if side == Color::White { white } else { black };
        let result = search_game_move(&pos, params, settings.limits, settings.options, &mut tables[side.index()])
            .expect("position is not terminal");
        moves.push(result.best_move);
        history.push(pos);
        pos = pos.make(result.best_move);
    };
    let result = match termination {
        Termination::Rules(Outcome::Checkmate { winner: Color::White }) => GameResult::WhiteWins,
        Termination::Rules(Outcome::Checkmate { winner: Color::Black }) => GameResult::BlackWins,
        _ => GameResult::Draw,
    };
    let record = GameRecord::from_moves(start, &moves, result).expect("searched moves are legal");
    PlayedGame { record, termination }
}
