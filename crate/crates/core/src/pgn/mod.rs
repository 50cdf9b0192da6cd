//! PGN game records and training-position sampling.

mod reader;
mod training;
mod writer;

pub use reader::{load_pgn, PgnError, PgnLoad};
pub use training::{
    prepare_sets, sample_training_positions, split, DataError, TrainingPosition, TrainingSet, DEFAULT_MIN_ELO, OPENING_PLIES,
};
pub use writer::write_pgn;

use crate::chess::{Color, Move, Position, START_FEN};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameResult {
    WhiteWins,
    BlackWins,
    Draw,
    /// `*`: unfinished or unknown.
    Unknown,
}

impl GameResult {
    pub fn parse(token: &str) -> Option<GameResult> {
        Some(match token {
            "1-0" => GameResult::WhiteWins,
            "0-1" => GameResult::BlackWins,
            "1/2-1/2" => GameResult::Draw,
            "*" => GameResult::Unknown,
            _ => return None,
        })
    }

    pub fn tag(self) -> &'static str {
        match self {
            GameResult::WhiteWins => "1-0",
            GameResult::BlackWins => "0-1",
            GameResult::Draw => "1/2-1/2",
            GameResult::Unknown => "*",
        }
    }

    pub fn winner(self) -> Option<Color> {
        match self {
            GameResult::WhiteWins => Some(Color::White),
            GameResult::BlackWins => Some(Color::Black),
            _ => None,
        }
    }

    pub fn is_decisive(self) -> bool {
        self.winner().is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GameRecord {
    pub event: String,
    pub white: String,
    pub black: String,
    pub white_elo: Option<u32>,
    pub black_elo: Option<u32>,
    pub result: GameResult,
    /// Starting position; the standard one unless a FEN tag was given.
    pub start: Position,
    /// Every position of the game paired with the move played from it.
    pub plies: Vec<(Position, Move)>,
}

impl GameRecord {
    /// Replays `moves` from `start`. The moves must be legal.
    pub fn from_moves(start: Position, moves: &[Move], result: GameResult) -> Result<GameRecord, crate::chess::IllegalMove> {
        let mut plies = Vec::with_capacity(moves.len());
        let mut pos = start;
        for &mv in moves {
            let next = pos.apply_move(mv)?;
            plies.push((pos, mv));
            pos = next;
        }
        Ok(GameRecord {
            event: "?".into(),
            white: "?".into(),
            black: "?".into(),
            white_elo: None,
            black_elo: None,
            result,
            start,
            plies,
        })
    }

    pub fn moves(&self) -> impl Iterator<Item = Move> + '_ {
        self.plies.iter().map(|&(_, m)| m)
    }

    /// Position after the last move.
    pub fn final_position(&self) -> Position {
        match self.plies.last() {
            Some((p, m)) => p.make(*m),
            None => self.start,
        }
    }

    fn starts_from_standard(&self) -> bool {
        self.start.to_fen() == START_FEN
    }
}
