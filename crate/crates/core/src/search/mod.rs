//! Move selection: the 1-ply search used for supervised fitness and a
//! NegaScout search for game play.

mod negascout;
mod tt;

use std::time::Duration;

use thiserror::Error;

use crate::chess::{Move, Position};
use crate::eval::{features, EvalParams};

pub use negascout::{search_game_move, SearchOptions, FUTILITY_MARGIN, NULL_MOVE_REDUCTION};
pub use tt::{Bound, Entry, TranspositionTable, DEFAULT_TT_BITS};

/// Score of being mated at the root; mates found `n` plies away score
/// `MATE - n`. Far outside any reachable static evaluation.
pub const MATE: i32 = 10_000_000;
pub const INFINITY: i32 = MATE + 1;
/// Scores beyond this magnitude encode forced mates.
pub const MATE_BOUND: i32 = MATE - 1_000;

pub const MAX_PLY: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("cannot search a position without legal moves")]
    Terminal,
    #[error("search depth must be at least 1")]
    ZeroDepth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchLimits {
    /// Iterative deepening up to this many plies.
    Depth(u32),
    /// Iterative deepening until the time budget for this move runs out.
    MoveTime(Duration),
}

impl SearchLimits {
    pub fn depth(depth: u32) -> Result<SearchLimits, SearchError> {
        if depth == 0 {
            Err(SearchError::ZeroDepth)
        } else {
            Ok(SearchLimits::Depth(depth))
        }
    }

    pub fn movetime_ms(ms: u64) -> SearchLimits {
        SearchLimits::MoveTime(Duration::from_millis(ms))
    }

    /// Per-move budget for a fixed per-side total split over an assumed
    /// 40-move horizon.
    pub fn from_side_budget(total: Duration) -> SearchLimits {
        SearchLimits::MoveTime(total / 40)
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(self, SearchLimits::Depth(_))
    }
}

impl std::fmt::Display for SearchLimits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchLimits::Depth(d) => write!(f, "depth {d}"),
            SearchLimits::MoveTime(t) => write!(f, "movetime {}ms", t.as_millis()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best_move: Move,
    pub score: i32,
    pub nodes: u64,
    pub depth_reached: u32,
}

/// Picks the move maximizing the negated static evaluation of the resulting
/// position. Ties go to the earliest move in generation order.
pub fn search_1ply(pos: &Position, params: &EvalParams) -> Result<SearchResult, SearchError> {
    let weights = params.to_array();
    let mut best: Option<(Move, i32)> = None;
    let mut nodes = 0;
    for mv in pos.legal_moves() {
        nodes += 1;
        let score = -features(&pos.make(mv)).score(&weights);
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((mv, score));
        }
    }
    let (best_move, score) = best.ok_or(SearchError::Terminal)?;
    Ok(SearchResult { best_move, score, nodes, depth_reached: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::evaluate;

    fn pos(fen: &str) -> Position {
        Position::from_fen(fen).unwrap()
    }

    #[test]
    fn singleton_move() {
        // Checked by an undefended queen: Kxb2 is forced.
        let p = pos("k7/8/8/8/8/8/1q6/K7 w - - 0 1");
        let moves = p.legal_moves();
        assert_eq!(moves.len(), 1);
        for params in [EvalParams::default(), EvalParams::reference()] {
            assert_eq!(search_1ply(&p, &params).unwrap().best_move, moves[0]);
        }
    }

    #[test]
    fn captures_hanging_queen() {
        let p = pos("4k3/8/8/3q4/8/8/3R4/4K3 w - - 0 1");
        let params = EvalParams { rook_value: 500, queen_value: 900, ..Default::default() };
        let best = search_1ply(&p, &params).unwrap();
        assert_eq!(p.to_san(best.best_move), "Rxd5");
        // Brute-force argmax over the legal moves.
        let oracle = p
            .legal_moves()
            .into_iter()
            .map(|m| (m, -evaluate(&p.apply_move(m).unwrap(), &params)))
            .fold(None::<(Move, i32)>, |acc, (m, s)| match acc {
                Some((_, b)) if b >= s => acc,
                _ => Some((m, s)),
            })
            .unwrap();
        assert_eq!((best.best_move, best.score), oracle);
    }

    #[test]
    fn ties_keep_generation_order() {
        let p = Position::startpos();
        let best = search_1ply(&p, &EvalParams::default()).unwrap();
        assert_eq!(best.best_move, p.legal_moves()[0]);
        assert_eq!(best.score, 0);
    }

    #[test]
    fn terminal_is_an_error() {
        let mate = pos("rnb1kbnr/pppp1ppp/8/4p3/6Pq/5P2/PPPPP2P/RNBQKBNR w KQkq - 1 3");
        assert_eq!(search_1ply(&mate, &EvalParams::reference()), Err(SearchError::Terminal));
        assert_eq!(SearchLimits::depth(0), Err(SearchError::ZeroDepth));
    }
}
