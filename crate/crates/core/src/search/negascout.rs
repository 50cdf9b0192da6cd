//! NegaScout / principal variation search with a transposition table,
//! null-move pruning, killer and history move ordering, and frontier
//! futility pruning.

use std::time::Instant;

use crate::chess::{Move, MoveList, PieceKind, Position};
use crate::eval::{features, EvalParams, PARAM_COUNT};

use super::tt::{Bound, TranspositionTable};
use super::{SearchError, SearchLimits, SearchResult, INFINITY, MATE, MATE_BOUND, MAX_PLY};

pub const NULL_MOVE_REDUCTION: u32 = 2;
pub const FUTILITY_MARGIN: i32 = 300;
const TIME_CHECK_INTERVAL: u64 = 4096;

/// Which forward-pruning heuristics are active.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub null_move: bool,
    pub futility: bool,
    /// Allow cutoffs from table entries searched deeper than required.
    pub deep_tt_cutoffs: bool,
}

impl SearchOptions {
    pub const fn full() -> SearchOptions {
        SearchOptions { null_move: true, futility: true, deep_tt_cutoffs: true }
    }

    /// No forward pruning and only same-depth table cutoffs: the root score
    /// equals plain negamax to the same depth.
    pub const fn pruning_free() -> SearchOptions {
        SearchOptions { null_move: false, futility: false, deep_tt_cutoffs: false }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions::full()
    }
}

struct Searcher<'a> {
    weights: [i32; PARAM_COUNT],
    options: SearchOptions,
    tt: &'a mut TranspositionTable,
    killers: [[Option<Move>; 2]; MAX_PLY + 1],
    history: Box<[[[i32; 64]; 64]; 2]>,
    nodes: u64,
    deadline: Option<Instant>,
    can_abort: bool,
    aborted: bool,
}

#[inline]
fn to_tt(score: i32, ply: usize) -> i32 {
    if score > MATE_BOUND {
        score + ply as i32
    } else if score < -MATE_BOUND {
        score - ply as i32
    } else {
        score
    }
}

#[inline]
fn from_tt(score: i32, ply: usize) -> i32 {
    if score > MATE_BOUND {
        score - ply as i32
    } else if score < -MATE_BOUND {
        score + ply as i32
    } else {
        score
    }
}

fn piece_value(kind: PieceKind) -> i32 {
    match kind {
        PieceKind::Pawn => 1,
        PieceKind::Knight | PieceKind::Bishop => 3,
        PieceKind::Rook => 5,
        PieceKind::Queen => 9,
        PieceKind::King => 20,
    }
}

impl Searcher<'_> {
    #[inline]
    fn static_eval(&self, pos: &Position) -> i32 {
        features(pos).score(&self.weights)
    }

    fn out_of_time(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if self.can_abort && self.nodes.is_multiple_of(TIME_CHECK_INTERVAL) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.aborted = true;
                }
            }
        }
        self.aborted
    }

    /// Orders interior-node moves: table move, captures by MVV-LVA,
    /// promotions, killers, then history. Stable, so ties keep generation order.
    fn order(&self, pos: &Position, moves: &mut MoveList, tt_move: Option<Move>, ply: usize) {
        let side = pos.side_to_move().index();
        let killers = self.killers[ply];
        let key = |m: &Move| -> i64 {
            if Some(*m) == tt_move {
                return i64::MAX;
            }
            if m.is_capture() {
                let victim = pos.piece_at(m.to).map_or(1, |p| piece_value(p.kind));
                let attacker = pos.piece_at(m.from).map_or(1, |p| piece_value(p.kind));
                return 1 << 40 | (victim * 64 - attacker) as i64;
            }
            if m.promotion == Some(PieceKind::Queen) {
                return 1 << 39;
            }
            if Some(*m) == killers[0] {
                return 1 << 38;
            }
            if Some(*m) == killers[1] {
                return (1 << 38) - 1;
            }
            self.history[side][m.from.index()][m.to.index()] as i64
        };
        moves.sort_by_key(|m| std::cmp::Reverse(key(m)));
    }

    fn record_cutoff(&mut self, pos: &Position, mv: Move, depth: u32, ply: usize) {
        if mv.is_tactical() {
            return;
        }
        let k = &mut self.killers[ply];
        if k[0] != Some(mv) {
            k[1] = k[0];
            k[0] = Some(mv);
        }
        let h = &mut self.history[pos.side_to_move().index()][mv.from.index()][mv.to.index()];
        *h = (*h + (depth * depth) as i32).min(1 << 30);
    }

    fn negamax(&mut self, pos: &Position, depth: u32, mut alpha: i32, beta: i32, ply: usize, allow_null: bool) -> i32 {
        self.nodes += 1;
        if self.out_of_time() {
            return 0;
        }
        if depth == 0 || ply >= MAX_PLY {
            return self.static_eval(pos);
        }

        let mut moves = pos.legal_moves();
        let in_check = pos.in_check();
        if moves.is_empty() {
            return if in_check { -(MATE - ply as i32) } else { 0 };
        }

        let key = pos.key();
        let mut tt_move = None;
        if let Some(entry) = self.tt.probe(key) {
            tt_move = entry.best_move;
            let usable = if self.options.deep_tt_cutoffs {
                entry.depth as u32 >= depth
            } else {
                entry.depth as u32 == depth
            };
            if usable {
                let score = from_tt(entry.score, ply);
                match entry.bound {
                    Bound::Exact => return score,
                    Bound::Lower if score >= beta => return score,
                    Bound::Upper if score <= alpha => return score,
                    _ => {}
                }
            }
        }

        if self.options.null_move
            && allow_null
            && depth >= 2
            && !in_check
            && beta.abs() < MATE_BOUND
            && pos.has_non_pawn_material(pos.side_to_move())
        {
            let reduced = depth.saturating_sub(1 + NULL_MOVE_REDUCTION);
            let score = -self.negamax(&pos.make_null(), reduced, -beta, -beta + 1, ply + 1, false);
            if self.aborted {
                return 0;
            }
            if score >= beta {
                return beta;
            }
        }

        let futile = self.options.futility
            && depth == 1
            && !in_check
            && alpha.abs() < MATE_BOUND
            && self.static_eval(pos) + FUTILITY_MARGIN <= alpha;

        self.order(pos, &mut moves, tt_move, ply);

        let alpha_orig = alpha;
        let mut best_score = -INFINITY;
        let mut best_move = None;
        let mut searched = 0;
        for &mv in &moves {
            if futile && !mv.is_tactical() {
                continue;
            }
            let child = pos.make(mv);
            let score = if searched == 0 {
                -self.negamax(&child, depth - 1, -beta, -alpha, ply + 1, true)
            } else {
                let s = -self.negamax(&child, depth - 1, -alpha - 1, -alpha, ply + 1, true);
                if s > alpha && s < beta {
                    -self.negamax(&child, depth - 1, -beta, -alpha, ply + 1, true)
                } else {
                    s
                }
            };
            searched += 1;
            if self.aborted {
                return 0;
            }
            if score > best_score {
                best_score = score;
                best_move = Some(mv);
            }
            if score > alpha {
                alpha = score;
            }
            if alpha >= beta {
                self.record_cutoff(pos, mv, depth, ply);
                break;
            }
        }

        if searched == 0 {
            // Every quiet move was futile; the static score is an upper bound.
            return self.static_eval(pos);
        }

        let bound = if best_score <= alpha_orig {
            Bound::Upper
        } else if best_score >= beta {
            Bound::Lower
        } else {
            Bound::Exact
        };
        self.tt.store(key, depth as u8, to_tt(best_score, ply), bound, best_move);
        best_score
    }

    /// Root search in plain generation order so that the first maximal move
    /// wins ties. Returns `None` if the iteration was aborted.
    fn root(&mut self, pos: &Position, moves: &MoveList, depth: u32) -> Option<(Move, i32)> {
        self.nodes += 1;
        let mut alpha = -INFINITY;
        let beta = INFINITY;
        let mut best: Option<(Move, i32)> = None;
        for (i, &mv) in moves.iter().enumerate() {
            let child = pos.make(mv);
            let score = if i == 0 {
                -self.negamax(&child, depth - 1, -beta, -alpha, 1, true)
            } else {
                let s = -self.negamax(&child, depth - 1, -alpha - 1, -alpha, 1, true);
                if s > alpha {
                    -self.negamax(&child, depth - 1, -beta, -alpha, 1, true)
                } else {
                    s
                }
            };
            if self.aborted {
                return None;
            }
            if score > alpha {
                alpha = score;
                best = Some((mv, score));
            }
        }
        let (mv, score) = best?;
        self.tt.store(pos.key(), depth as u8, score, Bound::Exact, Some(mv));
        Some((mv, score))
    }
}

/// Iterative-deepening NegaScout. In fixed-depth mode the result is a pure
/// function of the arguments and the table contents; in move-time mode the
/// best move of the last completed iteration is returned.
pub fn search_game_move(
    pos: &Position,
    params: &EvalParams,
    limits: SearchLimits,
    options: SearchOptions,
    tt: &mut TranspositionTable,
) -> Result<SearchResult, SearchError> {
    let moves = pos.legal_moves();
    if moves.is_empty() {
        return Err(SearchError::Terminal);
    }
    let (max_depth, deadline) = match limits {
        SearchLimits::Depth(0) => return Err(SearchError::ZeroDepth),
        SearchLimits::Depth(d) => (d.min(MAX_PLY as u32), None),
        SearchLimits::MoveTime(t) => (MAX_PLY as u32, Some(Instant::now() + t)),
    };
    tt.new_search();
    let mut searcher = Searcher {
        weights: params.to_array(),
        options,
        tt,
        killers: [[None; 2]; MAX_PLY + 1],
        history: Box::new([[[0; 64]; 64]; 2]),
        nodes: 0,
        deadline,
        can_abort: false,
        aborted: false,
    };

    let mut result = None;
    for depth in 1..=max_depth {
        // The first iteration always completes so a move is available.
        searcher.can_abort = depth > 1;
        match searcher.root(pos, &moves, depth) {
            Some((best_move, score)) => {
                result = Some(SearchResult { best_move, score, nodes: searcher.nodes, depth_reached: depth });
                if score.abs() > MATE_BOUND && (MATE - score.abs()) as u32 <= depth {
                    break;
                }
            }
            None => break,
        }
        if let Some(deadline) = deadline {
            if Instant::now() >= deadline {
                break;
            }
        }
    }
    let mut result = result.expect("depth-1 iteration always completes");
    result.nodes = searcher.nodes;
    Ok(result)
}
