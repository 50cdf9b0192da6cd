//! Supervised fitness: the squared number of training positions where the
//! 1-ply choice equals the move actually played.

use crate::chess::Position;
use crate::eval::{features, Chromosome, EvalParams, PARAM_COUNT, PAWN_VALUE};
use crate::pgn::TrainingSet;
use crate::search::search_1ply;

/// Reference implementation straight through `search_1ply`.
pub fn fitness_supervised(chromosome: &Chromosome, training: &TrainingSet) -> u64 {
    let k = match_count(&chromosome.decode(), training);
    k as u64 * k as u64
}

pub fn match_count(params: &EvalParams, training: &TrainingSet) -> u32 {
    training
        .positions
        .iter()
        .filter(|tp| search_1ply(tp.position(), params).is_ok_and(|r| r.best_move == tp.played_move()))
        .count() as u32
}

const ROW: usize = PARAM_COUNT + 1;

/// The evaluation is linear in the parameters, so each child position of
/// each training position is reduced once to its feature row. Scoring an
/// organism is then a sequence of dot products that reproduces
/// `search_1ply` exactly, including generation-order tie-breaking.
pub struct FeatureCache {
    /// `[pawn_balance, terms...]` per child, grouped by training position.
    rows: Vec<i32>,
    /// Child range of each training position, and the index of the played
    /// move within it.
    spans: Vec<(usize, usize, usize)>,
}

impl FeatureCache {
    pub fn new(training: &TrainingSet) -> FeatureCache {
        let mut rows = Vec::new();
        let mut spans = Vec::with_capacity(training.len());
        for tp in &training.positions {
            let start = rows.len() / ROW;
            let moves = tp.position().legal_moves();
            let played = moves.iter().position(|&m| m == tp.played_move()).expect("training moves are legal");
            for &mv in &moves {
                push_row(&mut rows, &tp.position().make(mv));
            }
            spans.push((start, moves.len(), played));
        }
        FeatureCache { rows, spans }
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn match_count(&self, params: &EvalParams) -> u32 {
        let w = params.to_array();
        let mut matches = 0;
        for &(start, n, played) in &self.spans {
            let mut best = 0;
            let mut best_score = i32::MIN;
            for i in 0..n {
                let row = &self.rows[(start + i) * ROW..(start + i + 1) * ROW];
                let mut child = row[0] * PAWN_VALUE;
                for k in 0..PARAM_COUNT {
                    child += row[k + 1] * w[k];
                }
                // Negated child score, strict comparison: first maximum wins.
                if -child > best_score {
                    best_score = -child;
                    best = i;
                }
            }
            matches += (best == played) as u32;
        }
        matches
    }

    pub fn fitness(&self, chromosome: &Chromosome) -> u64 {
        let k = self.match_count(&chromosome.decode()) as u64;
        k * k
    }
}

fn push_row(rows: &mut Vec<i32>, child: &Position) {
    let f = features(child);
    rows.push(f.pawn_balance);
    rows.extend_from_slice(&f.terms);
}
