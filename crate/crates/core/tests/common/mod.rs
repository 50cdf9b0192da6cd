#![allow(dead_code)]

use chessevo::chess::Position;
use chessevo::eval::{evaluate, EvalParams};
use chessevo::search::MATE;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random playout from the start position; `None` if it hits a terminal
/// position first.
pub fn playout(seed: u64, plies: usize) -> Option<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos = Position::startpos();
    for _ in 0..plies {
        let mv = *pos.legal_moves().choose(&mut rng)?;
        pos = pos.apply_move(mv).unwrap();
    }
    (!pos.legal_moves().is_empty()).then_some(pos)
}

/// `count` non-terminal positions reached after 10..40 random plies.
pub fn random_positions(seed: u64, count: usize) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let plies = rng.gen_range(10..40);
        if let Some(p) = playout(rng.gen(), plies) {
            out.push(p);
        }
    }
    out
}

/// Plain negamax without any pruning or caching.
pub fn minimax(pos: &Position, depth: u32, ply: i32, params: &EvalParams) -> i32 {
    if depth == 0 {
        return evaluate(pos, params);
    }
    let moves = pos.legal_moves();
    if moves.is_empty() {
        return if pos.in_check() { -(MATE - ply) } else { 0 };
    }
    moves
        .iter()
        .map(|&m| -minimax(&pos.apply_move(m).unwrap(), depth - 1, ply + 1, params))
        .max()
        .unwrap()
}

/// Mirrors a FEN by reversing ranks and swapping letter case, side to
/// move, castling and en-passant rank. Written against the text format
/// only, independent of the engine's own flip.
pub fn mirror_fen(fen: &str) -> String {
    let f: Vec<&str> = fen.split(' ').collect();
    let swap_case = |s: &str| -> String {
        s.chars()
            .map(|c| if c.is_ascii_uppercase() { c.to_ascii_lowercase() } else { c.to_ascii_uppercase() })
            .collect()
    };
    let board = f[0].split('/').rev().map(swap_case).collect::<Vec<_>>().join("/");
    let side = if f[1] == "w" { "b" } else { "w" };
    let castling = if f[2] == "-" {
        "-".to_string()
    } else {
        let swapped = swap_case(f[2]);
        "KQkq".chars().filter(|c| swapped.contains(*c)).collect()
    };
    let ep = match f[3] {
        "-" => "-".to_string(),
        sq => {
            let file = &sq[..1];
            let rank = if &sq[1..] == "3" { "6" } else { "3" };
            format!("{file}{rank}")
        }
    };
    format!("{board} {side} {castling} {ep} {} {}", f[4], f[5])
}
