mod common;

use chessevo::chess::Position;
use chessevo::eval::{evaluate, Chromosome, EvalParams};
use chessevo::search::{search_1ply, search_game_move, SearchLimits, SearchOptions, TranspositionTable, MATE};
use common::{minimax, random_positions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params_for(i: usize) -> EvalParams {
    if i.is_multiple_of(3) {
        EvalParams::reference()
    } else {
        Chromosome::random(&mut ChaCha8Rng::seed_from_u64(i as u64)).decode()
    }
}

#[test]
fn pruning_free_search_equals_minimax() {
    for (i, pos) in random_positions(1, 40).iter().enumerate() {
        let params = params_for(i);
        let mut tt = TranspositionTable::new(14);
        for depth in 1..=3 {
            let r = search_game_move(pos, &params, SearchLimits::Depth(depth), SearchOptions::pruning_free(), &mut tt)
                .unwrap();
            assert_eq!(r.score, minimax(pos, depth, 0, &params), "{pos:?} depth {depth}");
            assert!(pos.legal_moves().contains(&r.best_move));
        }
    }
}

#[test]
fn depth_one_equals_brute_force_argmax() {
    for (i, pos) in random_positions(2, 100).iter().enumerate() {
        let params = params_for(i);
        let mut best = None;
        for mv in pos.legal_moves() {
            let s = -evaluate(&pos.apply_move(mv).unwrap(), &params);
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((mv, s));
            }
        }
        let one = search_1ply(pos, &params).unwrap();
        assert_eq!(Some((one.best_move, one.score)), best);
        let mut tt = TranspositionTable::new(10);
        let r = search_game_move(pos, &params, SearchLimits::Depth(1), SearchOptions::pruning_free(), &mut tt).unwrap();
        assert_eq!((r.best_move, r.score), (one.best_move, one.score));
    }
}

#[test]
fn enhancements_keep_moves_legal_and_save_nodes() {
    let positions = random_positions(3, 60);
    let params = EvalParams::reference();
    let mut fewer = 0;
    for pos in &positions {
        let mut tt = TranspositionTable::new(16);
        let full = search_game_move(pos, &params, SearchLimits::Depth(4), SearchOptions::full(), &mut tt).unwrap();
        let mut tt = TranspositionTable::new(16);
        let plain =
            search_game_move(pos, &params, SearchLimits::Depth(4), SearchOptions::pruning_free(), &mut tt).unwrap();
        assert!(pos.legal_moves().contains(&full.best_move));
        fewer += (full.nodes <= plain.nodes) as usize;
    }
    assert!(fewer * 100 >= positions.len() * 95, "{fewer} of {}", positions.len());
}

#[test]
fn shorter_mates_score_higher() {
    let pos = Position::from_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1").unwrap();
    let mut tt = TranspositionTable::new(12);
    let r = search_game_move(&pos, &EvalParams::reference(), SearchLimits::Depth(4), SearchOptions::full(), &mut tt)
        .unwrap();
    assert_eq!(pos.to_san(r.best_move), "Ra8#");
    assert_eq!(r.score, MATE - 1);
}

#[test]
fn mated_side_prefers_the_longest_defence() {
    // Black to move can still escape Ra8#.
    let pos = Position::from_fen("6k1/5ppp/8/8/8/8/8/R5K1 b - - 0 1").unwrap();
    let mut tt = TranspositionTable::new(12);
    let params = EvalParams::reference();
    let r = search_game_move(&pos, &params, SearchLimits::Depth(3), SearchOptions::pruning_free(), &mut tt).unwrap();
    assert_eq!(r.score, minimax(&pos, 3, 0, &params));
    assert!(r.score > -(MATE - 100), "{}", r.score);
}
