//! Static evaluation as a linear form over feature counts.
//!
//! Every term is `count × parameter`, so a position reduces to a feature
//! vector once and any parameter set scores it with a dot product.

use crate::chess::attacks::{
    adjacent_files, bishop_attacks, file_mask, king_attacks, knight_attacks, pawn_attacks,
    queen_attacks, rank_mask, rook_attacks, Squares,
};
use crate::chess::{Color, PieceKind, Position, Square};

use super::params::{EvalParams, PARAM_COUNT, PAWN_VALUE};

/// Classical non-pawn values used only to decide the game phase.
const PHASE_VALUES: [i32; 4] = [300, 300, 500, 900];
/// Both sides at or below this non-pawn material means endgame.
pub const ENDGAME_MATERIAL: i32 = 1300;

const CENTER: u64 = (1 << 27) | (1 << 28) | (1 << 35) | (1 << 36);
const DARK_SQUARES: u64 = 0xaa55_aa55_aa55_aa55;

/// Feature indices in schema order.
mod idx {
    pub const KNIGHT_VALUE: usize = 0;
    pub const BISHOP_VALUE: usize = 1;
    pub const ROOK_VALUE: usize = 2;
    pub const QUEEN_VALUE: usize = 3;
    pub const KNIGHT_MOBILITY: usize = 4;
    pub const BISHOP_MOBILITY: usize = 5;
    pub const ROOK_MOBILITY: usize = 6;
    pub const QUEEN_MOBILITY: usize = 7;
    pub const KNIGHT_CENTRICITY: usize = 8;
    pub const BISHOP_CENTRICITY: usize = 9;
    pub const QUEEN_CENTRICITY: usize = 10;
    pub const KING_CENTRICITY_ENDGAME: usize = 11;
    pub const DOUBLED_PAWN: usize = 12;
    pub const ISOLATED_PAWN: usize = 13;
    pub const BACKWARD_PAWN: usize = 14;
    pub const PASSED_PAWN: usize = 15;
    pub const PASSED_PAWN_RANK: usize = 16;
    pub const CONNECTED_PAWNS: usize = 17;
    pub const PAWN_SHIELD: usize = 18;
    pub const PAWN_CENTER: usize = 19;
    pub const KING_SHIELD_MISSING: usize = 20;
    pub const KING_OPEN_FILE: usize = 21;
    pub const KING_SEMI_OPEN_FILE: usize = 22;
    pub const KING_ZONE_ATTACK: usize = 23;
    pub const CASTLED: usize = 24;
    pub const KING_CENTER_MIDDLEGAME: usize = 25;
    pub const KING_EXPOSED_DIAGONAL: usize = 26;
    pub const BISHOP_PAIR: usize = 27;
    pub const ROOK_OPEN_FILE: usize = 28;
    pub const ROOK_SEMI_OPEN_FILE: usize = 29;
    pub const ROOK_ON_SEVENTH: usize = 30;
    pub const KNIGHT_OUTPOST: usize = 31;
    pub const BAD_BISHOP: usize = 32;
    pub const BLOCKED_CENTER_PAWN: usize = 33;
    pub const TEMPO: usize = 34;
}

/// +1 for bonuses, -1 for penalties, in schema order.
const SIGNS: [i32; PARAM_COUNT] = {
    let mut s = [1; PARAM_COUNT];
    s[idx::DOUBLED_PAWN] = -1;
    s[idx::ISOLATED_PAWN] = -1;
    s[idx::BACKWARD_PAWN] = -1;
    s[idx::KING_SHIELD_MISSING] = -1;
    s[idx::KING_OPEN_FILE] = -1;
    s[idx::KING_SEMI_OPEN_FILE] = -1;
    s[idx::KING_ZONE_ATTACK] = -1;
    s[idx::KING_CENTER_MIDDLEGAME] = -1;
    s[idx::KING_EXPOSED_DIAGONAL] = -1;
    s[idx::BAD_BISHOP] = -1;
    s[idx::BLOCKED_CENTER_PAWN] = -1;
    s
};

/// Signed feature counts of a position, from the side to move's view.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Features {
    pub pawn_balance: i32,
    pub terms: [i32; PARAM_COUNT],
}

impl Features {
    #[inline]
    pub fn score(&self, params: &[i32; PARAM_COUNT]) -> i32 {
        let mut total = self.pawn_balance * PAWN_VALUE;
        for (t, p) in self.terms.iter().zip(params) {
            total += t * p;
        }
        total
    }
}

/// Distance from the four center squares in king steps, 0..=3.
#[inline]
fn center_distance(sq: Square) -> i32 {
    let d = |x: u8| if x < 4 { 3 - x as i32 } else { x as i32 - 4 };
    d(sq.file()).max(d(sq.rank()))
}

/// Ranks strictly ahead of `rank` from `color`'s point of view.
#[inline]
fn ranks_ahead(color: Color, rank: u8) -> u64 {
    match color {
        Color::White if rank >= 7 => 0,
        Color::White => !0u64 << (8 * (rank + 1)),
        Color::Black => (1u64 << (8 * rank)) - 1,
    }
}

#[inline]
fn ranks_behind_or_level(color: Color, rank: u8) -> u64 {
    !ranks_ahead(color, rank)
}

fn non_pawn_material(pos: &Position, color: Color) -> i32 {
    [PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen]
        .iter()
        .zip(PHASE_VALUES)
        .map(|(&k, v)| pos.pieces(color, k).count_ones() as i32 * v)
        .sum()
}

pub fn is_endgame(pos: &Position) -> bool {
    non_pawn_material(pos, Color::White) <= ENDGAME_MATERIAL
        && non_pawn_material(pos, Color::Black) <= ENDGAME_MATERIAL
}

/// Unsigned feature counts for one color.
fn side_counts(pos: &Position, us: Color, endgame: bool) -> [i32; PARAM_COUNT] {
    let mut n = [0i32; PARAM_COUNT];
    let them = !us;
    let occ = pos.occupied();
    let own = pos.color_bb(us);
    let own_pawns = pos.pieces(us, PieceKind::Pawn);
    let enemy_pawns = pos.pieces(them, PieceKind::Pawn);
    let all_pawns = own_pawns | enemy_pawns;
    let ksq = pos.king_square(us);

    let knights = pos.pieces(us, PieceKind::Knight);
    let bishops = pos.pieces(us, PieceKind::Bishop);
    let rooks = pos.pieces(us, PieceKind::Rook);
    let queens = pos.pieces(us, PieceKind::Queen);

    n[idx::KNIGHT_VALUE] = knights.count_ones() as i32;
    n[idx::BISHOP_VALUE] = bishops.count_ones() as i32;
    n[idx::ROOK_VALUE] = rooks.count_ones() as i32;
    n[idx::QUEEN_VALUE] = queens.count_ones() as i32;

    let enemy_pawn_attacks = Squares(enemy_pawns).fold(0, |acc, s| acc | pawn_attacks(them, s));
    let own_pawn_attacks = Squares(own_pawns).fold(0, |acc, s| acc | pawn_attacks(us, s));

    for sq in Squares(knights) {
        n[idx::KNIGHT_MOBILITY] += (knight_attacks(sq) & !own).count_ones() as i32;
        n[idx::KNIGHT_CENTRICITY] += 3 - center_distance(sq);
        let rr = sq.relative_rank(us);
        let attackable = enemy_pawns & adjacent_files(sq.file()) & ranks_ahead(us, sq.rank());
        if (3..=5).contains(&rr) && own_pawn_attacks & sq.bb() != 0 && attackable == 0 {
            n[idx::KNIGHT_OUTPOST] += 1;
        }
    }
    for sq in Squares(bishops) {
        n[idx::BISHOP_MOBILITY] += (bishop_attacks(sq, occ) & !own).count_ones() as i32;
        n[idx::BISHOP_CENTRICITY] += 3 - center_distance(sq);
        let same_color = if sq.bb() & DARK_SQUARES != 0 { DARK_SQUARES } else { !DARK_SQUARES };
        n[idx::BAD_BISHOP] += (own_pawns & same_color).count_ones() as i32;
    }
    if bishops.count_ones() >= 2 {
        n[idx::BISHOP_PAIR] = 1;
    }
    for sq in Squares(rooks) {
        n[idx::ROOK_MOBILITY] += (rook_attacks(sq, occ) & !own).count_ones() as i32;
        let file = file_mask(sq.file());
        if all_pawns & file == 0 {
            n[idx::ROOK_OPEN_FILE] += 1;
        } else if own_pawns & file == 0 {
            n[idx::ROOK_SEMI_OPEN_FILE] += 1;
        }
        if sq.relative_rank(us) == 6 {
            n[idx::ROOK_ON_SEVENTH] += 1;
        }
    }
    for sq in Squares(queens) {
        n[idx::QUEEN_MOBILITY] += (queen_attacks(sq, occ) & !own).count_ones() as i32;
        n[idx::QUEEN_CENTRICITY] += 3 - center_distance(sq);
    }

    // Pawn structure.
    for file in 0..8 {
        let on_file = (own_pawns & file_mask(file)).count_ones() as i32;
        n[idx::DOUBLED_PAWN] += (on_file - 1).max(0);
    }
    for sq in Squares(own_pawns) {
        let file = sq.file();
        let neighbours = own_pawns & adjacent_files(file);
        let isolated = neighbours == 0;
        if isolated {
            n[idx::ISOLATED_PAWN] += 1;
        }
        let span = (file_mask(file) | adjacent_files(file)) & ranks_ahead(us, sq.rank());
        let passed = enemy_pawns & span == 0;
        if passed {
            n[idx::PASSED_PAWN] += 1;
            n[idx::PASSED_PAWN_RANK] += sq.relative_rank(us) as i32 - 1;
        }
        if !isolated && !passed {
            let supporters = neighbours & ranks_behind_or_level(us, sq.rank());
            let stop = match us {
                Color::White => sq.index() + 8,
                Color::Black => sq.index() - 8,
            };
            if supporters == 0 && enemy_pawn_attacks & (1u64 << stop) != 0 {
                n[idx::BACKWARD_PAWN] += 1;
            }
        }
        let phalanx = neighbours & rank_mask(sq.rank());
        let defenders = pawn_attacks(them, sq) & own_pawns;
        if phalanx | defenders != 0 {
            n[idx::CONNECTED_PAWNS] += 1;
        }
        if file == 3 || file == 4 {
            let front = match us {
                Color::White => sq.index() + 8,
                Color::Black => sq.index() - 8,
            };
            if occ & (1u64 << front) != 0 {
                n[idx::BLOCKED_CENTER_PAWN] += 1;
            }
        }
    }
    n[idx::PAWN_CENTER] = (own_pawns & CENTER).count_ones() as i32;

    // King safety.
    let king_rr = ksq.relative_rank(us);
    let king_files = file_mask(ksq.file()) | adjacent_files(ksq.file());
    let near_ranks = shield_ranks(us, ksq.rank());
    n[idx::PAWN_SHIELD] = (own_pawns & king_files & near_ranks).count_ones() as i32;
    let lo = ksq.file().saturating_sub(1);
    let hi = (ksq.file() + 1).min(7);
    for file in lo..=hi {
        let fm = file_mask(file);
        if own_pawns & fm & near_ranks == 0 {
            n[idx::KING_SHIELD_MISSING] += 1;
        }
        if all_pawns & fm == 0 {
            n[idx::KING_OPEN_FILE] += 1;
        } else if own_pawns & fm == 0 {
            n[idx::KING_SEMI_OPEN_FILE] += 1;
        }
    }
    let zone = king_attacks(ksq) | ksq.bb();
    let enemy_non_king = pos.color_bb(them) & !pos.kind_bb(PieceKind::King);
    n[idx::KING_ZONE_ATTACK] = Squares(enemy_non_king).filter(|&s| pos.attacks_from(s) & zone != 0).count() as i32;
    if king_rr == 0 && matches!(ksq.file(), 0 | 1 | 2 | 6 | 7) {
        n[idx::CASTLED] = 1;
    }
    n[idx::KING_EXPOSED_DIAGONAL] = (bishop_attacks(ksq, occ) & !occ).count_ones() as i32;
    if endgame {
        n[idx::KING_CENTRICITY_ENDGAME] = 3 - center_distance(ksq);
    } else if matches!(ksq.file(), 3 | 4) {
        n[idx::KING_CENTER_MIDDLEGAME] = 1;
    }
    n
}

/// The two ranks directly in front of a king on `rank`.
fn shield_ranks(color: Color, rank: u8) -> u64 {
    let ahead = ranks_ahead(color, rank);
    let beyond = match color {
        Color::White if rank + 2 >= 7 => 0,
        Color::White => ranks_ahead(color, rank + 2),
        Color::Black if rank < 2 => 0,
        Color::Black => ranks_ahead(color, rank - 2),
    };
    ahead & !beyond
}

/// Feature vector of `pos` from the side to move's perspective.
pub fn features(pos: &Position) -> Features {
    let endgame = is_endgame(pos);
    let white = side_counts(pos, Color::White, endgame);
    let black = side_counts(pos, Color::Black, endgame);
    let stm = pos.side_to_move();
    let sign = if stm == Color::White { 1 } else { -1 };
    let mut terms = [0i32; PARAM_COUNT];
    for k in 0..PARAM_COUNT {
        terms[k] = sign * SIGNS[k] * (white[k] - black[k]);
    }
    terms[idx::TEMPO] = 1;
    let pawns = |c| pos.pieces(c, PieceKind::Pawn).count_ones() as i32;
    Features { pawn_balance: sign * (pawns(Color::White) - pawns(Color::Black)), terms }
}

/// Centipawn score of `pos` for the side to move.
pub fn evaluate(pos: &Position, params: &EvalParams) -> i32 {
    features(pos).score(&params.to_array())
}
