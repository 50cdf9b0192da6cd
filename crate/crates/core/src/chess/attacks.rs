//! Precomputed attack tables and ray-scan slider attacks.

use super::types::{Color, Square};

pub const FILE_A: u64 = 0x0101_0101_0101_0101;
pub const RANK_1: u64 = 0xff;

#[inline]
pub const fn file_mask(file: u8) -> u64 {
    FILE_A << file
}

#[inline]
pub const fn rank_mask(rank: u8) -> u64 {
    RANK_1 << (rank * 8)
}

/// Files adjacent to `file` (not including it).
#[inline]
pub const fn adjacent_files(file: u8) -> u64 {
    let mut m = 0;
    if file > 0 {
        m |= file_mask(file - 1);
    }
    if file < 7 {
        m |= file_mask(file + 1);
    }
    m
}

const fn step_table(deltas: [(i8, i8); 8]) -> [u64; 64] {
    let mut table = [0u64; 64];
    let mut sq = 0;
    while sq < 64 {
        let f = (sq % 8) as i8;
        let r = (sq / 8) as i8;
        let mut i = 0;
        while i < 8 {
            let nf = f + deltas[i].0;
            let nr = r + deltas[i].1;
            if nf >= 0 && nf < 8 && nr >= 0 && nr < 8 {
                table[sq] |= 1u64 << (nr * 8 + nf);
            }
            i += 1;
        }
        sq += 1;
    }
    table
}

static KNIGHT: [u64; 64] =
    step_table([(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)]);
static KING: [u64; 64] =
    step_table([(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]);
static WHITE_PAWN: [u64; 64] =
    step_table([(1, 1), (-1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1)]);
static BLACK_PAWN: [u64; 64] =
    step_table([(1, -1), (-1, -1), (1, -1), (1, -1), (1, -1), (1, -1), (1, -1), (1, -1)]);

// Directions 0..4 increase the square index (use lsb), 4..8 decrease it (use msb).
const DIRS: [(i8, i8); 8] = [(0, 1), (1, 0), (1, 1), (-1, 1), (0, -1), (-1, 0), (-1, -1), (1, -1)];

const fn ray_table() -> [[u64; 64]; 8] {
    let mut table = [[0u64; 64]; 8];
    let mut d = 0;
    while d < 8 {
        let mut sq = 0;
        while sq < 64 {
            let mut f = (sq % 8) as i8 + DIRS[d].0;
            let mut r = (sq / 8) as i8 + DIRS[d].1;
            while f >= 0 && f < 8 && r >= 0 && r < 8 {
                table[d][sq] |= 1u64 << (r * 8 + f);
                f += DIRS[d].0;
                r += DIRS[d].1;
            }
            sq += 1;
        }
        d += 1;
    }
    table
}

static RAYS: [[u64; 64]; 8] = ray_table();

#[inline]
fn ray_attacks(dir: usize, sq: usize, occupied: u64) -> u64 {
    let ray = RAYS[dir][sq];
    let blockers = ray & occupied;
    if blockers == 0 {
        return ray;
    }
    let first = if dir < 4 {
        blockers.trailing_zeros() as usize
    } else {
        63 - blockers.leading_zeros() as usize
    };
    ray ^ RAYS[dir][first]
}

#[inline]
pub fn knight_attacks(sq: Square) -> u64 {
    KNIGHT[sq.index()]
}

#[inline]
pub fn king_attacks(sq: Square) -> u64 {
    KING[sq.index()]
}

/// Squares a pawn of `color` on `sq` attacks.
#[inline]
pub fn pawn_attacks(color: Color, sq: Square) -> u64 {
    match color {
        Color::White => WHITE_PAWN[sq.index()],
        Color::Black => BLACK_PAWN[sq.index()],
    }
}

#[inline]
pub fn rook_attacks(sq: Square, occupied: u64) -> u64 {
    let s = sq.index();
    ray_attacks(0, s, occupied)
        | ray_attacks(1, s, occupied)
        | ray_attacks(4, s, occupied)
        | ray_attacks(5, s, occupied)
}

#[inline]
pub fn bishop_attacks(sq: Square, occupied: u64) -> u64 {
    let s = sq.index();
    ray_attacks(2, s, occupied)
        | ray_attacks(3, s, occupied)
        | ray_attacks(6, s, occupied)
        | ray_attacks(7, s, occupied)
}

#[inline]
pub fn queen_attacks(sq: Square, occupied: u64) -> u64 {
    rook_attacks(sq, occupied) | bishop_attacks(sq, occupied)
}

/// Iterator over the set squares of a bitboard, lowest first.
#[derive(Clone, Copy)]
pub struct Squares(pub u64);

impl Iterator for Squares {
    type Item = Square;

    #[inline]
    fn next(&mut self) -> Option<Square> {
        if self.0 == 0 {
            return None;
        }
        let sq = self.0.trailing_zeros() as u8;
        self.0 &= self.0 - 1;
        Some(Square::new(sq))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(s: &str) -> Square {
        Square::parse(s).unwrap()
    }

    #[test]
    fn leaper_counts() {
        assert_eq!(knight_attacks(sq("a1")).count_ones(), 2);
        assert_eq!(knight_attacks(sq("d4")).count_ones(), 8);
        assert_eq!(king_attacks(sq("h8")).count_ones(), 3);
        assert_eq!(pawn_attacks(Color::White, sq("a2")), sq("b3").bb());
        assert_eq!(pawn_attacks(Color::Black, sq("e5")), sq("d4").bb() | sq("f4").bb());
        assert_eq!(pawn_attacks(Color::White, sq("e8")), 0);
    }

    #[test]
    fn sliders_stop_at_blockers() {
        assert_eq!(rook_attacks(sq("a1"), 0).count_ones(), 14);
        assert_eq!(bishop_attacks(sq("d4"), 0).count_ones(), 13);
        let occ = sq("d6").bb() | sq("b4").bb();
        let r = rook_attacks(sq("d4"), occ);
        assert!(r & sq("d6").bb() != 0);
        assert!(r & sq("d7").bb() == 0);
        assert!(r & sq("b4").bb() != 0);
        assert!(r & sq("a4").bb() == 0);
        assert_eq!(r.count_ones(), 2 + 3 + 4 + 2);
    }
}
