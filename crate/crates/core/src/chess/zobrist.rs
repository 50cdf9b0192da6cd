//! Fixed Zobrist keys, generated at compile time from a SplitMix64 stream.

use super::types::{Color, Piece, Square};

const fn splitmix(state: u64) -> (u64, u64) {
    let next = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = next;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    (next, z ^ (z >> 31))
}

const PIECE_COUNT: usize = 2 * 6 * 64;
const TOTAL: usize = PIECE_COUNT + 1 + 16 + 8;

const fn build() -> [u64; TOTAL] {
    let mut keys = [0u64; TOTAL];
    let mut state = 0x5eed_c0de_2009_0708u64;
    let mut i = 0;
    while i < TOTAL {
        let (s, k) = splitmix(state);
        state = s;
        keys[i] = k;
        i += 1;
    }
    // No castling rights hashes to zero so that a bare board has a simple key.
    keys[PIECE_COUNT + 1] = 0;
    keys
}

static KEYS: [u64; TOTAL] = build();

#[inline]
pub fn piece(p: Piece, sq: Square) -> u64 {
    KEYS[(p.color.index() * 6 + p.kind.index()) * 64 + sq.index()]
}

#[inline]
pub fn side(color: Color) -> u64 {
    match color {
        Color::White => 0,
        Color::Black => KEYS[PIECE_COUNT],
    }
}

#[inline]
pub fn castling(rights: u8) -> u64 {
    KEYS[PIECE_COUNT + 1 + rights as usize]
}

#[inline]
pub fn en_passant(sq: Option<Square>) -> u64 {
    match sq {
        Some(s) => KEYS[PIECE_COUNT + 17 + s.file() as usize],
        None => 0,
    }
}
