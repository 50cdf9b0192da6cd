//! Forsyth-Edwards Notation.

use super::position::Position;
use super::types::{castling, Color, Piece, PieceKind, Square};
use thiserror::Error;

pub const START_FEN: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FenError {
    #[error("expected 6 space-separated fields, found {0}")]
    FieldCount(usize),
    #[error("piece placement must have 8 ranks, found {0}")]
    RankCount(usize),
    #[error("rank {rank} does not describe exactly 8 squares")]
    RankWidth { rank: u8 },
    #[error("illegal piece letter '{0}'")]
    PieceLetter(char),
    #[error("side to move must be 'w' or 'b', found '{0}'")]
    SideToMove(String),
    #[error("invalid castling field '{0}'")]
    Castling(String),
    #[error("invalid en-passant field '{0}'")]
    EnPassant(String),
    #[error("invalid {field} '{value}'")]
    Counter { field: &'static str, value: String },
    #[error("{0} must have exactly one king")]
    KingCount(&'static str),
    #[error("pawn on the first or last rank")]
    PawnOnBackRank,
    #[error("side not to move is in check")]
    OpponentInCheck,
}

impl Position {
    pub fn from_fen(text: &str) -> Result<Position, FenError> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(FenError::FieldCount(fields.len()));
        }
        let mut pos = Position::empty();

        let ranks: Vec<&str> = fields[0].split('/').collect();
        if ranks.len() != 8 {
            return Err(FenError::RankCount(ranks.len()));
        }
        for (i, row) in ranks.iter().enumerate() {
            let rank = 7 - i as u8;
            let mut file = 0u8;
            for c in row.chars() {
                if let Some(d) = c.to_digit(10) {
                    if d == 0 || d > 8 {
                        return Err(FenError::RankWidth { rank: rank + 1 });
                    }
                    file += d as u8;
                } else {
                    let p = Piece::from_fen_char(c).ok_or(FenError::PieceLetter(c))?;
                    if file >= 8 {
                        return Err(FenError::RankWidth { rank: rank + 1 });
                    }
                    pos.put(p, Square::from_coords(file, rank));
                    file += 1;
                }
                if file > 8 {
                    return Err(FenError::RankWidth { rank: rank + 1 });
                }
            }
            if file != 8 {
                return Err(FenError::RankWidth { rank: rank + 1 });
            }
        }

        pos.side_to_move = match fields[1] {
            "w" => Color::White,
            "b" => Color::Black,
            other => return Err(FenError::SideToMove(other.to_string())),
        };

        if fields[2] != "-" {
            for c in fields[2].chars() {
                let bit = match c {
                    'K' => castling::WHITE_KINGSIDE,
                    'Q' => castling::WHITE_QUEENSIDE,
                    'k' => castling::BLACK_KINGSIDE,
                    'q' => castling::BLACK_QUEENSIDE,
                    _ => return Err(FenError::Castling(fields[2].to_string())),
                };
                if pos.castling & bit != 0 {
                    return Err(FenError::Castling(fields[2].to_string()));
                }
                pos.castling |= bit;
            }
        }

        if fields[3] != "-" {
            let sq = Square::parse(fields[3]).ok_or_else(|| FenError::EnPassant(fields[3].to_string()))?;
            let expected_rank = match pos.side_to_move {
                Color::White => 5,
                Color::Black => 2,
            };
            if sq.rank() != expected_rank {
                return Err(FenError::EnPassant(fields[3].to_string()));
            }
            pos.en_passant = Some(sq);
        }

        pos.halfmove_clock = fields[4].parse().map_err(|_| FenError::Counter {
            field: "halfmove clock",
            value: fields[4].to_string(),
        })?;
        pos.fullmove_number = match fields[5].parse::<u32>() {
            Ok(n) if n >= 1 => n,
            _ => {
                return Err(FenError::Counter { field: "fullmove number", value: fields[5].to_string() })
            }
        };

        for (color, name) in [(Color::White, "white"), (Color::Black, "black")] {
            if pos.pieces(color, PieceKind::King).count_ones() != 1 {
                return Err(FenError::KingCount(name));
            }
        }
        let back_ranks = 0xff00_0000_0000_00ffu64;
        if pos.kind_bb(PieceKind::Pawn) & back_ranks != 0 {
            return Err(FenError::PawnOnBackRank);
        }
        let them = !pos.side_to_move;
        if pos.is_attacked(pos.king_square(them), pos.side_to_move) {
            return Err(FenError::OpponentInCheck);
        }
        // Drop castling rights whose king or rook has left its home square.
        pos.castling &= castling_consistent(&pos);

        pos.key = pos.compute_key();
        Ok(pos)
    }

    pub fn to_fen(&self) -> String {
        let mut out = String::with_capacity(90);
        for rank in (0..8).rev() {
            let mut empty = 0;
            for file in 0..8 {
                match self.piece_at(Square::from_coords(file, rank)) {
                    None => empty += 1,
                    Some(p) => {
                        if empty > 0 {
                            out.push(char::from(b'0' + empty));
                            empty = 0;
                        }
                        out.push(p.fen_char());
                    }
                }
            }
            if empty > 0 {
                out.push(char::from(b'0' + empty));
            }
            if rank > 0 {
                out.push('/');
            }
        }
        out.push(' ');
        out.push(if self.side_to_move == Color::White { 'w' } else { 'b' });
        out.push(' ');
        if self.castling == 0 {
            out.push('-');
        } else {
            for (bit, c) in [
                (castling::WHITE_KINGSIDE, 'K'),
                (castling::WHITE_QUEENSIDE, 'Q'),
                (castling::BLACK_KINGSIDE, 'k'),
                (castling::BLACK_QUEENSIDE, 'q'),
            ] {
                if self.castling & bit != 0 {
                    out.push(c);
                }
            }
        }
        out.push(' ');
        match self.en_passant {
            Some(sq) => out.push_str(&sq.to_string()),
            None => out.push('-'),
        }
        out.push_str(&format!(" {} {}", self.halfmove_clock, self.fullmove_number));
        out
    }
}

fn castling_consistent(pos: &Position) -> u8 {
    let has = |kind: PieceKind, color: Color, sq: u8| pos.pieces(color, kind) & (1u64 << sq) != 0;
    let mut mask = 0;
    if has(PieceKind::King, Color::White, 4) {
        if has(PieceKind::Rook, Color::White, 7) {
            mask |= castling::WHITE_KINGSIDE;
        }
        if has(PieceKind::Rook, Color::White, 0) {
            mask |= castling::WHITE_QUEENSIDE;
        }
    }
    if has(PieceKind::King, Color::Black, 60) {
        if has(PieceKind::Rook, Color::Black, 63) {
            mask |= castling::BLACK_KINGSIDE;
        }
        if has(PieceKind::Rook, Color::Black, 56) {
            mask |= castling::BLACK_QUEENSIDE;
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn start_roundtrip() {
        let p = Position::from_fen(START_FEN).unwrap();
        assert_eq!(p.to_fen(), START_FEN);
        assert_eq!(p.side_to_move(), Color::White);
        assert_eq!(p.legal_moves().len(), 20);
    }

    #[test]
    fn two_kings() {
        let p = Position::from_fen("8/8/8/8/8/8/8/K6k w - - 0 1").unwrap();
        assert_eq!(p.occupied().count_ones(), 2);
        assert_eq!(p.king_square(Color::White), Square::parse("a1").unwrap());
        assert_eq!(p.king_square(Color::Black), Square::parse("h1").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Position::from_fen("8/8/8/8"), Err(FenError::FieldCount(1)));
        assert_eq!(
            Position::from_fen("rnbqkbnr/ppppxppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"),
            Err(FenError::PieceLetter('x'))
        );
        assert_eq!(Position::from_fen("8/8/8/8/8/8/8/8 w - - 0 1"), Err(FenError::KingCount("white")));
        assert_eq!(Position::from_fen("8/8/8/8/8/8/8/K7 w - - 0 1"), Err(FenError::KingCount("black")));
        // Black king attacked by the white rook with white to move.
        assert_eq!(Position::from_fen("k7/8/8/8/8/8/8/R6K w - - 0 1"), Err(FenError::OpponentInCheck));
        assert_eq!(Position::from_fen("k7/8/8/8/8/8/8/P6K w - - 0 1"), Err(FenError::PawnOnBackRank));
        assert!(matches!(
            Position::from_fen("k7/8/8/8/8/8/8/7K w - e3 0 1"),
            Err(FenError::EnPassant(_))
        ));
        assert!(matches!(Position::from_fen("k7/8/8/8/8/8/8/7K x - - 0 1"), Err(FenError::SideToMove(_))));
        assert!(matches!(Position::from_fen("k7/8/8/8/8/8/8/7K w - - 0 0"), Err(FenError::Counter { .. })));
        assert!(matches!(Position::from_fen("k7/8/8/8/8/8/8/6K w - - 0 1"), Err(FenError::RankWidth { .. })));
    }

    #[test]
    fn after_e4_records_en_passant() {
        let p = Position::startpos();
        let e4 = p.parse_uci("e2e4").unwrap();
        let after = p.apply_move(e4).unwrap();
        assert_eq!(after.to_fen(), "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3 0 1");
    }
}
