use super::attacks::{
    bishop_attacks, king_attacks, knight_attacks, pawn_attacks, queen_attacks, rook_attacks, Squares,
};
use super::types::{castling, Color, Move, MoveKind, Piece, PieceKind, Square};
use super::zobrist;
use thiserror::Error;

/// Full game state. Immutable value semantics: moves produce new positions.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub(crate) board: [Option<Piece>; 64],
    pub(crate) by_kind: [u64; 6],
    pub(crate) by_color: [u64; 2],
    pub(crate) side_to_move: Color,
    pub(crate) castling: u8,
    pub(crate) en_passant: Option<Square>,
    pub(crate) halfmove_clock: u32,
    pub(crate) fullmove_number: u32,
    pub(crate) key: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("illegal move {mv} in position {fen}")]
pub struct IllegalMove {
    pub mv: String,
    pub fen: String,
}

/// Castling-right bits that survive a move touching each square.
static CASTLE_KEEP: [u8; 64] = {
    let mut t = [castling::ALL; 64];
    t[0] = castling::ALL & !castling::WHITE_QUEENSIDE;
    t[4] = castling::ALL & !(castling::WHITE_KINGSIDE | castling::WHITE_QUEENSIDE);
    t[7] = castling::ALL & !castling::WHITE_KINGSIDE;
    t[56] = castling::ALL & !castling::BLACK_QUEENSIDE;
    t[60] = castling::ALL & !(castling::BLACK_KINGSIDE | castling::BLACK_QUEENSIDE);
    t[63] = castling::ALL & !castling::BLACK_KINGSIDE;
    t
};

impl Position {
    pub(crate) fn empty() -> Position {
        Position {
            board: [None; 64],
            by_kind: [0; 6],
            by_color: [0; 2],
            side_to_move: Color::White,
            castling: 0,
            en_passant: None,
            halfmove_clock: 0,
            fullmove_number: 1,
            key: 0,
        }
    }

    pub fn startpos() -> Position {
        Position::from_fen(super::fen::START_FEN).expect("start position FEN is valid")
    }

    #[inline]
    pub fn side_to_move(&self) -> Color {
        self.side_to_move
    }

    #[inline]
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        self.board[sq.index()]
    }

    #[inline]
    pub fn pieces(&self, color: Color, kind: PieceKind) -> u64 {
        self.by_color[color.index()] & self.by_kind[kind.index()]
    }

    #[inline]
    pub fn kind_bb(&self, kind: PieceKind) -> u64 {
        self.by_kind[kind.index()]
    }

    #[inline]
    pub fn color_bb(&self, color: Color) -> u64 {
        self.by_color[color.index()]
    }

    #[inline]
    pub fn occupied(&self) -> u64 {
        self.by_color[0] | self.by_color[1]
    }

    #[inline]
    pub fn castling_rights(&self) -> u8 {
        self.castling
    }

    pub fn has_castling_right(&self, right: u8) -> bool {
        self.castling & right != 0
    }

    #[inline]
    pub fn en_passant_square(&self) -> Option<Square> {
        self.en_passant
    }

    #[inline]
    pub fn halfmove_clock(&self) -> u32 {
        self.halfmove_clock
    }

    #[inline]
    pub fn fullmove_number(&self) -> u32 {
        self.fullmove_number
    }

    /// 64-bit position key over placement, side, castling and en-passant.
    #[inline]
    pub fn key(&self) -> u64 {
        self.key
    }

    #[inline]
    pub fn king_square(&self, color: Color) -> Square {
        let kings = self.pieces(color, PieceKind::King);
        debug_assert!(kings != 0, "position without a king");
        Square::new(kings.trailing_zeros() as u8)
    }

    pub(crate) fn compute_key(&self) -> u64 {
        let mut key = zobrist::side(self.side_to_move)
            ^ zobrist::castling(self.castling)
            ^ zobrist::en_passant(self.en_passant);
        for (i, p) in self.board.iter().enumerate() {
            if let Some(p) = p {
                key ^= zobrist::piece(*p, Square::new(i as u8));
            }
        }
        key
    }

    #[inline]
    pub(crate) fn put(&mut self, p: Piece, sq: Square) {
        debug_assert!(self.board[sq.index()].is_none());
        self.board[sq.index()] = Some(p);
        self.by_kind[p.kind.index()] |= sq.bb();
        self.by_color[p.color.index()] |= sq.bb();
        self.key ^= zobrist::piece(p, sq);
    }

    #[inline]
    fn take(&mut self, sq: Square) -> Piece {
        let p = self.board[sq.index()].take().expect("square occupied");
        self.by_kind[p.kind.index()] &= !sq.bb();
        self.by_color[p.color.index()] &= !sq.bb();
        self.key ^= zobrist::piece(p, sq);
        p
    }

    /// Bitboard of pieces of `by` attacking `sq`, given occupancy `occupied`.
    #[inline]
    pub fn attackers(&self, sq: Square, by: Color, occupied: u64) -> u64 {
        let them = self.by_color[by.index()];
        let diag = self.by_kind[PieceKind::Bishop.index()] | self.by_kind[PieceKind::Queen.index()];
        let orth = self.by_kind[PieceKind::Rook.index()] | self.by_kind[PieceKind::Queen.index()];
        them & ((pawn_attacks(!by, sq) & self.by_kind[PieceKind::Pawn.index()])
            | (knight_attacks(sq) & self.by_kind[PieceKind::Knight.index()])
            | (king_attacks(sq) & self.by_kind[PieceKind::King.index()])
            | (bishop_attacks(sq, occupied) & diag)
            | (rook_attacks(sq, occupied) & orth))
    }

    #[inline]
    pub fn is_attacked(&self, sq: Square, by: Color) -> bool {
        self.attackers(sq, by, self.occupied()) != 0
    }

    /// Squares attacked by the piece on `sq` (empty bitboard if none).
    pub fn attacks_from(&self, sq: Square) -> u64 {
        let occ = self.occupied();
        match self.board[sq.index()] {
            None => 0,
            Some(p) => match p.kind {
                PieceKind::Pawn => pawn_attacks(p.color, sq),
                PieceKind::Knight => knight_attacks(sq),
                PieceKind::Bishop => bishop_attacks(sq, occ),
                PieceKind::Rook => rook_attacks(sq, occ),
                PieceKind::Queen => queen_attacks(sq, occ),
                PieceKind::King => king_attacks(sq),
            },
        }
    }

    /// All squares attacked by `color`.
    pub fn attacked_by(&self, color: Color) -> u64 {
        Squares(self.color_bb(color)).fold(0, |acc, sq| acc | self.attacks_from(sq))
    }

    #[inline]
    pub fn in_check(&self) -> bool {
        let us = self.side_to_move;
        self.is_attacked(self.king_square(us), !us)
    }

    /// Whether `color` has any piece besides king and pawns.
    pub fn has_non_pawn_material(&self, color: Color) -> bool {
        let c = self.color_bb(color);
        c & !(self.kind_bb(PieceKind::Pawn) | self.kind_bb(PieceKind::King)) != 0
    }

    /// Applies a move without checking legality. `mv` must come from this
    /// position's move generator.
    pub(crate) fn make(&self, mv: Move) -> Position {
        let mut next = *self;
        let us = self.side_to_move;
        next.key ^= zobrist::castling(self.castling) ^ zobrist::en_passant(self.en_passant);
        next.en_passant = None;

        let moving = next.take(mv.from);
        let mut reset_clock = moving.kind == PieceKind::Pawn;

        match mv.kind {
            MoveKind::Capture => {
                next.take(mv.to);
                reset_clock = true;
            }
            MoveKind::EnPassant => {
                let victim = Square::from_coords(mv.to.file(), mv.from.rank());
                next.take(victim);
                reset_clock = true;
            }
            MoveKind::CastleKingside | MoveKind::CastleQueenside => {
                let rank = mv.from.rank();
                let (rook_from, rook_to) = if mv.kind == MoveKind::CastleKingside {
                    (Square::from_coords(7, rank), Square::from_coords(5, rank))
                } else {
                    (Square::from_coords(0, rank), Square::from_coords(3, rank))
                };
                let rook = next.take(rook_from);
                next.put(rook, rook_to);
            }
            MoveKind::DoublePush => {
                next.en_passant = Some(Square::from_coords(mv.from.file(), (mv.from.rank() + mv.to.rank()) / 2));
            }
            MoveKind::Quiet => {}
        }

        let placed = match mv.promotion {
            Some(kind) => Piece::new(kind, us),
            None => moving,
        };
        next.put(placed, mv.to);

        next.castling &= CASTLE_KEEP[mv.from.index()] & CASTLE_KEEP[mv.to.index()];
        next.halfmove_clock = if reset_clock { 0 } else { self.halfmove_clock + 1 };
        if us == Color::Black {
            next.fullmove_number += 1;
        }
        next.side_to_move = !us;
        next.key ^= zobrist::side(Color::White) ^ zobrist::side(Color::Black);
        next.key ^= zobrist::castling(next.castling) ^ zobrist::en_passant(next.en_passant);
        next
    }

    /// Passes the turn. Used by null-move pruning only.
    pub(crate) fn make_null(&self) -> Position {
        let mut next = *self;
        next.key ^= zobrist::en_passant(self.en_passant);
        next.en_passant = None;
        next.side_to_move = !self.side_to_move;
        next.key ^= zobrist::side(Color::White) ^ zobrist::side(Color::Black);
        next.halfmove_clock += 1;
        next
    }

    /// Applies `mv` after checking it against the legal move list.
    pub fn apply_move(&self, mv: Move) -> Result<Position, IllegalMove> {
        if self.legal_moves().contains(&mv) {
            Ok(self.make(mv))
        } else {
            Err(IllegalMove { mv: mv.uci(), fen: self.to_fen() })
        }
    }

    /// Looks up a legal move by its from/to/promotion triple.
    pub fn find_move(&self, from: Square, to: Square, promotion: Option<PieceKind>) -> Option<Move> {
        self.legal_moves()
            .into_iter()
            .find(|m| m.from == from && m.to == to && m.promotion == promotion)
    }

    /// Parses a UCI move string and resolves it against the legal moves.
    pub fn parse_uci(&self, text: &str) -> Option<Move> {
        let text = text.trim();
        if text.len() != 4 && text.len() != 5 {
            return None;
        }
        let from = Square::parse(text.get(0..2)?)?;
        let to = Square::parse(text.get(2..4)?)?;
        let promotion = match text.get(4..) {
            Some("") => None,
            Some(s) => Some(PieceKind::from_letter(s.chars().next()?)?),
            None => None,
        };
        self.find_move(from, to, promotion)
    }

    /// Vertical flip with colors swapped: the same position seen from the
    /// other side. Side to move, castling rights and en-passant follow.
    pub fn color_flipped(&self) -> Position {
        let mut out = Position::empty();
        for (i, p) in self.board.iter().enumerate() {
            if let Some(p) = p {
                out.put(Piece::new(p.kind, !p.color), Square::new(i as u8).flip_vertical());
            }
        }
        out.side_to_move = !self.side_to_move;
        out.castling = ((self.castling & 3) << 2) | ((self.castling >> 2) & 3);
        out.en_passant = self.en_passant.map(Square::flip_vertical);
        out.halfmove_clock = self.halfmove_clock;
        out.fullmove_number = self.fullmove_number;
        out.key = out.compute_key();
        out
    }
}

impl std::fmt::Debug for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Position({})", self.to_fen())
    }
}

impl std::fmt::Display for Position {
    /// ASCII diagram, rank 8 first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for rank in (0..8).rev() {
            for file in 0..8 {
                let c = self.board[Square::from_coords(file, rank).index()].map_or('.', Piece::fen_char);
                write!(f, "{c}")?;
                if file < 7 {
                    write!(f, " ")?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "{}", self.to_fen())
    }
}
