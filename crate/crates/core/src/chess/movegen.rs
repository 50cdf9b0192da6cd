//! Legal move generation and perft.

use arrayvec::ArrayVec;

use super::attacks::{
    bishop_attacks, king_attacks, knight_attacks, pawn_attacks, rook_attacks, Squares,
};
use super::position::Position;
use super::types::{castling, Color, Move, MoveKind, PieceKind, Square};

/// Upper bound on legal moves in any chess position is 218.
pub type MoveList = ArrayVec<Move, 256>;

fn push_targets(list: &mut MoveList, from: Square, targets: u64, them: u64) {
    for to in Squares(targets) {
        let kind = if them & to.bb() != 0 { MoveKind::Capture } else { MoveKind::Quiet };
        list.push(Move::new(from, to, kind));
    }
}

fn push_pawn_move(list: &mut MoveList, from: Square, to: Square, kind: MoveKind, last_rank: bool) {
    if last_rank {
        for promo in PieceKind::PROMOTIONS {
            list.push(Move { from, to, promotion: Some(promo), kind });
        }
    } else {
        list.push(Move::new(from, to, kind));
    }
}

/// Squares strictly between `a` and `b` when aligned, else 0.
fn between(a: Square, b: Square) -> u64 {
    let (af, ar) = (a.file() as i8, a.rank() as i8);
    let (bf, br) = (b.file() as i8, b.rank() as i8);
    let (df, dr) = (bf - af, br - ar);
    if !(df == 0 || dr == 0 || df.abs() == dr.abs()) || (df == 0 && dr == 0) {
        return 0;
    }
    let (sf, sr) = (df.signum(), dr.signum());
    let mut m = 0;
    let (mut f, mut r) = (af + sf, ar + sr);
    while (f, r) != (bf, br) {
        m |= 1u64 << (r * 8 + f);
        f += sf;
        r += sr;
    }
    m
}

impl Position {
    /// Own pieces pinned against our king.
    fn pinned(&self, us: Color) -> u64 {
        let ksq = self.king_square(us);
        let them = self.color_bb(!us);
        let mine = self.color_bb(us);
        let occ = self.occupied();
        let diag = them & (self.kind_bb(PieceKind::Bishop) | self.kind_bb(PieceKind::Queen));
        let orth = them & (self.kind_bb(PieceKind::Rook) | self.kind_bb(PieceKind::Queen));
        let candidates = (bishop_attacks(ksq, them) & diag) | (rook_attacks(ksq, them) & orth);
        let mut pinned = 0;
        for pinner in Squares(candidates) {
            let line = between(ksq, pinner) & occ;
            if line.count_ones() == 1 && line & mine != 0 {
                pinned |= line;
            }
        }
        pinned
    }

    fn pseudo_moves(&self, list: &mut MoveList) {
        let us = self.side_to_move;
        let mine = self.color_bb(us);
        let them = self.color_bb(!us);
        let occ = mine | them;
        let not_mine = !mine;

        // Pawns.
        let (push, start_rank, last_rank) = match us {
            Color::White => (8i8, 1u8, 7u8),
            Color::Black => (-8i8, 6u8, 0u8),
        };
        for from in Squares(self.pieces(us, PieceKind::Pawn)) {
            let one = (from.index() as i8 + push) as u8;
            let one_sq = Square::new(one);
            if occ & one_sq.bb() == 0 {
                push_pawn_move(list, from, one_sq, MoveKind::Quiet, one_sq.rank() == last_rank);
                if from.rank() == start_rank {
                    let two = Square::new((one as i8 + push) as u8);
                    if occ & two.bb() == 0 {
                        list.push(Move::new(from, two, MoveKind::DoublePush));
                    }
                }
            }
            let attacks = pawn_attacks(us, from);
            for to in Squares(attacks & them) {
                push_pawn_move(list, from, to, MoveKind::Capture, to.rank() == last_rank);
            }
            if let Some(ep) = self.en_passant {
                if attacks & ep.bb() != 0 {
                    list.push(Move::new(from, ep, MoveKind::EnPassant));
                }
            }
        }

        for from in Squares(self.pieces(us, PieceKind::Knight)) {
            push_targets(list, from, knight_attacks(from) & not_mine, them);
        }
        for from in Squares(self.pieces(us, PieceKind::Bishop)) {
            push_targets(list, from, bishop_attacks(from, occ) & not_mine, them);
        }
        for from in Squares(self.pieces(us, PieceKind::Rook)) {
            push_targets(list, from, rook_attacks(from, occ) & not_mine, them);
        }
        for from in Squares(self.pieces(us, PieceKind::Queen)) {
            let t = (bishop_attacks(from, occ) | rook_attacks(from, occ)) & not_mine;
            push_targets(list, from, t, them);
        }

        let ksq = self.king_square(us);
        push_targets(list, ksq, king_attacks(ksq) & not_mine, them);

        // Castling: path empty, king not in check and not crossing attacked squares.
        let (ks_right, qs_right, back) = match us {
            Color::White => (castling::WHITE_KINGSIDE, castling::WHITE_QUEENSIDE, 0u8),
            Color::Black => (castling::BLACK_KINGSIDE, castling::BLACK_QUEENSIDE, 7u8),
        };
        if self.castling & (ks_right | qs_right) != 0 && ksq == Square::from_coords(4, back) {
            let rook = self.pieces(us, PieceKind::Rook);
            let sq = |f| Square::from_coords(f, back);
            if !self.is_attacked(ksq, !us) {
                if self.castling & ks_right != 0
                    && rook & sq(7).bb() != 0
                    && occ & (sq(5).bb() | sq(6).bb()) == 0
                    && !self.is_attacked(sq(5), !us)
                    && !self.is_attacked(sq(6), !us)
                {
                    list.push(Move::new(ksq, sq(6), MoveKind::CastleKingside));
                }
                if self.castling & qs_right != 0
                    && rook & sq(0).bb() != 0
                    && occ & (sq(1).bb() | sq(2).bb() | sq(3).bb()) == 0
                    && !self.is_attacked(sq(3), !us)
                    && !self.is_attacked(sq(2), !us)
                {
                    list.push(Move::new(ksq, sq(2), MoveKind::CastleQueenside));
                }
            }
        }
    }

    /// Legal moves in canonical order: from-square, then to-square, then
    /// promotion piece (Q, R, B, N). Empty for terminal positions.
    pub fn legal_moves(&self) -> MoveList {
        let mut pseudo = MoveList::new();
        self.pseudo_moves(&mut pseudo);
        let us = self.side_to_move;
        let ksq = self.king_square(us);
        let in_check = self.is_attacked(ksq, !us);
        let pinned = self.pinned(us);

        let mut legal = MoveList::new();
        for mv in pseudo {
            let risky = in_check
                || mv.from == ksq
                || mv.kind == MoveKind::EnPassant
                || pinned & mv.from.bb() != 0;
            if !risky || !self.make(mv).is_attacked(self.king_square_after(mv, ksq), !us) {
                legal.push(mv);
            }
        }
        legal.sort_unstable_by_key(|m| m.order_key());
        legal
    }

    #[inline]
    fn king_square_after(&self, mv: Move, ksq: Square) -> Square {
        if mv.from == ksq {
            mv.to
        } else {
            ksq
        }
    }

    pub fn has_legal_moves(&self) -> bool {
        !self.legal_moves().is_empty()
    }

    /// Leaf count of the legal-move tree at exactly `depth`.
    pub fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        let moves = self.legal_moves();
        if depth == 1 {
            return moves.len() as u64;
        }
        moves.iter().map(|&m| self.make(m).perft(depth - 1)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(fen: &str) -> Position {
        Position::from_fen(fen).unwrap()
    }

    #[test]
    fn start_has_twenty() {
        assert_eq!(Position::startpos().legal_moves().len(), 20);
    }

    #[test]
    fn stalemate_and_mate_have_no_moves() {
        assert!(pos("k7/8/1Q6/8/8/8/8/7K b - - 0 1").legal_moves().is_empty());
        assert!(pos("rnb1kbnr/pppp1ppp/8/4p3/6Pq/5P2/PPPPP2P/RNBQKBNR w KQkq - 1 3")
            .legal_moves()
            .is_empty());
    }

    #[test]
    fn canonical_order() {
        let moves = Position::startpos().legal_moves();
        let keys: Vec<(usize, usize)> = moves.iter().map(|m| (m.from.index(), m.to.index())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(moves[0].uci(), "b1a3");
    }

    #[test]
    fn promotions_ordered_qrbn() {
        let moves = pos("8/P6k/8/8/8/8/8/K7 w - - 0 1").legal_moves();
        let promos: Vec<String> = moves.iter().filter(|m| m.promotion.is_some()).map(|m| m.uci()).collect();
        assert_eq!(promos, ["a7a8q", "a7a8r", "a7a8b", "a7a8n"]);
    }

    #[test]
    fn en_passant_pin_along_rank() {
        // Capturing en passant would expose the white king on the fifth rank.
        let p = pos("8/8/8/KPp4r/8/8/8/7k w - c6 0 2");
        assert!(p.legal_moves().iter().all(|m| m.kind != MoveKind::EnPassant));
    }

    #[test]
    fn between_masks() {
        let a = Square::parse("a1").unwrap();
        let h8 = Square::parse("h8").unwrap();
        assert_eq!(between(a, h8).count_ones(), 6);
        assert_eq!(between(a, Square::parse("b3").unwrap()), 0);
        assert_eq!(between(a, Square::parse("b2").unwrap()), 0);
    }

    // Reference counts from the standard perft suites.
    #[test]
    fn perft_kiwipete() {
        let p = pos("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1");
        assert_eq!(p.perft(1), 48);
        assert_eq!(p.perft(2), 2039);
        assert_eq!(p.perft(3), 97862);
    }

    #[test]
    fn perft_position3() {
        let p = pos("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1");
        assert_eq!(p.perft(4), 43238);
    }

    #[test]
    fn perft_position4() {
        let p = pos("r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1");
        assert_eq!(p.perft(3), 9467);
    }

    #[test]
    fn perft_position5() {
        let p = pos("rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8");
        assert_eq!(p.perft(3), 62379);
    }
}
