use super::attacks::Squares;
use super::position::Position;
use super::types::{Color, PieceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Ongoing,
    Checkmate { winner: Color },
    Stalemate,
    FiftyMoveRule,
    InsufficientMaterial,
    ThreefoldRepetition,
}

impl Outcome {
    pub fn is_terminal(self) -> bool {
        self != Outcome::Ongoing
    }

    pub fn is_draw(self) -> bool {
        !matches!(self, Outcome::Ongoing | Outcome::Checkmate { .. })
    }
}

const DARK_SQUARES: u64 = 0xaa55_aa55_aa55_aa55;

impl Position {
    /// Neither side can possibly mate: K v K, K+minor v K, or kings with
    /// bishops all on one square color.
    pub fn is_insufficient_material(&self) -> bool {
        let heavy = self.kind_bb(PieceKind::Pawn) | self.kind_bb(PieceKind::Rook) | self.kind_bb(PieceKind::Queen);
        if heavy != 0 {
            return false;
        }
        let knights = self.kind_bb(PieceKind::Knight);
        let bishops = self.kind_bb(PieceKind::Bishop);
        let minors = (knights | bishops).count_ones();
        if minors <= 1 {
            return true;
        }
        knights == 0 && (bishops & DARK_SQUARES == 0 || bishops & !DARK_SQUARES == 0)
    }

    /// Game state of `self` given the earlier positions of the game.
    /// `history` holds the positions before this one; the current position
    /// counts as its own first occurrence.
    pub fn outcome(&self, history: &[Position]) -> Outcome {
        if !self.has_legal_moves() {
            return if self.in_check() {
                Outcome::Checkmate { winner: !self.side_to_move() }
            } else {
                Outcome::Stalemate
            };
        }
        if self.is_insufficient_material() {
            return Outcome::InsufficientMaterial;
        }
        if self.halfmove_clock() >= 100 {
            return Outcome::FiftyMoveRule;
        }
        // Only positions since the last irreversible move can repeat.
        let window = (self.halfmove_clock() as usize).min(history.len());
        let repeats = history[history.len() - window..]
            .iter()
            .filter(|p| p.key() == self.key() && p.same_state(self))
            .count();
        if repeats + 1 >= 3 {
            return Outcome::ThreefoldRepetition;
        }
        Outcome::Ongoing
    }

    fn same_state(&self, other: &Position) -> bool {
        self.board == other.board
            && self.side_to_move == other.side_to_move
            && self.castling == other.castling
            && self.en_passant == other.en_passant
    }

    /// Number of pieces of `kind` for `color`.
    pub fn count(&self, color: Color, kind: PieceKind) -> u32 {
        Squares(self.pieces(color, kind)).count() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(fen: &str) -> Position {
        Position::from_fen(fen).unwrap()
    }

    #[test]
    fn fools_mate() {
        let p = pos("rnb1kbnr/pppp1ppp/8/4p3/6Pq/5P2/PPPPP2P/RNBQKBNR w KQkq - 1 3");
        assert_eq!(p.outcome(&[]), Outcome::Checkmate { winner: Color::Black });
    }

    #[test]
    fn stalemate() {
        assert_eq!(pos("k7/8/1Q6/8/8/8/8/7K b - - 0 1").outcome(&[]), Outcome::Stalemate);
    }

    #[test]
    fn insufficient() {
        assert_eq!(pos("8/8/8/8/8/8/8/K6k w - - 0 1").outcome(&[]), Outcome::InsufficientMaterial);
        assert_eq!(pos("8/8/8/8/8/8/8/KN5k w - - 0 1").outcome(&[]), Outcome::InsufficientMaterial);
        assert_eq!(pos("8/8/8/8/8/8/8/KB3b1k w - - 0 1").outcome(&[]), Outcome::InsufficientMaterial);
        assert_eq!(pos("8/8/8/8/8/8/8/KB2b2k w - - 0 1").outcome(&[]), Outcome::Ongoing);
        assert_eq!(pos("8/8/8/8/8/8/P7/K6k w - - 0 1").outcome(&[]), Outcome::Ongoing);
    }

    #[test]
    fn fifty_moves() {
        assert_eq!(pos("7k/8/8/8/8/8/8/KR6 w - - 100 80").outcome(&[]), Outcome::FiftyMoveRule);
        assert_eq!(pos("7k/8/8/8/8/8/8/KR6 w - - 99 80").outcome(&[]), Outcome::Ongoing);
    }

    #[test]
    fn threefold_by_knight_shuffle() {
        let mut p = Position::startpos();
        let mut history = Vec::new();
        let cycle = ["g1f3", "g8f6", "f3g1", "f6g8"];
        for round in 0..2 {
            for uci in cycle {
                let mv = p.parse_uci(uci).unwrap();
                history.push(p);
                p = p.apply_move(mv).unwrap();
            }
            let expected = if round == 0 { Outcome::Ongoing } else { Outcome::ThreefoldRepetition };
            assert_eq!(p.outcome(&history), expected);
        }
    }
}
