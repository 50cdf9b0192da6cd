//! Rules-complete chess model: position, legal moves, FEN, SAN and game-end
//! detection.

pub mod attacks;
mod fen;
mod movegen;
mod outcome;
mod position;
mod san;
mod types;
mod zobrist;

pub use fen::{FenError, START_FEN};
pub use movegen::MoveList;
pub use outcome::Outcome;
pub use position::{IllegalMove, Position};
pub use san::SanError;
pub use types::{castling, Color, Move, MoveKind, Piece, PieceKind, Square};
