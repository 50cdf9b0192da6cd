//! Chess engine with a fully parameterized evaluation function, a supervised
//! genetic algorithm that tunes it by matching moves from game records, a
//! coevolution phase over round-robin play, and a match harness reporting
//! Elo differences.

pub mod arena;
pub mod chess;
pub mod coevolution;
pub mod elo;
pub mod eval;
pub mod ga;
pub mod pgn;
pub mod play;
pub mod search;
pub mod selfplay;

/// Path of the synthetic PGN corpus shipped with the sources.
pub const BUNDLED_CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/corpus.pgn");
