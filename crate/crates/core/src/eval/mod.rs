//! Parameterized evaluation: the 35-field schema, its Gray-coded 224-bit
//! chromosome, and static scoring.

mod chromosome;
mod evaluate;
mod params;

pub use chromosome::{gray_decode, gray_encode, Chromosome, ChromosomeError, HEX_LEN};
pub use evaluate::{evaluate, features, is_endgame, Features, ENDGAME_MATERIAL};
pub use params::{EvalParams, Field, ParamError, CHROMOSOME_BITS, PARAM_COUNT, PAWN_VALUE, SCHEMA};
