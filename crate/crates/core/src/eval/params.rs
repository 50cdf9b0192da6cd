use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("parameter {name} = {value} outside 0..={max}")]
    OutOfRange { name: &'static str, value: i32, max: i32 },
    #[error("expected {expected} parameter values, found {found}")]
    Count { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One chromosome field: parameter name and bit width.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    pub name: &'static str,
    pub bits: u32,
}

impl Field {
    pub const fn max_value(self) -> i32 {
        (1i32 << self.bits) - 1
    }
}

macro_rules! eval_params {
    ($( $(#[$doc:meta])* $name:ident : $bits:expr ),* $(,)?) => {
        /// Decoded evaluation parameters in centipawns. Penalties are stored as
        /// non-negative magnitudes and subtracted by the evaluator.
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
        pub struct EvalParams {
            $( $(#[$doc])* pub $name: i32, )*
        }

        /// Chromosome layout in field order.
        pub const SCHEMA: &[Field] = &[ $( Field { name: stringify!($name), bits: $bits }, )* ];

        impl EvalParams {
            pub fn to_array(&self) -> [i32; PARAM_COUNT] {
                [ $( self.$name, )* ]
            }

            /// Builds parameters from values in schema order, checking ranges.
            pub fn from_slice(values: &[i32]) -> Result<EvalParams, ParamError> {
                if values.len() != PARAM_COUNT {
                    return Err(ParamError::Count { expected: PARAM_COUNT, found: values.len() });
                }
                for (field, &value) in SCHEMA.iter().zip(values) {
                    if value < 0 || value > field.max_value() {
                        return Err(ParamError::OutOfRange { name: field.name, value, max: field.max_value() });
                    }
                }
                let mut it = values.iter().copied();
                Ok(EvalParams { $( $name: it.next().unwrap_or_default(), )* })
            }
        }
    };
}

eval_params! {
    knight_value: 9,
    bishop_value: 9,
    rook_value: 10,
    queen_value: 10,
    knight_mobility: 6,
    bishop_mobility: 6,
    rook_mobility: 6,
    queen_mobility: 6,
    knight_centricity: 6,
    bishop_centricity: 6,
    queen_centricity: 6,
    king_centricity_endgame: 6,
    doubled_pawn_penalty: 6,
    isolated_pawn_penalty: 6,
    backward_pawn_penalty: 6,
    passed_pawn_bonus: 6,
    passed_pawn_rank_bonus: 6,
    connected_pawns_bonus: 6,
    pawn_shield_bonus: 6,
    pawn_center_bonus: 6,
    king_shield_missing_penalty: 6,
    king_open_file_penalty: 6,
    king_semi_open_file_penalty: 6,
    king_zone_attack_penalty: 6,
    castled_bonus: 6,
    king_center_penalty_middlegame: 6,
    king_exposed_diagonal_penalty: 6,
    bishop_pair_bonus: 6,
    rook_open_file_bonus: 6,
    rook_semi_open_file_bonus: 6,
    rook_on_seventh_bonus: 6,
    knight_outpost_bonus: 6,
    bad_bishop_penalty: 6,
    blocked_center_pawn_penalty: 6,
    tempo_bonus: 6,
}

pub const PARAM_COUNT: usize = 35;
pub const CHROMOSOME_BITS: usize = 224;

/// Fixed pawn value; not part of the chromosome.
pub const PAWN_VALUE: i32 = 100;

const _: () = {
    assert!(SCHEMA.len() == PARAM_COUNT);
    let mut total = 0;
    let mut i = 0;
    while i < SCHEMA.len() {
        total += SCHEMA[i].bits as usize;
        i += 1;
    }
    assert!(total == CHROMOSOME_BITS);
};

impl EvalParams {
    /// Hand-set values in the classical style, used as a reference
    /// organism and for generating self-play corpora.
    pub fn reference() -> EvalParams {
        EvalParams {
            knight_value: 320,
            bishop_value: 330,
            rook_value: 500,
            queen_value: 900,
            knight_mobility: 4,
            bishop_mobility: 5,
            rook_mobility: 3,
            queen_mobility: 2,
            knight_centricity: 10,
            bishop_centricity: 5,
            queen_centricity: 3,
            king_centricity_endgame: 12,
            doubled_pawn_penalty: 15,
            isolated_pawn_penalty: 12,
            backward_pawn_penalty: 8,
            passed_pawn_bonus: 20,
            passed_pawn_rank_bonus: 10,
            connected_pawns_bonus: 5,
            pawn_shield_bonus: 8,
            pawn_center_bonus: 12,
            king_shield_missing_penalty: 12,
            king_open_file_penalty: 20,
            king_semi_open_file_penalty: 10,
            king_zone_attack_penalty: 8,
            castled_bonus: 25,
            king_center_penalty_middlegame: 25,
            king_exposed_diagonal_penalty: 3,
            bishop_pair_bonus: 40,
            rook_open_file_bonus: 20,
            rook_semi_open_file_bonus: 10,
            rook_on_seventh_bonus: 20,
            knight_outpost_bonus: 15,
            bad_bishop_penalty: 4,
            blocked_center_pawn_penalty: 15,
            tempo_bonus: 10,
        }
    }

    /// Parses the `name = value` dump format. Every parameter must appear
    /// exactly once; blank lines and `#` comments are ignored.
    pub fn parse_dump(text: &str) -> Result<EvalParams, ParamError> {
        let mut values: [Option<i32>; PARAM_COUNT] = [None; PARAM_COUNT];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ParamError::Parse { line: i + 1, message };
            let (name, value) = line.split_once('=').ok_or_else(|| err("expected `name = value`".into()))?;
            let name = name.trim();
            let idx = SCHEMA
                .iter()
                .position(|f| f.name == name)
                .ok_or_else(|| err(format!("unknown parameter {name}")))?;
            let value: i32 = value.trim().parse().map_err(|_| err(format!("bad value for {name}")))?;
            if values[idx].replace(value).is_some() {
                return Err(err(format!("duplicate parameter {name}")));
            }
        }
        let collected: Vec<i32> = values.iter().flatten().copied().collect();
        EvalParams::from_slice(&collected)
    }
}

impl fmt::Display for EvalParams {
    /// `name = value` lines in schema order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (field, value) in SCHEMA.iter().zip(self.to_array()) {
            writeln!(f, "{} = {}", field.name, value)?;
        }
        Ok(())
    }
}
