//! 224-bit chromosome with independently Gray-coded, MSB-first fields.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use thiserror::Error;

use super::params::{EvalParams, ParamError, CHROMOSOME_BITS, PARAM_COUNT, SCHEMA};

const WORDS: usize = 4;
/// Bits 224..256 of the backing store are always zero.
const LAST_WORD_MASK: u64 = !0u64 << (WORDS * 64 - CHROMOSOME_BITS);
pub const HEX_LEN: usize = CHROMOSOME_BITS / 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChromosomeError {
    #[error("chromosome must have {CHROMOSOME_BITS} bits, got {0}")]
    Length(usize),
    #[error("chromosome hex must be {HEX_LEN} lowercase hex characters")]
    Hex,
}

/// Bit `i` (0-based, MSB-first across the whole string) lives in word
/// `i / 64` at bit position `63 - i % 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Chromosome {
    words: [u64; WORDS],
}

impl Chromosome {
    pub const LEN: usize = CHROMOSOME_BITS;

    pub const fn zero() -> Chromosome {
        Chromosome { words: [0; WORDS] }
    }

    pub const fn ones() -> Chromosome {
        Chromosome { words: [!0, !0, !0, LAST_WORD_MASK] }
    }

    pub fn from_bits(bits: &[bool]) -> Result<Chromosome, ChromosomeError> {
        if bits.len() != CHROMOSOME_BITS {
            return Err(ChromosomeError::Length(bits.len()));
        }
        let mut c = Chromosome::zero();
        for (i, &b) in bits.iter().enumerate() {
            if b {
                c.flip(i);
            }
        }
        Ok(c)
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..CHROMOSOME_BITS).map(|i| self.bit(i)).collect()
    }

    /// Draws 224 independent uniform bits from `rng`.
    pub fn random<R: RngCore + ?Sized>(rng: &mut R) -> Chromosome {
        let mut words = [0u64; WORDS];
        for w in &mut words {
            *w = rng.next_u64();
        }
        words[WORDS - 1] &= LAST_WORD_MASK;
        Chromosome { words }
    }

    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < CHROMOSOME_BITS);
        self.words[i / 64] >> (63 - i % 64) & 1 == 1
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < CHROMOSOME_BITS);
        self.words[i / 64] ^= 1u64 << (63 - i % 64);
    }

    pub fn hamming(&self, other: &Chromosome) -> u32 {
        self.words.iter().zip(&other.words).map(|(a, b)| (a ^ b).count_ones()).sum()
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Bits taken from `self` where `mask` is set and from `other` elsewhere.
    pub fn blend(&self, other: &Chromosome, mask: &Chromosome) -> Chromosome {
        let mut words = [0u64; WORDS];
        for (i, w) in words.iter_mut().enumerate() {
            *w = (self.words[i] & mask.words[i]) | (other.words[i] & !mask.words[i]);
        }
        Chromosome { words }
    }

    pub fn xor(&self, other: &Chromosome) -> Chromosome {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        Chromosome { words }
    }

    fn read_field(&self, start: usize, width: u32) -> u32 {
        (0..width as usize).fold(0, |acc, k| (acc << 1) | self.bit(start + k) as u32)
    }

    fn write_field(&mut self, start: usize, width: u32, value: u32) {
        for k in 0..width as usize {
            let want = value >> (width as usize - 1 - k) & 1 == 1;
            if self.bit(start + k) != want {
                self.flip(start + k);
            }
        }
    }

    /// Gray-decodes every field.
    pub fn decode(&self) -> EvalParams {
        let mut values = [0i32; PARAM_COUNT];
        let mut start = 0;
        for (v, field) in values.iter_mut().zip(SCHEMA) {
            *v = gray_decode(self.read_field(start, field.bits)) as i32;
            start += field.bits as usize;
        }
        EvalParams::from_slice(&values).expect("decoded fields are within their widths")
    }

    pub fn encode(params: &EvalParams) -> Result<Chromosome, ParamError> {
        let values = params.to_array();
        // Range check through the validating constructor.
        EvalParams::from_slice(&values)?;
        let mut c = Chromosome::zero();
        let mut start = 0;
        for (&v, field) in values.iter().zip(SCHEMA) {
            c.write_field(start, field.bits, gray_encode(v as u32));
            start += field.bits as usize;
        }
        Ok(c)
    }

    /// Index of the schema field containing bit `i`.
    pub fn field_of_bit(i: usize) -> usize {
        let mut start = 0;
        for (idx, field) in SCHEMA.iter().enumerate() {
            start += field.bits as usize;
            if i < start {
                return idx;
            }
        }
        panic!("bit {i} out of range");
    }

    pub fn to_hex(&self) -> String {
        format!(
            "{:016x}{:016x}{:016x}{:08x}",
            self.words[0],
            self.words[1],
            self.words[2],
            self.words[3] >> 32
        )
    }

    pub fn from_hex(text: &str) -> Result<Chromosome, ChromosomeError> {
        let text = text.trim();
        if text.len() != HEX_LEN || !text.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)) {
            return Err(ChromosomeError::Hex);
        }
        let word = |r: std::ops::Range<usize>| u64::from_str_radix(&text[r], 16).map_err(|_| ChromosomeError::Hex);
        Ok(Chromosome {
            words: [word(0..16)?, word(16..32)?, word(32..48)?, word(48..56)? << 32],
        })
    }
}

impl fmt::Debug for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chromosome({})", self.to_hex())
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for Chromosome {
    type Err = ChromosomeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Chromosome::from_hex(s)
    }
}

/// Reflected binary Gray code.
#[inline]
pub fn gray_encode(v: u32) -> u32 {
    v ^ (v >> 1)
}

#[inline]
pub fn gray_decode(mut g: u32) -> u32 {
    let mut v = 0;
    while g != 0 {
        v ^= g;
        g >>= 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_decodes_to_zero() {
        assert_eq!(Chromosome::zero().decode(), EvalParams::default());
        assert_eq!(Chromosome::encode(&EvalParams::default()).unwrap(), Chromosome::zero());
    }

    #[test]
    fn six_bit_field_100000_is_63() {
        // knight_mobility is the first 6-bit field, starting after 38 material bits.
        let mut c = Chromosome::zero();
        c.flip(38);
        assert_eq!(c.decode().knight_mobility, 63);
    }

    #[test]
    fn knight_511_encodes_to_gray() {
        let p = EvalParams { knight_value: 511, ..EvalParams::default() };
        let c = Chromosome::encode(&p).unwrap();
        let field: String = (0..9).map(|i| if c.bit(i) { '1' } else { '0' }).collect();
        assert_eq!(field, "100000000");
        assert!((9..224).all(|i| !c.bit(i)));
    }

    #[test]
    fn out_of_range_rejected() {
        let p = EvalParams { rook_value: 1024, ..EvalParams::default() };
        assert!(Chromosome::encode(&p).is_err());
    }

    #[test]
    fn wrong_length_rejected() {
        assert_eq!(Chromosome::from_bits(&[false; 223]), Err(ChromosomeError::Length(223)));
        assert!(Chromosome::from_bits(&[true; 224]).is_ok());
    }

    #[test]
    fn hex_format() {
        assert_eq!(Chromosome::zero().to_hex(), "0".repeat(56));
        assert_eq!(Chromosome::ones().to_hex(), "f".repeat(56));
        let mut c = Chromosome::zero();
        c.flip(0);
        assert_eq!(&c.to_hex()[..2], "80");
        c.flip(223);
        assert!(c.to_hex().ends_with('1'));
        assert_eq!(Chromosome::from_hex(&c.to_hex()).unwrap(), c);
        assert!(Chromosome::from_hex("ABC").is_err());
        assert!(Chromosome::from_hex(&"F".repeat(56)).is_err());
    }

    #[test]
    fn random_is_seeded_and_masked() {
        let a = Chromosome::random(&mut ChaCha8Rng::seed_from_u64(1));
        let b = Chromosome::random(&mut ChaCha8Rng::seed_from_u64(1));
        let c = Chromosome::random(&mut ChaCha8Rng::seed_from_u64(2));
        assert_eq!(a, b);
        assert!(a.hamming(&c) > 0);
        assert_eq!(a.words[3] & !LAST_WORD_MASK, 0);
    }

    #[test]
    fn random_bits_are_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut ones = [0u32; 224];
        let draws = 10_000;
        for _ in 0..draws {
            let c = Chromosome::random(&mut rng);
            for (i, n) in ones.iter_mut().enumerate() {
                *n += c.bit(i) as u32;
            }
        }
        for n in ones {
            let mean = n as f64 / draws as f64;
            assert!((0.45..=0.55).contains(&mean), "bit mean {mean}");
        }
    }

    #[test]
    fn single_flip_changes_one_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let c = Chromosome::random(&mut rng);
            let base = c.decode().to_array();
            for i in 0..224 {
                let mut m = c;
                m.flip(i);
                let after = m.decode().to_array();
                let changed: Vec<usize> = (0..PARAM_COUNT).filter(|&k| base[k] != after[k]).collect();
                assert_eq!(changed, vec![Chromosome::field_of_bit(i)]);
            }
        }
    }

    #[test]
    fn gray_neighbours_are_one_flip_away() {
        for width in [6u32, 9, 10] {
            let max = (1u32 << width) - 1;
            for v in 0..=max {
                let g = gray_encode(v);
                let reaches = |t: u32| (0..width).any(|b| gray_decode(g ^ (1 << b)) == t);
                assert!((v < max && reaches(v + 1)) || (v > 0 && reaches(v - 1)));
                if v < max {
                    assert!(reaches(v + 1));
                }
            }
        }
    }
}
