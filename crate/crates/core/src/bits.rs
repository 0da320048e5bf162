//! Fixed-length binary words and the distances defined on them.
//!
//! Coordinates are numbered from the left: the first coordinate is the
//! leftmost character of the textual form. Storage is packed into `u64`
//! words, least significant bit first within each word.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{FccError, Result};

/// Longest supported word.
pub const MAX_LEN: usize = 1 << 16;

const WORD: usize = 64;

/// A binary word of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl BitVector {
    /// All-zero word of length `len`.
    ///
    /// Panics if `len` exceeds [`MAX_LEN`]; use [`BitVector::try_zeros`] for
    /// lengths that come from user input.
    pub fn zeros(len: usize) -> Self {
        Self::try_zeros(len).expect("bit vector length exceeds MAX_LEN")
    }

    pub fn try_zeros(len: usize) -> Result<Self> {
        if len > MAX_LEN {
            return Err(FccError::arg(format!(
                "bit vector length {len} exceeds the maximum {MAX_LEN}"
            )));
        }
        Ok(BitVector {
            len,
            words: vec![0; words_for(len)],
        })
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.trim();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Word of length `len` whose first coordinate is the most significant
    /// of the `len` low bits of `value`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64, "from_u64 supports at most 64 coordinates");
        let mut v = Self::zeros(len);
        for i in 0..len {
            if (value >> (len - 1 - i)) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Inverse of [`BitVector::from_u64`]; `None` for words longer than 64.
    pub fn to_u64(&self) -> Option<u64> {
        if self.len > 64 {
            return None;
        }
        let mut value = 0u64;
        for i in 0..self.len {
            value = (value << 1) | self.get(i) as u64;
        }
        Some(value)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coordinate `i` (0-based). Panics when out of range.
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "coordinate {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(
            i < self.len,
            "coordinate {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "coordinate {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coordinatewise sum over the binary field.
    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        check_len(self, other)?;
        Ok(self.xor_unchecked(other))
    }

    pub(crate) fn xor_unchecked(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub(crate) fn xor_assign_unchecked(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub(crate) fn distance_unchecked(&self, other: &BitVector) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// `(self, other)` as one word.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for (i, b) in self.iter().chain(other.iter()).enumerate() {
            if b {
                out.set(i, true);
            }
        }
        out
    }

    /// Coordinates `range` as a new word.
    pub fn slice(&self, range: std::ops::Range<usize>) -> BitVector {
        assert!(range.end <= self.len);
        let mut out = BitVector::zeros(range.len());
        for (j, i) in range.enumerate() {
            if self.get(i) {
                out.set(j, true);
            }
        }
        out
    }

    /// `times` copies of `self` laid end to end.
    pub fn repeat(&self, times: usize) -> BitVector {
        let mut out = BitVector::zeros(self.len * times);
        for c in 0..times {
            for i in 0..self.len {
                if self.get(i) {
                    out.set(c * self.len + i, true);
                }
            }
        }
        out
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Cyclic shift by one coordinate: position `i` receives coordinate `i + 1`.
    fn rotate_to_front(&self) -> BitVector {
        let mut out = BitVector::zeros(self.len);
        if self.len == 0 {
            return out;
        }
        let n = self.words.len();
        for w in 0..n {
            let carry = if w + 1 < n {
                self.words[w + 1] << (WORD - 1)
            } else {
                0
            };
            out.words[w] = (self.words[w] >> 1) | carry;
        }
        out.trim();
        if self.get(0) {
            out.set(self.len - 1, true);
        }
        out
    }
}

fn check_len(x: &BitVector, y: &BitVector) -> Result<()> {
    if x.len != y.len {
        return Err(FccError::Dimension {
            left: x.len,
            right: y.len,
        });
    }
    Ok(())
}

/// Number of coordinates in which `x` and `y` differ.
pub fn hamming_distance(x: &BitVector, y: &BitVector) -> Result<usize> {
    check_len(x, y)?;
    Ok(x.distance_unchecked(y))
}

/// Distance from the all-zero word.
pub fn hamming_weight(x: &BitVector) -> usize {
    x.weight()
}

/// The word `0^{k-i} 1^i`, the canonical representative of weight `i`.
pub fn canonical_weight_vector(k: usize, i: usize) -> Result<BitVector> {
    if i > k {
        return Err(FccError::arg(format!("weight {i} exceeds length {k}")));
    }
    let mut v = BitVector::try_zeros(k)?;
    for c in k - i..k {
        v.set(c, true);
    }
    Ok(v)
}

/// Symbol-pair distance: the number of cyclic positions `i` at which the
/// pairs `(x_i, x_{i+1})` and `(y_i, y_{i+1})` differ.
pub fn symbol_pair_distance(x: &BitVector, y: &BitVector) -> Result<usize> {
    check_len(x, y)?;
    if x.len < 2 {
        return Err(FccError::arg(
            "symbol-pair distance needs length at least 2",
        ));
    }
    let diff = x.xor_unchecked(y);
    let next = diff.rotate_to_front();
    Ok(diff
        .words
        .iter()
        .zip(&next.words)
        .map(|(a, b)| (a | b).count_ones() as usize)
        .sum())
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = FccError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVector::try_zeros(s.len())?;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(FccError::parse(format!(
                        "unexpected character {other:?} in bitstring"
                    )))
                }
            }
        }
        Ok(v)
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
