//! Packed bit strings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A packed sequence of bits with explicit length.
///
/// Bit `t` lives in word `t / 64` at position `t % 64`. Bits past `len` in the
/// final word are always zero, so derived equality and hashing are exact.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self { words: Vec::with_capacity(bits.div_ceil(WORD)), len: 0 }
    }

    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(WORD)], len }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self { words: vec![u64::MAX; len.div_ceil(WORD)], len };
        s.clear_tail();
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Returns bit `i`. Panics if `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / WORD] |= 1u64 << (self.len % WORD);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_block(&mut self, value: u64, width: usize) {
        debug_assert!(width <= 64);
        for shift in (0..width).rev() {
            self.push((value >> shift) & 1 == 1);
        }
    }

    /// Appends every bit of `other`.
    pub fn extend_from(&mut self, other: &BitString) {
        if self.len.is_multiple_of(WORD) {
            self.words.truncate(self.len / WORD);
            self.words.extend_from_slice(&other.words);
            self.len += other.len;
        } else {
            self.extend_range(other, 0, other.len);
        }
    }

    /// Appends bits `start..start + count` of `other`.
    pub fn extend_range(&mut self, other: &BitString, start: usize, count: usize) {
        assert!(start + count <= other.len);
        for i in start..start + count {
            self.push(other.get(i));
        }
    }

    /// Copies bits `start..start + count` into a new string.
    pub fn slice(&self, start: usize, count: usize) -> BitString {
        let mut out = BitString::with_capacity(count);
        out.extend_range(self, start, count);
        out
    }

    pub fn truncate(&mut self, len: usize) {
        if len >= self.len {
            return;
        }
        self.len = len;
        self.words.truncate(len.div_ceil(WORD));
        self.clear_tail();
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Bitwise complement.
    pub fn complement(&self) -> BitString {
        let mut out = Self { words: self.words.iter().map(|w| !w).collect(), len: self.len };
        out.clear_tail();
        out
    }

    /// Bitwise XOR of two strings of equal length.
    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch { left: self.len, right: other.len });
        }
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(Self { words, len: self.len })
    }

    /// Splits the string into consecutive `k`-bit blocks, each read most
    /// significant bit first. A trailing partial block is ignored.
    pub fn blocks(&self, k: usize) -> impl Iterator<Item = u32> + '_ {
        assert!((1..=32).contains(&k));
        (0..self.len / k).map(move |b| {
            let start = b * k;
            (start..start + k).fold(0u32, |acc, i| (acc << 1) | self.get(i) as u32)
        })
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let iter = iter.into_iter();
        let mut out = BitString::with_capacity(iter.size_hint().0);
        for bit in iter {
            out.push(bit);
        }
        out
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Parses a string of `0` and `1` characters. `|`, `_` and whitespace are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitString::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                '|' | '_' => {}
                c if c.is_whitespace() => {}
                c => return Err(Error::Parse(c)),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 128 {
            write!(f, "BitString({self})")
        } else {
            write!(f, "BitString(len={}, ones={})", self.len, self.count_ones())
        }
    }
}
