//! Bit-packed binary hypervectors and the three operations on them:
//! binding (XOR), bundling (bit majority), and cyclic-shift permutation,
//! together with normalized Hamming distance and similarity.
//!
//! A hypervector is immutable once built. All operations are pure functions,
//! so values can be shared freely across threads.

use std::fmt;
use std::io::{Read, Write};

use rand::RngCore;

use crate::error::{Error, Result};

/// A dense binary vector of fixed dimensionality `d`.
///
/// Bits are packed into little-endian `u64` words, bit `j` living at
/// `words[j / 64]` bit `j % 64`. Unused high bits of the last word are
/// always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypervector {
    words: Vec<u64>,
    d: usize,
}

fn words_for(d: usize) -> usize {
    d.div_ceil(64)
}

fn tail_mask(d: usize) -> u64 {
    match d % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl Hypervector {
    /// The all-zeros vector.
    pub fn zeros(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension);
        }
        Ok(Self { words: vec![0; words_for(d)], d })
    }

    /// Samples each bit independently with probability 1/2 from `rng`.
    pub fn random(d: usize, rng: &mut impl RngCore) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension);
        }
        let n = words_for(d);
        let mut words = Vec::with_capacity(n);
        for _ in 0..n {
            words.push(rng.next_u64());
        }
        *words.last_mut().unwrap() &= tail_mask(d);
        Ok(Self { words, d })
    }

    /// Builds a vector from explicit bits. Mainly useful in tests.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidDimension);
        }
        let mut hv = Self::zeros(bits.len())?;
        for (j, &b) in bits.iter().enumerate() {
            if b {
                hv.words[j / 64] |= 1 << (j % 64);
            }
        }
        Ok(hv)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn bit(&self, j: usize) -> bool {
        debug_assert!(j < self.d);
        (self.words[j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Flips every bit.
    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        *words.last_mut().unwrap() &= tail_mask(self.d);
        Self { words, d: self.d }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: other.d });
        }
        Ok(())
    }

    /// Textual form, one '0' or '1' per bit, lowest index first.
    pub fn to_bit_string(&self) -> String {
        (0..self.d).map(|j| if self.bit(j) { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        let bits: Result<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Format(format!("invalid bit character {other:?}"))),
            })
            .collect();
        Self::from_bits(&bits?)
    }

    /// Serializes as a little-endian u64 length prefix followed by the
    /// packed little-endian words.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(&(self.d as u64).to_le_bytes())?;
        for word in &self.words {
            w.write_all(&word.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        let d = u64::from_le_bytes(buf) as usize;
        if d == 0 {
            return Err(Error::Format("zero dimensionality".into()));
        }
        let hv = Self::read_packed(r, d)?;
        Ok(hv)
    }

    /// Reads just the packed words of a vector whose dimensionality is known
    /// from surrounding context.
    pub(crate) fn read_packed(r: &mut impl Read, d: usize) -> Result<Self> {
        let mut words = vec![0u64; words_for(d)];
        let mut buf = [0u8; 8];
        for word in &mut words {
            r.read_exact(&mut buf)?;
            *word = u64::from_le_bytes(buf);
        }
        if *words.last().unwrap() & !tail_mask(d) != 0 {
            return Err(Error::Format("nonzero padding bits".into()));
        }
        Ok(Self { words, d })
    }

    pub(crate) fn write_packed(&self, w: &mut impl Write) -> Result<()> {
        for word in &self.words {
            w.write_all(&word.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.words.len() * 8);
        self.write_to(&mut out).expect("writing to Vec cannot fail");
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut cursor = bytes;
        Self::read_from(&mut cursor)
    }
}

impl fmt::Debug for Hypervector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d <= 64 {
            write!(f, "Hypervector(d={}, {})", self.d, self.to_bit_string())
        } else {
            write!(f, "Hypervector(d={}, ones={})", self.d, self.count_ones())
        }
    }
}

/// Element-wise XOR. Commutative, associative, and its own inverse.
pub fn bind(a: &Hypervector, b: &Hypervector) -> Result<Hypervector> {
    a.check_dim(b)?;
    let words = a.words.iter().zip(&b.words).map(|(x, y)| x ^ y).collect();
    Ok(Hypervector { words, d: a.d })
}

/// Number of differing bits.
fn popcount_distance(a: &Hypervector, b: &Hypervector) -> u64 {
    a.words
        .iter()
        .zip(&b.words)
        .map(|(x, y)| (x ^ y).count_ones() as u64)
        .sum()
}

/// Normalized Hamming distance in [0, 1].
pub fn hamming_distance(a: &Hypervector, b: &Hypervector) -> Result<f64> {
    a.check_dim(b)?;
    Ok(popcount_distance(a, b) as f64 / a.d as f64)
}

/// 1 minus the normalized Hamming distance.
pub fn similarity(a: &Hypervector, b: &Hypervector) -> Result<f64> {
    Ok(1.0 - hamming_distance(a, b)?)
}

/// Cyclic shift: bit `j` of the input lands at bit `(j + shift) mod d`.
/// Negative and oversized shifts reduce modulo `d`.
pub fn permute(a: &Hypervector, shift: i64) -> Hypervector {
    let d = a.d as i64;
    let s = (shift % d + d) % d;
    if s == 0 {
        return a.clone();
    }
    let mut out = Hypervector::zeros(a.d).unwrap();
    for j in 0..a.d {
        if a.bit(j) {
            let t = (j + s as usize) % a.d;
            out.words[t / 64] |= 1 << (t % 64);
        }
    }
    out
}

/// Signed per-position vote counts for streaming majority bundling.
///
/// `counts[j]` is the number of ones accumulated at position `j` minus the
/// number of zeros. A single accumulator is single-writer; for parallel
/// accumulation, build one per task and combine with [`BundleAccumulator::merge`],
/// which is associative and commutative.
#[derive(Clone, Debug)]
pub struct BundleAccumulator {
    counts: Vec<i32>,
    n_added: u64,
    d: usize,
}

impl BundleAccumulator {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension);
        }
        Ok(Self { counts: vec![0; d], n_added: 0, d })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> u64 {
        self.n_added
    }

    pub fn is_empty(&self) -> bool {
        self.n_added == 0
    }

    pub fn accumulate(&mut self, hv: &Hypervector) -> Result<()> {
        if hv.d != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: hv.d });
        }
        for (j, count) in self.counts.iter_mut().enumerate() {
            *count += if hv.bit(j) { 1 } else { -1 };
        }
        self.n_added += 1;
        Ok(())
    }

    /// Element-wise addition of two accumulators.
    pub fn merge(&mut self, other: &BundleAccumulator) -> Result<()> {
        if other.d != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: other.d });
        }
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        self.n_added += other.n_added;
        Ok(())
    }

    /// Majority vote over everything accumulated so far. Exact ties take the
    /// corresponding bit of `tie_breaker`.
    pub fn finalize(&self, tie_breaker: &Hypervector) -> Result<Hypervector> {
        if self.n_added == 0 {
            return Err(Error::EmptyAccumulator);
        }
        if tie_breaker.d != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: tie_breaker.d });
        }
        let mut out = Hypervector::zeros(self.d)?;
        for (j, &count) in self.counts.iter().enumerate() {
            let bit = match count {
                c if c > 0 => true,
                c if c < 0 => false,
                _ => tie_breaker.bit(j),
            };
            if bit {
                out.words[j / 64] |= 1 << (j % 64);
            }
        }
        Ok(out)
    }
}

/// Element-wise majority vote over the operands. Ties (possible only for an
/// even operand count) take the corresponding bit of `tie_breaker`, which
/// keeps bundling a deterministic, order-independent function.
pub fn bundle(operands: &[Hypervector], tie_breaker: &Hypervector) -> Result<Hypervector> {
    let first = operands.first().ok_or(Error::EmptyOperands)?;
    let mut acc = BundleAccumulator::new(first.dim())?;
    for hv in operands {
        acc.accumulate(hv)?;
    }
    acc.finalize(tie_breaker)
}
