//! Mapping input-space values to hypervectors.
//!
//! Scalars quantize to the nearest point of an even grid over an interval
//! and index a level basis; angles quantize to the nearest of m equidistant
//! circle points and index a circular basis; symbols map one to one onto a
//! random basis. Records bundle key-value bindings, tuples bind their
//! elements, and the label codec adds the inverse mapping needed to read
//! predictions back out of a regression memory.

use std::collections::HashMap;
use std::f64::consts::TAU;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basis::{BasisKind, BasisSet};
use crate::error::{Error, Result};
use crate::hv::{bind, permute, BundleAccumulator, Hypervector};
use crate::rng::{child_rng, stream_key};

/// `m` points placed evenly over [a, b], the first at a and the last at b.
#[derive(Clone, Debug)]
pub struct UniformGrid {
    a: f64,
    b: f64,
    points: Vec<f64>,
}

impl UniformGrid {
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFinite { what: "lower bound", value: a });
        }
        if !b.is_finite() {
            return Err(Error::NonFinite { what: "upper bound", value: b });
        }
        if !(b > a) {
            return Err(Error::EmptyInterval { a, b });
        }
        if m < 2 {
            return Err(Error::SetTooSmall { min: 2, got: m });
        }
        let mut points: Vec<f64> = (0..m)
            .map(|i| a + i as f64 * (b - a) / (m - 1) as f64)
            .collect();
        points[0] = a;
        points[m - 1] = b;
        Ok(Self { a, b, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> f64 {
        self.points[i]
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Index of the grid point nearest `x`, out-of-range values clamping to
    /// the end points and exact midpoints resolving to the lower index.
    pub fn index_of(&self, x: f64) -> Result<usize> {
        if !x.is_finite() {
            return Err(Error::NonFinite { what: "value", value: x });
        }
        let m = self.points.len();
        if x <= self.a {
            return Ok(0);
        }
        if x >= self.b {
            return Ok(m - 1);
        }
        let t = (x - self.a) / (self.b - self.a) * (m - 1) as f64;
        let guess = ((t - 0.5).ceil() as usize).min(m - 1);
        // Re-check the neighbors so float drift in t cannot move the result.
        let mut best = guess;
        let mut best_gap = (x - self.points[guess]).abs();
        for cand in [guess.saturating_sub(1), guess + 1] {
            if cand < m {
                let gap = (x - self.points[cand]).abs();
                if gap < best_gap || (gap == best_gap && cand < best) {
                    best = cand;
                    best_gap = gap;
                }
            }
        }
        Ok(best)
    }
}

/// Quantizes an interval [a, b] onto a level basis of the same size.
#[derive(Clone, Debug)]
pub struct ScalarQuantizer {
    grid: UniformGrid,
    basis: BasisSet,
}

impl ScalarQuantizer {
    pub fn new(a: f64, b: f64, basis: BasisSet) -> Result<Self> {
        if basis.kind() != BasisKind::Level {
            return Err(Error::WrongBasisKind { expected: BasisKind::Level, got: basis.kind() });
        }
        let grid = UniformGrid::new(a, b, basis.len())?;
        Ok(Self { grid, basis })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn basis(&self) -> &BasisSet {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn quantize(&self, x: f64) -> Result<usize> {
        self.grid.index_of(x)
    }

    pub fn encode(&self, x: f64) -> Result<&Hypervector> {
        Ok(self.basis.get(self.quantize(x)?))
    }
}

/// Quantizes angles onto a circular basis: bin `i` stands for the angle
/// `i * 2 pi / m`, inputs wrap into [0, 2 pi).
#[derive(Clone, Debug)]
pub struct AngleQuantizer {
    basis: BasisSet,
}

impl AngleQuantizer {
    pub fn new(basis: BasisSet) -> Result<Self> {
        if basis.kind() != BasisKind::Circular {
            return Err(Error::WrongBasisKind {
                expected: BasisKind::Circular,
                got: basis.kind(),
            });
        }
        Ok(Self { basis })
    }

    pub fn basis(&self) -> &BasisSet {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Center angle of bin `i`.
    pub fn center(&self, i: usize) -> f64 {
        i as f64 * TAU / self.basis.len() as f64
    }

    /// Nearest bin center with wrap-around, equidistant angles resolving to
    /// the lower index.
    pub fn quantize(&self, theta: f64) -> Result<usize> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { what: "angle", value: theta });
        }
        let m = self.basis.len();
        let t = theta.rem_euclid(TAU);
        let width = TAU / m as f64;
        let guess = ((t / width - 0.5).ceil() as isize).rem_euclid(m as isize) as usize;
        let mut candidates = [(guess + m - 1) % m, guess, (guess + 1) % m];
        candidates.sort_unstable();
        let wrapped_gap = |i: usize| {
            let diff = (t - self.center(i)).abs();
            diff.min(TAU - diff)
        };
        let mut best = candidates[0];
        let mut best_gap = wrapped_gap(best);
        for &cand in &candidates[1..] {
            let gap = wrapped_gap(cand);
            if gap < best_gap {
                best = cand;
                best_gap = gap;
            }
        }
        Ok(best)
    }

    pub fn encode(&self, theta: f64) -> Result<&Hypervector> {
        Ok(self.basis.get(self.quantize(theta)?))
    }
}

/// Invertible scalar codec for regression labels.
#[derive(Clone, Debug)]
pub struct LabelCodec {
    quantizer: ScalarQuantizer,
}

impl LabelCodec {
    pub fn new(quantizer: ScalarQuantizer) -> Self {
        Self { quantizer }
    }

    pub fn quantizer(&self) -> &ScalarQuantizer {
        &self.quantizer
    }

    pub fn dim(&self) -> usize {
        self.quantizer.basis().dim()
    }

    pub fn encode(&self, y: f64) -> Result<&Hypervector> {
        self.quantizer.encode(y)
    }

    /// Grid value of the label vector nearest `v`; always answers, ties on
    /// distance resolving to the lower index.
    pub fn decode(&self, v: &Hypervector) -> Result<f64> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.dim() });
        }
        let basis = self.quantizer.basis();
        let mut best = 0usize;
        let mut best_distance = u64::MAX;
        for i in 0..basis.len() {
            let dist: u64 = basis
                .get(i)
                .words()
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a ^ b).count_ones() as u64)
                .sum();
            if dist < best_distance {
                best = i;
                best_distance = dist;
            }
        }
        Ok(self.quantizer.grid().point(best))
    }
}

/// One-to-one mapping from an alphabet of symbols to a random basis.
#[derive(Clone, Debug)]
pub struct SymbolTable {
    alphabet: Vec<String>,
    index: HashMap<String, usize>,
    basis: BasisSet,
}

impl SymbolTable {
    pub fn new(alphabet: Vec<String>, basis: BasisSet) -> Result<Self> {
        if basis.kind() != BasisKind::Random {
            return Err(Error::WrongBasisKind { expected: BasisKind::Random, got: basis.kind() });
        }
        if basis.len() != alphabet.len() {
            return Err(Error::DimensionMismatch {
                expected: alphabet.len(),
                got: basis.len(),
            });
        }
        let mut index = HashMap::with_capacity(alphabet.len());
        for (i, sym) in alphabet.iter().enumerate() {
            if index.insert(sym.clone(), i).is_some() {
                return Err(Error::Schema(format!("duplicate symbol {sym:?}")));
            }
        }
        Ok(Self { alphabet, index, basis })
    }

    /// Builds the backing random basis from the alphabet size.
    pub fn generate(alphabet: Vec<String>, d: usize, seed: u64) -> Result<Self> {
        let basis = crate::basis::generate_random_set(alphabet.len().max(1), d, seed)?;
        Self::new(alphabet, basis)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn basis(&self) -> &BasisSet {
        &self.basis
    }

    pub fn vector(&self, symbol: &str) -> Result<&Hypervector> {
        let i = self
            .index
            .get(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        Ok(self.basis.get(*i))
    }

    /// Positional word encoding: the bundle over positions i = 1..n of the
    /// i-th symbol's vector cyclically shifted by i. The tie-breaker stream
    /// is keyed on the word itself, so distinct words stay decorrelated
    /// while repeated encodings of one word are identical.
    pub fn encode_sequence(&self, word: &[&str]) -> Result<Hypervector> {
        if word.is_empty() {
            return Err(Error::EmptyOperands);
        }
        let mut acc = BundleAccumulator::new(self.basis.dim())?;
        for (i, symbol) in word.iter().enumerate() {
            let shifted = permute(self.vector(symbol)?, i as i64 + 1);
            acc.accumulate(&shifted)?;
        }
        let mut parts: Vec<&[u8]> = vec![b"sequence-tiebreak"];
        for symbol in word {
            parts.push(symbol.as_bytes());
        }
        let mut tie_rng = ChaCha8Rng::from_seed(stream_key(self.basis.seed(), &parts));
        let tie = Hypervector::random(self.basis.dim(), &mut tie_rng)?;
        acc.finalize(&tie)
    }
}

/// Record encoding: the bundle over fields of key bound to value. Field
/// order does not matter as long as values keep their keys.
pub fn encode_record(keys: &BasisSet, values: &[Hypervector]) -> Result<Hypervector> {
    if values.is_empty() {
        return Err(Error::EmptyOperands);
    }
    if keys.len() < values.len() {
        return Err(Error::TooFewKeys { keys: keys.len(), values: values.len() });
    }
    let d = keys.dim();
    let mut acc = BundleAccumulator::new(d)?;
    for (key_index, value) in values.iter().enumerate() {
        acc.accumulate(&bind(keys.get(key_index), value)?)?;
    }
    let tie = Hypervector::random(d, &mut child_rng(keys.seed(), "record-tiebreak"))?;
    acc.finalize(&tie)
}

/// Tuple encoding: the binding of all values. Order never matters since
/// XOR commutes.
pub fn encode_tuple(values: &[Hypervector]) -> Result<Hypervector> {
    let mut iter = values.iter();
    let first = iter.next().ok_or(Error::EmptyOperands)?;
    let mut out = first.clone();
    for v in iter {
        out = bind(&out, v)?;
    }
    Ok(out)
}

/// Convenience constructor for a label codec over [a, b] with `m` levels.
pub fn label_codec(a: f64, b: f64, m: usize, d: usize, seed: u64) -> Result<LabelCodec> {
    let basis = crate::basis::generate_level_set(m, d, seed)?;
    Ok(LabelCodec::new(ScalarQuantizer::new(a, b, basis)?))
}
