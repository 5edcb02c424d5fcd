//! Basis-hypervector sets.
//!
//! Three constructions with different pairwise-distance profiles:
//!
//! * random sets: independent uniform vectors, pairwise quasi-orthogonal —
//!   for symbols and categories;
//! * level sets: expected distance grows linearly with index separation —
//!   for values on a real interval;
//! * circular sets: expected distance proportional to the angular distance
//!   between the points the vectors represent — for directional data.
//!
//! Level sets are built with an interpolation filter: two uniform endpoint
//! vectors plus a uniform filter vector over [0,1]^d, each intermediate level
//! taking bit `j` from the first endpoint while `filter[j]` stays below a
//! per-level threshold. The `r` hyperparameter in [0,1] chains several such
//! interpolation runs end to end, trading correlation preservation (r = 0)
//! against information content (r = 1, an uncorrelated set).
//!
//! Circular sets build half the circle as a level set, extract the
//! transition vectors between consecutive levels, and then reapply those
//! transitions in order to walk back to the start, which makes opposite
//! points quasi-orthogonal and distances depend only on angular separation.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hv::{bind, similarity, Hypervector};
use crate::rng::child_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Random,
    Level,
    Circular,
}

impl BasisKind {
    fn tag(self) -> u8 {
        match self {
            BasisKind::Random => 0,
            BasisKind::Level => 1,
            BasisKind::Circular => 2,
        }
    }

    fn from_tag(tag: u8) -> Result<Self> {
        match tag {
            0 => Ok(BasisKind::Random),
            1 => Ok(BasisKind::Level),
            2 => Ok(BasisKind::Circular),
            other => Err(Error::Format(format!("unknown basis kind tag {other}"))),
        }
    }
}

/// An ordered family of `m` hypervectors of one kind, together with the
/// parameters that generated it. Regenerating from the same
/// (kind, m, d, r, seed) reproduces the vectors bit for bit.
#[derive(Clone, Debug)]
pub struct BasisSet {
    kind: BasisKind,
    m: usize,
    d: usize,
    r: f64,
    seed: u64,
    vectors: Vec<Hypervector>,
}

impl BasisSet {
    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The `i`-th vector, zero-based.
    pub fn get(&self, i: usize) -> &Hypervector {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[Hypervector] {
        &self.vectors
    }

    /// Pairwise similarity, entry (i, j) = 1 - delta(v_i, v_j).
    /// Symmetric with unit diagonal.
    pub fn similarity_matrix(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.m]; self.m];
        for i in 0..self.m {
            for j in 0..self.m {
                out[i][j] = if i == j {
                    1.0
                } else {
                    similarity(&self.vectors[i], &self.vectors[j]).unwrap()
                };
            }
        }
        out
    }

    /// CSV form of the similarity matrix, one row per ordered pair,
    /// indices one-based.
    pub fn similarity_matrix_csv(&self) -> String {
        let matrix = self.similarity_matrix();
        let mut out = String::from("i,j,similarity\n");
        for (i, row) in matrix.iter().enumerate() {
            for (j, value) in row.iter().enumerate() {
                writeln!(out, "{},{},{}", i + 1, j + 1, value).unwrap();
            }
        }
        out
    }

    /// Binary container: kind byte, m, d (little-endian u64), r (IEEE-754
    /// double), seed (u64), then the packed words of each vector in order.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(&[self.kind.tag()])?;
        w.write_all(&(self.m as u64).to_le_bytes())?;
        w.write_all(&(self.d as u64).to_le_bytes())?;
        w.write_all(&self.r.to_le_bytes())?;
        w.write_all(&self.seed.to_le_bytes())?;
        for v in &self.vectors {
            v.write_packed(w)?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let mut tag = [0u8; 1];
        r.read_exact(&mut tag)?;
        let kind = BasisKind::from_tag(tag[0])?;
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        let m = u64::from_le_bytes(buf) as usize;
        r.read_exact(&mut buf)?;
        let d = u64::from_le_bytes(buf) as usize;
        r.read_exact(&mut buf)?;
        let r_value = f64::from_le_bytes(buf);
        r.read_exact(&mut buf)?;
        let seed = u64::from_le_bytes(buf);
        if m == 0 || d == 0 {
            return Err(Error::Format("empty basis container".into()));
        }
        let mut vectors = Vec::with_capacity(m);
        for _ in 0..m {
            vectors.push(Hypervector::read_packed(r, d)?);
        }
        Ok(Self { kind, m, d, r: r_value, seed, vectors })
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        Self::read_from(&mut r)
    }
}

/// Transitions between consecutive phase-1 levels of a circular set,
/// `T_i = C_i XOR C_{i+1}`. Binding them to a vector in order walks it
/// around the circle.
#[derive(Clone, Debug)]
pub struct TransitionList {
    transitions: Vec<Hypervector>,
}

impl TransitionList {
    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn get(&self, i: usize) -> &Hypervector {
        &self.transitions[i]
    }

    pub fn transitions(&self) -> &[Hypervector] {
        &self.transitions
    }
}

/// `m` independent uniform hypervectors.
pub fn generate_random_set(m: usize, d: usize, seed: u64) -> Result<BasisSet> {
    if m == 0 {
        return Err(Error::SetTooSmall { min: 1, got: m });
    }
    if d == 0 {
        return Err(Error::InvalidDimension);
    }
    let mut rng = child_rng(seed, "basis/random");
    let vectors: Result<Vec<_>> = (0..m).map(|_| Hypervector::random(d, &mut rng)).collect();
    Ok(BasisSet { kind: BasisKind::Random, m, d, r: 1.0, seed, vectors: vectors? })
}

/// One interpolation run: `steps` levels appended after `start`, drawing a
/// fresh far endpoint and a fresh filter. Level at local offset `j` takes
/// bit `b` from `start` while `filter[b] < 1 - j/n`, so offset n reproduces
/// the endpoint exactly and offset 0 would reproduce `start`.
fn extend_interpolated(
    out: &mut Vec<Hypervector>,
    steps: usize,
    n: usize,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let start = out.last().expect("chain starts non-empty").clone();
    let end = Hypervector::random(d, rng)?;
    let filter: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
    for j in 1..=steps {
        let tau = 1.0 - j as f64 / n as f64;
        let bits: Vec<bool> = (0..d)
            .map(|b| if filter[b] < tau { start.bit(b) } else { end.bit(b) })
            .collect();
        out.push(Hypervector::from_bits(&bits)?);
    }
    Ok(())
}

/// Level chain shared by the level and circular generators: a concatenation
/// of interpolation runs of `n` transitions each, the last run possibly
/// shorter. The last level of one run is the first level of the next.
fn generate_level_chain(
    m: usize,
    n: usize,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Hypervector>> {
    let mut levels = Vec::with_capacity(m);
    levels.push(Hypervector::random(d, rng)?);
    while levels.len() < m {
        let steps = n.min(m - levels.len());
        extend_interpolated(&mut levels, steps, n, d, rng)?;
    }
    Ok(levels)
}

/// Transitions per interpolation run for a set of `m` vectors: r = 0 keeps
/// one run across the whole set, r = 1 makes every vector a fresh endpoint.
/// The count is rounded to the nearest integer, ties to even, and clamped
/// to at least one.
fn transitions_per_run(m: usize, r: f64) -> usize {
    let n = r + (1.0 - r) * (m as f64 - 1.0);
    (n.round_ties_even() as usize).max(1)
}

fn check_r(r: f64) -> Result<()> {
    if !r.is_finite() || !(0.0..=1.0).contains(&r) {
        return Err(Error::ROutOfRange(r));
    }
    Ok(())
}

/// Level set with linearly growing expected distance: the expected distance
/// between levels i and j is (j - i) / (2 (m - 1)).
pub fn generate_level_set(m: usize, d: usize, seed: u64) -> Result<BasisSet> {
    generate_level_set_interpolated(m, d, 0.0, seed)
}

/// Level set generated as a chain of interpolation runs controlled by `r`.
/// r = 0 reduces to [`generate_level_set`] bit for bit; r = 1 yields a set
/// of pairwise quasi-orthogonal vectors.
pub fn generate_level_set_interpolated(m: usize, d: usize, r: f64, seed: u64) -> Result<BasisSet> {
    if m < 2 {
        return Err(Error::SetTooSmall { min: 2, got: m });
    }
    if d == 0 {
        return Err(Error::InvalidDimension);
    }
    check_r(r)?;
    let mut rng = child_rng(seed, "basis/level");
    let n = transitions_per_run(m, r);
    let vectors = generate_level_chain(m, n, d, &mut rng)?;
    Ok(BasisSet { kind: BasisKind::Level, m, d, r, seed, vectors })
}

fn circular_even(m: usize, d: usize, r: f64, rng: &mut ChaCha8Rng) -> Result<Vec<Hypervector>> {
    debug_assert!(m % 2 == 0 && m >= 4);
    let half = m / 2;
    // Phase 1: half the circle as a level chain of half + 1 vectors.
    let n = transitions_per_run(half + 1, r);
    let mut vectors = generate_level_chain(half + 1, n, d, rng)?;
    let transitions: Vec<Hypervector> = (0..half)
        .map(|i| bind(&vectors[i], &vectors[i + 1]).unwrap())
        .collect();
    // Phase 2: reapply the transitions in order to walk back toward the start.
    for i in half + 1..m {
        let next = bind(vectors.last().unwrap(), &transitions[i - half - 1])?;
        vectors.push(next);
    }
    Ok(vectors)
}

/// Circular set: expected pairwise distance is half the angular distance
/// between the equidistant circle points the vectors stand for. Odd set
/// sizes are cut as every second vector of a set of size 2m.
pub fn generate_circular_set(m: usize, d: usize, r: f64, seed: u64) -> Result<BasisSet> {
    if m < 3 {
        return Err(Error::SetTooSmall { min: 3, got: m });
    }
    if d == 0 {
        return Err(Error::InvalidDimension);
    }
    check_r(r)?;
    let mut rng = child_rng(seed, "basis/circular");
    let vectors = if m % 2 == 0 {
        circular_even(m, d, r, &mut rng)?
    } else {
        let full = circular_even(2 * m, d, r, &mut rng)?;
        full.into_iter().step_by(2).collect()
    };
    Ok(BasisSet { kind: BasisKind::Circular, m, d, r, seed, vectors })
}

/// Recovers the phase-1 transitions of an even-size circular set.
pub fn transitions(basis: &BasisSet) -> Result<TransitionList> {
    if basis.kind != BasisKind::Circular {
        return Err(Error::WrongBasisKind { expected: BasisKind::Circular, got: basis.kind });
    }
    if basis.m % 2 != 0 {
        return Err(Error::Schema(
            "transitions are defined for even-size circular sets".into(),
        ));
    }
    let list = (0..basis.m / 2)
        .map(|i| bind(&basis.vectors[i], &basis.vectors[i + 1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransitionList { transitions: list })
}

/// Distance between two angles, normalized so that a half turn is 1:
/// the wrapped absolute difference divided by pi. Symmetric, zero for
/// equal angles, and 1 for opposite ones.
pub fn angular_distance(alpha: f64, beta: f64) -> Result<f64> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite { what: "angle", value: alpha });
    }
    if !beta.is_finite() {
        return Err(Error::NonFinite { what: "angle", value: beta });
    }
    let diff = (alpha - beta).rem_euclid(TAU);
    Ok(diff.min(TAU - diff) / PI)
}
