//! Single-pass HDC learning.
//!
//! Classification keeps one prototype per class, the majority bundle of that
//! class's encoded training samples; queries go to the nearest prototype.
//! Regression keeps a single memory vector, the majority bundle of sample
//! encodings bound to their encoded labels; binding the memory with a query
//! approximately recovers the label vector, which the codec decodes.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::encode::{LabelCodec, ScalarQuantizer};
use crate::error::{Error, Result};
use crate::hv::{bind, BundleAccumulator, Hypervector};
use crate::rng::child_rng;

fn descriptor_digest(descriptor: &str) -> u64 {
    // FNV-1a, enough to notice an encoder mismatch when loading a model.
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in descriptor.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Nearest-prototype classifier: class `i` is represented by the bundle of
/// its training samples.
#[derive(Clone, Debug)]
pub struct ClassificationModel {
    class_vectors: Vec<Hypervector>,
    seed: u64,
    encoder_digest: u64,
}

impl ClassificationModel {
    pub fn classes(&self) -> usize {
        self.class_vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.class_vectors[0].dim()
    }

    pub fn class_vector(&self, i: usize) -> &Hypervector {
        &self.class_vectors[i]
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn encoder_digest(&self) -> u64 {
        self.encoder_digest
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(&[b'C'])?;
        w.write_all(&(self.class_vectors.len() as u64).to_le_bytes())?;
        w.write_all(&(self.dim() as u64).to_le_bytes())?;
        w.write_all(&self.seed.to_le_bytes())?;
        w.write_all(&self.encoder_digest.to_le_bytes())?;
        for v in &self.class_vectors {
            v.write_to(w)?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let mut tag = [0u8; 1];
        r.read_exact(&mut tag)?;
        if tag[0] != b'C' {
            return Err(Error::Format("not a classification model container".into()));
        }
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        let k = u64::from_le_bytes(buf) as usize;
        r.read_exact(&mut buf)?;
        let d = u64::from_le_bytes(buf) as usize;
        r.read_exact(&mut buf)?;
        let seed = u64::from_le_bytes(buf);
        r.read_exact(&mut buf)?;
        let encoder_digest = u64::from_le_bytes(buf);
        if k == 0 {
            return Err(Error::Format("model without classes".into()));
        }
        let mut class_vectors = Vec::with_capacity(k);
        for _ in 0..k {
            let v = Hypervector::read_from(r)?;
            if v.dim() != d {
                return Err(Error::Format("class vector dimension mismatch".into()));
            }
            class_vectors.push(v);
        }
        Ok(Self { class_vectors, seed, encoder_digest })
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(&mut BufReader::new(File::open(path)?))
    }
}

/// Builds one prototype per class label in 0..k by majority bundling.
/// Every declared class needs at least one sample; tie bits come from a
/// stream derived from `seed`.
pub fn train_classifier(
    samples: &[(Hypervector, usize)],
    k: usize,
    seed: u64,
    encoder_descriptor: &str,
) -> Result<ClassificationModel> {
    if samples.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if k == 0 {
        return Err(Error::ClassWithoutSamples(0));
    }
    let d = samples[0].0.dim();
    let mut accumulators: Vec<BundleAccumulator> = (0..k)
        .map(|_| BundleAccumulator::new(d))
        .collect::<Result<_>>()?;
    for (encoded, label) in samples {
        if *label >= k {
            return Err(Error::ClassOutOfRange { label: *label, k });
        }
        accumulators[*label].accumulate(encoded)?;
    }
    if let Some(empty) = accumulators.iter().position(|acc| acc.is_empty()) {
        return Err(Error::ClassWithoutSamples(empty));
    }
    let mut tie_rng = child_rng(seed, "classifier-tiebreak");
    let class_vectors = accumulators
        .iter()
        .map(|acc| {
            let tie = Hypervector::random(d, &mut tie_rng)?;
            acc.finalize(&tie)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationModel {
        class_vectors,
        seed,
        encoder_digest: descriptor_digest(encoder_descriptor),
    })
}

/// Index of the nearest class vector, distance ties resolving to the lowest
/// class index.
pub fn classify(model: &ClassificationModel, query: &Hypervector) -> Result<usize> {
    if query.dim() != model.dim() {
        return Err(Error::DimensionMismatch { expected: model.dim(), got: query.dim() });
    }
    let mut best = 0usize;
    let mut best_distance = u64::MAX;
    for (i, proto) in model.class_vectors.iter().enumerate() {
        let dist: u64 = proto
            .words()
            .iter()
            .zip(query.words())
            .map(|(a, b)| (a ^ b).count_ones() as u64)
            .sum();
        if dist < best_distance {
            best = i;
            best_distance = dist;
        }
    }
    Ok(best)
}

/// Associative regression memory plus the codec that reads labels back out.
#[derive(Clone, Debug)]
pub struct RegressionModel {
    memory: Hypervector,
    codec: LabelCodec,
    seed: u64,
    encoder_digest: u64,
}

impl RegressionModel {
    pub fn memory(&self) -> &Hypervector {
        &self.memory
    }

    pub fn codec(&self) -> &LabelCodec {
        &self.codec
    }

    pub fn dim(&self) -> usize {
        self.memory.dim()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn encoder_digest(&self) -> u64 {
        self.encoder_digest
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(&[b'R'])?;
        w.write_all(&self.seed.to_le_bytes())?;
        w.write_all(&self.encoder_digest.to_le_bytes())?;
        let grid = self.codec.quantizer().grid();
        w.write_all(&grid.point(0).to_le_bytes())?;
        w.write_all(&grid.point(grid.len() - 1).to_le_bytes())?;
        self.memory.write_to(w)?;
        self.codec.quantizer().basis().write_to(w)?;
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let mut tag = [0u8; 1];
        r.read_exact(&mut tag)?;
        if tag[0] != b'R' {
            return Err(Error::Format("not a regression model container".into()));
        }
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        let seed = u64::from_le_bytes(buf);
        r.read_exact(&mut buf)?;
        let encoder_digest = u64::from_le_bytes(buf);
        r.read_exact(&mut buf)?;
        let a = f64::from_le_bytes(buf);
        r.read_exact(&mut buf)?;
        let b = f64::from_le_bytes(buf);
        let memory = Hypervector::read_from(r)?;
        let basis = crate::basis::BasisSet::read_from(r)?;
        let codec = LabelCodec::new(ScalarQuantizer::new(a, b, basis)?);
        if codec.dim() != memory.dim() {
            return Err(Error::Format("label basis dimension mismatch".into()));
        }
        Ok(Self { memory, codec, seed, encoder_digest })
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(&mut BufReader::new(File::open(path)?))
    }
}

/// Bundles sample encodings bound to their encoded labels into one memory.
pub fn train_regressor(
    samples: &[(Hypervector, f64)],
    codec: LabelCodec,
    seed: u64,
    encoder_descriptor: &str,
) -> Result<RegressionModel> {
    if samples.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let d = samples[0].0.dim();
    if codec.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: codec.dim() });
    }
    let mut acc = BundleAccumulator::new(d)?;
    for (encoded, label) in samples {
        acc.accumulate(&bind(encoded, codec.encode(*label)?)?)?;
    }
    let tie = Hypervector::random(d, &mut child_rng(seed, "regressor-tiebreak"))?;
    let memory = acc.finalize(&tie)?;
    Ok(RegressionModel {
        memory,
        codec,
        seed,
        encoder_digest: descriptor_digest(encoder_descriptor),
    })
}

/// Unbinds the memory with the query and decodes the nearest label vector.
pub fn predict(model: &RegressionModel, query: &Hypervector) -> Result<f64> {
    if query.dim() != model.dim() {
        return Err(Error::DimensionMismatch { expected: model.dim(), got: query.dim() });
    }
    model.codec.decode(&bind(&model.memory, query)?)
}
