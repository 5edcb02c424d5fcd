//! Seeded random streams.
//!
//! Every source of randomness in the crate is a ChaCha stream derived from a
//! 64-bit master seed and a textual label. Independent components of one task
//! (basis generation, tie-breakers, data synthesis, splits) use distinct
//! labels so their streams never overlap, and the same (seed, label) pair
//! always reproduces the same stream.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Derives a 256-bit stream key from a master seed and a list of label parts.
pub fn stream_key(master: u64, parts: &[&[u8]]) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    for part in parts {
        hasher.update((part.len() as u64).to_le_bytes());
        hasher.update(part);
    }
    hasher.finalize().into()
}

/// A random stream independent of all streams with a different (master, label).
pub fn child_rng(master: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(stream_key(master, &[label.as_bytes()]))
}

/// A 64-bit seed for handing down to a nested component.
pub fn child_seed(master: u64, label: &str) -> u64 {
    let key = stream_key(master, &[label.as_bytes()]);
    u64::from_le_bytes(key[..8].try_into().unwrap())
}
