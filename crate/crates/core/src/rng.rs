//! Seed derivation for reproducible per-frame random streams.
//!
//! Every randomized operation draws from a ChaCha stream keyed by the run
//! seed plus a list of string labels (frame id, mesh role, ...). Streams
//! are independent of scheduling, so parallel scoring cannot change any
//! sampled value.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

fn digest(seed: u64, parts: &[&str]) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    for part in parts {
        hasher.update([0x1f]);
        hasher.update(part.as_bytes());
    }
    hasher.finalize().into()
}

/// ChaCha stream keyed by `(seed, parts...)`.
pub fn derive_rng(seed: u64, parts: &[&str]) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(digest(seed, parts))
}

/// 64-bit sub-seed keyed by `(seed, parts...)`.
pub fn derive_seed(seed: u64, parts: &[&str]) -> u64 {
    let bytes = digest(seed, parts);
    u64::from_le_bytes(bytes[..8].try_into().unwrap())
}
