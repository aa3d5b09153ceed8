//! Seed handling shared by every randomized component.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

pub type SeededRng = ChaCha20Rng;

/// ChaCha20 keyed by SHA-256 of the seed bytes, so seeds of any length
/// (including the empty seed) map to a full 256-bit key.
pub fn seeded_rng(seed: &[u8]) -> SeededRng {
    ChaCha20Rng::from_seed(Sha256::digest(seed).into())
}

/// Domain-separated sub-seed: `seed || 0x00 || label`.
pub fn derive(seed: &[u8], label: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(seed.len() + 1 + label.len());
    out.extend_from_slice(seed);
    out.push(0);
    out.extend_from_slice(label);
    out
}
