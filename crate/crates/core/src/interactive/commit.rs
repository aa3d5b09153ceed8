//! Salted SHA-256 commitments over canonical little-endian encodings.

use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};
use sha2::{Digest as _, Sha256};

pub const SALT_LEN: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Salt(pub [u8; SALT_LEN]);

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digest(pub [u8; 32]);

impl Salt {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Salt {
        let mut s = [0u8; SALT_LEN];
        rng.fill_bytes(&mut s);
        Salt(s)
    }
}

/// `SHA-256(entry || salt)`.
pub fn commit(entry: &[u8], salt: &Salt) -> Digest {
    let mut h = Sha256::new();
    h.update(entry);
    h.update(salt.0);
    Digest(h.finalize().into())
}

/// Adjacency-matrix entry: `u32 row || u32 col || u8 value`.
pub fn encode_entry(row: usize, col: usize, present: bool) -> [u8; 9] {
    let mut out = [0u8; 9];
    out[..4].copy_from_slice(&(row as u32).to_le_bytes());
    out[4..8].copy_from_slice(&(col as u32).to_le_bytes());
    out[8] = present as u8;
    out
}

/// Clause at a position: `u32 index || i32 lit x3`.
pub fn encode_clause(index: usize, clause: &[i32; 3]) -> [u8; 16] {
    let mut out = [0u8; 16];
    out[..4].copy_from_slice(&(index as u32).to_le_bytes());
    for (j, lit) in clause.iter().enumerate() {
        out[4 + 4 * j..8 + 4 * j].copy_from_slice(&lit.to_le_bytes());
    }
    out
}

macro_rules! hex_bytes {
    ($t:ty) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&hex::encode(self.0))
            }
        }

        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({self})", stringify!($t))
            }
        }

        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    };
}

hex_bytes!(Salt);
hex_bytes!(Digest);
