//! Pinocchio-style non-interactive proofs for a [`Qap`].
//!
//! * [`setup`] samples the secret evaluation point and scaling factors,
//!   evaluates every QAP polynomial "in the exponent" and publishes an
//!   [`EvaluationKey`] and a [`VerificationKey`].
//! * [`prove`] combines evaluation-key entries with a solution to produce the
//!   eight-element [`WitnessKey`]. It sees no secret material.
//! * [`verify`] runs the divisibility, span and coefficient-consistency
//!   pairing checks.
//!
//! The witness key is binding but carries no zero-knowledge masking terms.
//!
//! [`Qap`]: crate::qap::Qap

mod json;
mod prover;
mod setup;
mod verifier;

use thiserror::Error;

use crate::qap::QapError;

pub use prover::prove;
pub use setup::{setup, setup_with_toxic, KeyPair, Toxic};
pub use verifier::{verify, VerifyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error("pairing is not supported by the {0} backend")]
    PairingUnsupported(&'static str),
    #[error("the QAP has no constraint rows")]
    EmptyQap,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("the assignment does not satisfy the QAP; refusing to prove")]
    InvalidWitness,
    #[error("malformed key: {0}")]
    MalformedKey(String),
    #[error("key was produced by the {found} backend, expected {expected}")]
    BackendMismatch { expected: String, found: String },
    #[error("key is for modulus {found}, expected {expected}")]
    FieldMismatch { expected: String, found: String },
    #[error("missing value for public symbol `{0}`")]
    MissingPublicInput(String),
    #[error(transparent)]
    Qap(#[from] QapError),
}

/// Published by setup for the prover. Every per-symbol list is indexed by
/// the QAP's symbol order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationKey<E> {
    pub symbols: Vec<String>,
    /// Symbol indices whose values the verifier supplies; always contains 0 (one).
    pub public: Vec<usize>,
    /// `g^(s^d)` for `d = 0..=rows`.
    pub powers_of_s: Vec<E>,
    /// `g_v^(v_i(s))`
    pub v: Vec<E>,
    pub w: Vec<E>,
    pub k: Vec<E>,
    /// `g_v^(alpha_v v_i(s))`
    pub v_alpha: Vec<E>,
    pub w_alpha: Vec<E>,
    pub k_alpha: Vec<E>,
    /// `g_v^(beta v_i(s)) g_w^(beta w_i(s)) g_k^(beta k_i(s))`
    pub beta: Vec<E>,
}

/// Per-symbol entries the verifier needs to fold in a public value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicEntry<E> {
    pub index: usize,
    pub name: String,
    pub v: E,
    pub w: E,
    pub k: E,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationKey<E> {
    pub g: E,
    pub alpha_v: E,
    pub alpha_w: E,
    pub alpha_k: E,
    pub gamma: E,
    pub beta_gamma: E,
    /// `g_k^(T(s))`
    pub target: E,
    pub public: Vec<PublicEntry<E>>,
}

/// The proof: eight group elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessKey<E> {
    /// `g_v^(v(s))` over the private symbols.
    pub v: E,
    pub w: E,
    pub k: E,
    /// `g^(H(s))`
    pub h: E,
    pub v_alpha: E,
    pub w_alpha: E,
    pub k_alpha: E,
    /// `g^Z`
    pub z: E,
}

impl<E: Copy> WitnessKey<E> {
    pub const LEN: usize = 8;

    pub fn elements(&self) -> [E; 8] {
        [self.v, self.w, self.k, self.h, self.v_alpha, self.w_alpha, self.k_alpha, self.z]
    }

    pub fn from_elements(e: [E; 8]) -> Self {
        let [v, w, k, h, v_alpha, w_alpha, k_alpha, z] = e;
        Self { v, w, k, h, v_alpha, w_alpha, k_alpha, z }
    }
}
