//! Compile straight-line polynomial programs into Quadratic Arithmetic
//! Programs and prove their solutions with a Pinocchio-style
//! setup/prove/verify protocol. An interactive commit-and-challenge proof
//! system for Hamiltonian cycles and 3-SAT is included as a baseline.
//!
//! The pipeline is
//! [`frontend::parse_program`] → [`circuit::flatten`] → [`qap::Qap::build`]
//! → [`pinocchio::setup`] / [`pinocchio::prove`] / [`pinocchio::verify`].

pub mod circuit;
pub mod corpus;
pub mod field;
pub mod frontend;
pub mod group;
pub mod interactive;
pub mod pinocchio;
pub mod poly;
pub mod qap;
pub mod seed;

pub use field::{Fe, Field, FieldError};
pub use poly::Polynomial;
