//! Interactive commit-and-reveal zero-knowledge proofs for two NP problems.
//!
//! Each round the prover ciphers the public problem with a fresh random
//! isomorphism, commits to every entry of the ciphered instance and, on a
//! fair-coin challenge, reveals either the isomorphism or a solution of the
//! ciphered instance. A prover without a solution can prepare for only one
//! of the two challenges, so it survives `r` rounds with probability `2^-r`.
//!
//! * Hamiltonian cycle: the cipher is a vertex permutation; revealing the
//!   solution opens only the committed matrix entries on the cycle.
//! * 3-SAT: the cipher permutes variables, flips their polarities and
//!   reorders clauses; revealing the solution opens the whole instance.

mod commit;
mod hamiltonian;
mod sat;
mod session;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use commit::{commit, encode_clause, encode_entry, Digest, Salt, SALT_LEN};
pub use hamiltonian::{cycle_edges, is_permutation, Graph};
pub use sat::{satisfies, Sat3, SatCipher};
pub use session::{
    acceptance_count, cipher_round, forge_round, run_session, verify_round, CheatStrategy, Prover, ProverRound,
    Session, TranscriptRound,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InteractiveError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("the private solution does not solve the problem")]
    InvalidSolution,
    #[error("the solution kind does not match the problem kind")]
    SolutionKindMismatch,
    #[error("the problem file carries no solution")]
    MissingSolution,
    #[error("this round has already answered a challenge")]
    RoundConsumed,
    #[error("a session needs at least one round")]
    NoRounds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PublicProblem {
    HamiltonianCycle(Graph),
    Sat3(Sat3),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrivateSolution {
    /// Vertices in cycle order.
    Cycle(Vec<usize>),
    /// Truth value of variable `i` at index `i - 1`.
    Assignment(Vec<bool>),
}

impl PublicProblem {
    pub fn is_solved_by(&self, solution: &PrivateSolution) -> Result<bool, InteractiveError> {
        match (self, solution) {
            (PublicProblem::HamiltonianCycle(g), PrivateSolution::Cycle(c)) => Ok(g.is_hamiltonian_cycle(c)),
            (PublicProblem::Sat3(s), PrivateSolution::Assignment(a)) => {
                Ok(a.len() == s.variables() && s.satisfied_by(a))
            }
            _ => Err(InteractiveError::SolutionKindMismatch),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Challenge {
    RevealCipher,
    RevealSolution,
}

impl Challenge {
    pub fn from_coin(heads: bool) -> Challenge {
        if heads {
            Challenge::RevealCipher
        } else {
            Challenge::RevealSolution
        }
    }
}

/// The per-round isomorphism. For graphs, vertex `v` becomes `perm[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Isomorphism {
    VertexPermutation(Vec<usize>),
    Sat(SatCipher),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CipheredSolution {
    Cycle(Vec<usize>),
    Sat { clauses: Vec<[i32; 3]>, assignment: Vec<bool> },
}

/// A salt for the committed entry at `index` (row-major for matrices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Opening {
    pub index: usize,
    pub salt: Salt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Response {
    Cipher { isomorphism: Isomorphism, salts: Vec<Salt> },
    Solution { solution: CipheredSolution, openings: Vec<Opening> },
}

impl Response {
    pub fn opened(&self) -> usize {
        match self {
            Response::Cipher { salts, .. } => salts.len(),
            Response::Solution { openings, .. } => openings.len(),
        }
    }
}

/// Commitments to a ciphered instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RoundCommitment {
    /// `vertices^2` digests of the permuted adjacency matrix, row-major.
    Graph { vertices: usize, digests: Vec<Digest> },
    /// One digest per ciphered clause.
    Sat { variables: usize, digests: Vec<Digest> },
}

impl RoundCommitment {
    pub fn digests(&self) -> &[Digest] {
        match self {
            RoundCommitment::Graph { digests, .. } | RoundCommitment::Sat { digests, .. } => digests,
        }
    }

    pub fn digests_mut(&mut self) -> &mut Vec<Digest> {
        match self {
            RoundCommitment::Graph { digests, .. } | RoundCommitment::Sat { digests, .. } => digests,
        }
    }
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum ProblemFile {
    HamiltonianCycle { vertices: usize, edges: Vec<(usize, usize)>, solution: Option<CycleFile> },
    Sat3 { variables: usize, clauses: Vec<[i32; 3]>, solution: Option<AssignmentFile> },
}

#[derive(Deserialize)]
struct CycleFile {
    cycle: Vec<usize>,
}

#[derive(Deserialize)]
struct AssignmentFile {
    assignment: Vec<bool>,
}

/// Parses a problem file. An included solution is checked against the problem.
pub fn load_problem(json: &str) -> Result<(PublicProblem, Option<PrivateSolution>), InteractiveError> {
    let file: ProblemFile = serde_json::from_str(json).map_err(|e| InteractiveError::InvalidProblem(e.to_string()))?;
    let (problem, solution) = match file {
        ProblemFile::HamiltonianCycle { vertices, edges, solution } => (
            PublicProblem::HamiltonianCycle(Graph::new(vertices, &edges)?),
            solution.map(|s| PrivateSolution::Cycle(s.cycle)),
        ),
        ProblemFile::Sat3 { variables, clauses, solution } => (
            PublicProblem::Sat3(Sat3::new(variables, clauses)?),
            solution.map(|s| PrivateSolution::Assignment(s.assignment)),
        ),
    };
    if let Some(s) = &solution {
        if !problem.is_solved_by(s)? {
            return Err(InteractiveError::InvalidSolution);
        }
    }
    Ok((problem, solution))
}
