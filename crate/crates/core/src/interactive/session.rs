use rand::Rng;
use serde::Serialize;

use super::commit::{commit, encode_clause, encode_entry, Salt};
use super::hamiltonian::{cycle_edges, is_permutation, random_permutation, Graph};
use super::sat::{satisfies, Sat3, SatCipher};
use super::{
    Challenge, CipheredSolution, InteractiveError, Isomorphism, Opening, PrivateSolution, PublicProblem, Response,
    RoundCommitment,
};
use crate::seed::{derive, seeded_rng};

/// The branch a cheating prover prepares for. It answers the other one with
/// a guess that fails unless the problem happens to be solvable by it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheatStrategy {
    /// Commit to an honest cipher of the real problem.
    ExpectCipher,
    /// Commit to a different instance whose solution is known.
    ExpectSolution,
}

/// Prover-side state for one round. It answers exactly one challenge.
#[derive(Debug, Clone)]
pub struct ProverRound {
    cipher: Response,
    solution: Response,
    consumed: bool,
}

impl ProverRound {
    pub fn respond(&mut self, challenge: Challenge) -> Result<Response, InteractiveError> {
        if std::mem::replace(&mut self.consumed, true) {
            return Err(InteractiveError::RoundConsumed);
        }
        Ok(match challenge {
            Challenge::RevealCipher => self.cipher.clone(),
            Challenge::RevealSolution => self.solution.clone(),
        })
    }
}

fn commit_graph<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> (RoundCommitment, Vec<Salt>) {
    let n = g.vertices();
    let salts: Vec<Salt> = (0..n * n).map(|_| Salt::random(rng)).collect();
    let digests =
        (0..n * n).map(|i| commit(&encode_entry(i / n, i % n, g.has_edge(i / n, i % n)), &salts[i])).collect();
    (RoundCommitment::Graph { vertices: n, digests }, salts)
}

fn commit_sat<R: Rng + ?Sized>(inst: &Sat3, rng: &mut R) -> (RoundCommitment, Vec<Salt>) {
    let salts: Vec<Salt> = inst.clauses().iter().map(|_| Salt::random(rng)).collect();
    let digests = inst.clauses().iter().enumerate().map(|(j, c)| commit(&encode_clause(j, c), &salts[j])).collect();
    (RoundCommitment::Sat { variables: inst.variables(), digests }, salts)
}

/// Opens the matrix entries along `cycle` only.
fn cycle_response(cycle: Vec<usize>, salts: &[Salt]) -> Response {
    let n = cycle.len();
    let openings = cycle_edges(&cycle).map(|(u, v)| Opening { index: u * n + v, salt: salts[u * n + v] }).collect();
    Response::Solution { solution: CipheredSolution::Cycle(cycle), openings }
}

fn sat_response(inst: &Sat3, assignment: Vec<bool>, salts: &[Salt]) -> Response {
    let openings = salts.iter().enumerate().map(|(index, &salt)| Opening { index, salt }).collect();
    Response::Solution { solution: CipheredSolution::Sat { clauses: inst.clauses().to_vec(), assignment }, openings }
}

/// Honest round: cipher the problem and the solution with a fresh isomorphism.
pub fn cipher_round<R: Rng + ?Sized>(
    problem: &PublicProblem,
    solution: &PrivateSolution,
    rng: &mut R,
) -> Result<(RoundCommitment, ProverRound), InteractiveError> {
    if !problem.is_solved_by(solution)? {
        return Err(InteractiveError::InvalidSolution);
    }
    Ok(match (problem, solution) {
        (PublicProblem::HamiltonianCycle(g), PrivateSolution::Cycle(cycle)) => {
            let perm = random_permutation(g.vertices(), rng);
            let (commitment, salts) = commit_graph(&g.permute(&perm), rng);
            let ciphered = cycle.iter().map(|&v| perm[v]).collect();
            let round = ProverRound {
                solution: cycle_response(ciphered, &salts),
                cipher: Response::Cipher { isomorphism: Isomorphism::VertexPermutation(perm), salts },
                consumed: false,
            };
            (commitment, round)
        }
        (PublicProblem::Sat3(inst), PrivateSolution::Assignment(a)) => {
            let cipher = SatCipher::random(inst, rng);
            let ciphered = cipher.apply(inst);
            let (commitment, salts) = commit_sat(&ciphered, rng);
            let round = ProverRound {
                solution: sat_response(&ciphered, cipher.apply_assignment(a), &salts),
                cipher: Response::Cipher { isomorphism: Isomorphism::Sat(cipher), salts },
                consumed: false,
            };
            (commitment, round)
        }
        _ => unreachable!("kinds checked by is_solved_by"),
    })
}

/// Cheating round for a prover that knows no solution.
pub fn forge_round<R: Rng + ?Sized>(
    problem: &PublicProblem,
    strategy: CheatStrategy,
    rng: &mut R,
) -> (RoundCommitment, ProverRound) {
    match problem {
        PublicProblem::HamiltonianCycle(g) => {
            let n = g.vertices();
            let perm = random_permutation(n, rng);
            let guess = random_permutation(n, rng);
            let committed = match strategy {
                CheatStrategy::ExpectCipher => g.permute(&perm),
                CheatStrategy::ExpectSolution => Graph::cycle(&guess),
            };
            let (commitment, salts) = commit_graph(&committed, rng);
            let round = ProverRound {
                solution: cycle_response(guess, &salts),
                cipher: Response::Cipher { isomorphism: Isomorphism::VertexPermutation(perm), salts },
                consumed: false,
            };
            (commitment, round)
        }
        PublicProblem::Sat3(inst) => {
            let cipher = SatCipher::random(inst, rng);
            let guess: Vec<bool> = (0..inst.variables()).map(|_| rng.gen()).collect();
            let committed = match strategy {
                CheatStrategy::ExpectCipher => cipher.apply(inst),
                CheatStrategy::ExpectSolution => fake_instance(inst, &guess, rng),
            };
            let (commitment, salts) = commit_sat(&committed, rng);
            let round = ProverRound {
                solution: sat_response(&committed, guess, &salts),
                cipher: Response::Cipher { isomorphism: Isomorphism::Sat(cipher), salts },
                consumed: false,
            };
            (commitment, round)
        }
    }
}

/// Random clauses of the same shape, each made true under `assignment`.
fn fake_instance<R: Rng + ?Sized>(inst: &Sat3, assignment: &[bool], rng: &mut R) -> Sat3 {
    let n = inst.variables() as i32;
    let clauses = inst
        .clauses()
        .iter()
        .map(|_| {
            let mut c = [0; 3].map(|_| rng.gen_range(1..=n) * if rng.gen() { 1 } else { -1 });
            if !satisfies(&[c], assignment) {
                c[0] = -c[0];
            }
            c
        })
        .collect();
    Sat3::new(inst.variables(), clauses).expect("literals are in range")
}

/// Checks one round. Any mismatch yields `false`.
pub fn verify_round(
    problem: &PublicProblem,
    commitment: &RoundCommitment,
    challenge: Challenge,
    response: &Response,
) -> bool {
    let digests = commitment.digests();
    let opens = |entry: &[u8], index: usize, salt: &Salt| digests.get(index) == Some(&commit(entry, salt));
    match (problem, commitment, challenge, response) {
        (
            PublicProblem::HamiltonianCycle(g),
            RoundCommitment::Graph { vertices, .. },
            Challenge::RevealCipher,
            Response::Cipher { isomorphism: Isomorphism::VertexPermutation(perm), salts },
        ) => {
            let n = g.vertices();
            if *vertices != n || digests.len() != n * n || salts.len() != n * n || !is_permutation(perm, n) {
                return false;
            }
            let h = g.permute(perm);
            (0..n * n).all(|i| opens(&encode_entry(i / n, i % n, h.has_edge(i / n, i % n)), i, &salts[i]))
        }
        (
            PublicProblem::HamiltonianCycle(g),
            RoundCommitment::Graph { vertices, .. },
            Challenge::RevealSolution,
            Response::Solution { solution: CipheredSolution::Cycle(cycle), openings },
        ) => {
            let n = g.vertices();
            if *vertices != n || digests.len() != n * n || !is_permutation(cycle, n) || openings.len() != n {
                return false;
            }
            cycle_edges(cycle)
                .zip(openings)
                .all(|((u, v), o)| o.index == u * n + v && opens(&encode_entry(u, v, true), o.index, &o.salt))
        }
        (
            PublicProblem::Sat3(inst),
            RoundCommitment::Sat { variables, .. },
            Challenge::RevealCipher,
            Response::Cipher { isomorphism: Isomorphism::Sat(cipher), salts },
        ) => {
            let m = inst.clauses().len();
            if *variables != inst.variables() || digests.len() != m || salts.len() != m || !cipher.fits(inst) {
                return false;
            }
            let ciphered = cipher.apply(inst);
            ciphered.clauses().iter().enumerate().all(|(j, c)| opens(&encode_clause(j, c), j, &salts[j]))
        }
        (
            PublicProblem::Sat3(inst),
            RoundCommitment::Sat { variables, .. },
            Challenge::RevealSolution,
            Response::Solution { solution: CipheredSolution::Sat { clauses, assignment }, openings },
        ) => {
            let m = inst.clauses().len();
            if *variables != inst.variables()
                || digests.len() != m
                || clauses.len() != m
                || openings.len() != m
                || assignment.len() != inst.variables()
            {
                return false;
            }
            let opened = clauses
                .iter()
                .zip(openings)
                .enumerate()
                .all(|(j, (c, o))| o.index == j && opens(&encode_clause(j, c), j, &o.salt));
            opened && satisfies(clauses, assignment)
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Prover<'a> {
    Honest(&'a PrivateSolution),
    /// Picks a [`CheatStrategy`] uniformly at random each round.
    Cheating,
}

#[derive(Debug, Clone, Serialize)]
pub struct TranscriptRound {
    pub round: usize,
    pub commitment: RoundCommitment,
    pub challenge: Challenge,
    pub response: Response,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Session {
    pub accepted: bool,
    pub rounds: usize,
    pub transcript: Vec<TranscriptRound>,
}

impl Session {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("transcript serializes");
        s.push('\n');
        s
    }
}

/// Runs up to `rounds` rounds, stopping at the first rejected one. Prover and
/// verifier draw from independent streams derived from `seed`.
pub fn run_session(
    problem: &PublicProblem,
    prover: Prover<'_>,
    rounds: usize,
    seed: &[u8],
) -> Result<Session, InteractiveError> {
    if rounds == 0 {
        return Err(InteractiveError::NoRounds);
    }
    if let Prover::Honest(solution) = prover {
        if !problem.is_solved_by(solution)? {
            return Err(InteractiveError::InvalidSolution);
        }
    }
    let mut prover_rng = seeded_rng(&derive(seed, b"prover"));
    let mut verifier_rng = seeded_rng(&derive(seed, b"verifier"));
    let mut transcript = Vec::new();
    for round in 1..=rounds {
        let (commitment, mut state) = match prover {
            Prover::Honest(solution) => cipher_round(problem, solution, &mut prover_rng)?,
            Prover::Cheating => {
                let strategy =
                    if prover_rng.gen() { CheatStrategy::ExpectCipher } else { CheatStrategy::ExpectSolution };
                forge_round(problem, strategy, &mut prover_rng)
            }
        };
        let challenge = Challenge::from_coin(verifier_rng.gen());
        let response = state.respond(challenge)?;
        let verdict = verify_round(problem, &commitment, challenge, &response);
        transcript.push(TranscriptRound { round, commitment, challenge, response, verdict });
        if !verdict {
            return Ok(Session { accepted: false, rounds, transcript });
        }
    }
    Ok(Session { accepted: true, rounds, transcript })
}

/// Number of accepted sessions among `repeat` independent ones; session `i`
/// uses `seed || i` (u64 little-endian).
pub fn acceptance_count(
    problem: &PublicProblem,
    prover: Prover<'_>,
    rounds: usize,
    seed: &[u8],
    repeat: u64,
) -> Result<u64, InteractiveError> {
    let mut accepted = 0;
    let mut session_seed = seed.to_vec();
    for i in 0..repeat {
        session_seed.truncate(seed.len());
        session_seed.extend_from_slice(&i.to_le_bytes());
        accepted += run_session(problem, prover, rounds, &session_seed)?.accepted as u64;
    }
    Ok(accepted)
}
