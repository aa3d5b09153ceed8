use rand::Rng;
use serde::Serialize;

use super::hamiltonian::{is_permutation, random_permutation};
use super::InteractiveError;

/// A 3-SAT instance over variables `1..=variables`. Literal `-i` is the
/// negation of variable `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sat3 {
    variables: usize,
    clauses: Vec<[i32; 3]>,
}

impl Sat3 {
    pub fn new(variables: usize, clauses: Vec<[i32; 3]>) -> Result<Sat3, InteractiveError> {
        if variables == 0 || variables > i32::MAX as usize {
            return Err(InteractiveError::InvalidProblem("variable count out of range".into()));
        }
        if let Some(bad) = clauses.iter().flatten().find(|l| **l == 0 || l.unsigned_abs() as usize > variables) {
            return Err(InteractiveError::InvalidProblem(format!("literal {bad} is out of range")));
        }
        Ok(Sat3 { variables, clauses })
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        satisfies(&self.clauses, assignment)
    }
}

fn literal_true(lit: i32, assignment: &[bool]) -> bool {
    assignment[lit.unsigned_abs() as usize - 1] == (lit > 0)
}

/// Every clause has a true literal. Out-of-range literals count as false.
pub fn satisfies(clauses: &[[i32; 3]], assignment: &[bool]) -> bool {
    clauses.iter().all(|c| {
        c.iter().any(|&l| l != 0 && (l.unsigned_abs() as usize) <= assignment.len() && literal_true(l, assignment))
    })
}

/// Renames variable `i` to `permutation[i-1] + 1`, flips its polarity when
/// `flips[i-1]` is set, and moves clause `j` to position `clause_order[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatCipher {
    pub permutation: Vec<usize>,
    pub flips: Vec<bool>,
    pub clause_order: Vec<usize>,
}

impl SatCipher {
    pub fn random<R: Rng + ?Sized>(instance: &Sat3, rng: &mut R) -> SatCipher {
        let n = instance.variables;
        SatCipher {
            permutation: random_permutation(n, rng),
            flips: (0..n).map(|_| rng.gen()).collect(),
            clause_order: random_permutation(instance.clauses.len(), rng),
        }
    }

    pub fn identity(instance: &Sat3) -> SatCipher {
        SatCipher {
            permutation: (0..instance.variables).collect(),
            flips: vec![false; instance.variables],
            clause_order: (0..instance.clauses.len()).collect(),
        }
    }

    /// Whether this cipher is well formed for `instance`.
    pub fn fits(&self, instance: &Sat3) -> bool {
        is_permutation(&self.permutation, instance.variables)
            && self.flips.len() == instance.variables
            && is_permutation(&self.clause_order, instance.clauses.len())
    }

    fn literal(&self, lit: i32) -> i32 {
        let v = lit.unsigned_abs() as usize - 1;
        let renamed = self.permutation[v] as i32 + 1;
        if (lit > 0) != self.flips[v] {
            renamed
        } else {
            -renamed
        }
    }

    pub fn apply(&self, instance: &Sat3) -> Sat3 {
        let mut clauses = vec![[0; 3]; instance.clauses.len()];
        for (j, c) in instance.clauses.iter().enumerate() {
            clauses[self.clause_order[j]] = c.map(|l| self.literal(l));
        }
        Sat3 { variables: instance.variables, clauses }
    }

    pub fn apply_assignment(&self, assignment: &[bool]) -> Vec<bool> {
        let mut out = vec![false; assignment.len()];
        for (i, &a) in assignment.iter().enumerate() {
            out[self.permutation[i]] = a != self.flips[i];
        }
        out
    }
}
