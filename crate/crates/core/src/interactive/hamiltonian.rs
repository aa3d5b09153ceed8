use rand::seq::SliceRandom;
use rand::Rng;

use super::InteractiveError;

/// A simple undirected graph as a symmetric adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<bool>>,
}

impl Graph {
    /// Builds a graph on vertices `0..n`. Self-loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, InteractiveError> {
        if n < 3 {
            return Err(InteractiveError::InvalidProblem("a Hamiltonian cycle needs at least 3 vertices".into()));
        }
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(InteractiveError::InvalidProblem(format!("edge ({u}, {v}) is out of range")));
            }
            if u == v {
                return Err(InteractiveError::InvalidProblem(format!("self-loop at {u}")));
            }
            if adj[u][v] {
                return Err(InteractiveError::InvalidProblem(format!("repeated edge ({u}, {v})")));
            }
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Ok(Graph { adj })
    }

    pub fn from_matrix(adj: Vec<Vec<bool>>) -> Graph {
        Graph { adj }
    }

    pub fn vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.adj
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let n = self.vertices();
        let mut adj = vec![vec![false; n]; n];
        for u in 0..n {
            for v in 0..n {
                adj[perm[u]][perm[v]] = self.adj[u][v];
            }
        }
        Graph { adj }
    }

    /// The cycle graph through `cycle`.
    pub fn cycle(cycle: &[usize]) -> Graph {
        let n = cycle.len();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in cycle_edges(cycle) {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Graph { adj }
    }

    pub fn is_hamiltonian_cycle(&self, cycle: &[usize]) -> bool {
        is_permutation(cycle, self.vertices()) && cycle_edges(cycle).all(|(u, v)| self.adj[u][v])
    }
}

/// Consecutive pairs of `cycle`, closing back to the start.
pub fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..cycle.len()).map(move |i| (cycle[i], cycle[(i + 1) % cycle.len()]))
}

pub fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
