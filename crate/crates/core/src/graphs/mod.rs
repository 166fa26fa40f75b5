//! Finite simple graphs: representation, family generators, graph6 I/O,
//! distance machinery and regularity detectors.

mod distance;
mod families;
mod field;
mod graph6;
mod spectrum;

use thiserror::Error;

use crate::linalg::IntMat;

pub use distance::{
    bfs_distance_partition, distance_matrix, is_distance_regular, is_strongly_regular,
    DistancePartition, IntersectionNumbers, SrgParams,
};
pub use families::{gen_cycle, gen_delta, gen_paley, gen_path, gen_star, PaleyConstruction};
pub use field::GaloisField;
pub use graph6::{parse_graph6, read_graph6_lines, write_graph6, Graph6Error};
pub use spectrum::{
    characteristic_polynomial, spectrum_summary, squarefree_degree, SpectrumSummary,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("eigenvalue clustering found {clusters} clusters but the exact count is {exact}")]
    ClusterMismatch { clusters: usize, exact: usize },
}

/// A finite simple graph on vertices `0..n`.
///
/// Adjacency is a symmetric bit matrix with empty diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.bits[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of common neighbours of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        let a = &self.bits[u * self.words..(u + 1) * self.words];
        let b = &self.bits[v * self.words..(v + 1) * self.words];
        a.iter()
            .zip(b)
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("indices in range");
                }
            }
        }
        g
    }

    /// The graph with vertex `x` deleted; vertices above `x` shift down by one.
    pub fn remove_vertex(&self, x: usize) -> Graph {
        let idx = |v: usize| if v > x { v - 1 } else { v };
        let mut g = Graph::empty(self.n - 1);
        for (u, v) in self.edges() {
            if u != x && v != x {
                g.add_edge(idx(u), idx(v)).expect("indices in range");
            }
        }
        g
    }

    /// The graph relabelled by `perm`: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("perm is a bijection");
        }
        g
    }

    pub fn adjacency_matrix(&self) -> IntMat {
        IntMat::from_fn(self.n, |i, j| self.has_edge(i, j) as i64)
    }

    pub fn adjacency_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.has_edge(i, j) as u8 as f64)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
