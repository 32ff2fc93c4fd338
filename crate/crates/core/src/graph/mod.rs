//! Undirected simple graphs, random instance generators and classical cuts.
//!
//! Vertex partitions are encoded as integer masks: bit `i` of the mask is the
//! side of vertex `i`. The same little-endian convention indexes basis states
//! in [`crate::qaoasim`], so a cut spectrum is just [`cut_size`] applied to
//! every state index.

mod cut;
mod generate;
mod io;

pub(crate) use cut::cut_size_unchecked;
pub use cut::{cut_size, max_cut_bruteforce, one_exchange_cut, CutResult, MAX_BRUTEFORCE_NODES};
pub use generate::{generate_er, generate_ws, ws_k_for};
pub use io::{read_graph, read_graph_str, write_graph, write_graph_string};

use crate::error::{Error, Result};

/// Largest node count a [`Graph`] can hold (partitions are `u64` masks).
pub const MAX_NODES: usize = 64;

/// An undirected simple graph on vertices `0..n`.
///
/// Edges are stored normalised (`i < j`) and sorted, so two graphs with the
/// same edge set compare equal regardless of construction order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `neighbors[i]` has bit `j` set iff `(i, j)` is an edge.
    neighbors: Vec<u64>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range vertices.
    /// Edge endpoints may be given in either order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 || n > MAX_NODES {
            return Err(Error::InvalidArgument(format!(
                "node count must be in 1..={MAX_NODES}, got {n}"
            )));
        }
        let mut neighbors = vec![0u64; n];
        let mut normalised = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Validation(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::Validation(format!("self-loop on vertex {a}")));
            }
            if neighbors[a] >> b & 1 == 1 {
                return Err(Error::Validation(format!("duplicate edge ({a}, {b})")));
            }
            neighbors[a] |= 1 << b;
            neighbors[b] |= 1 << a;
            normalised.push((a.min(b), a.max(b)));
        }
        normalised.sort_unstable();
        Ok(Self {
            n,
            edges: normalised,
            neighbors,
        })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Cycle `C_n` (for `n == 2` this is the single edge).
    pub fn cycle(n: usize) -> Result<Self> {
        if n == 2 {
            return Self::new(2, [(0, 1)]);
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path `P_n` on `n` vertices.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Builds a graph from a symmetric 0/1 adjacency matrix.
    pub fn from_adjacency(adjacency: &[Vec<u8>]) -> Result<Self> {
        let n = adjacency.len();
        let mut edges = Vec::new();
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if row[i] != 0 {
                return Err(Error::Validation(format!("self-loop on vertex {i}")));
            }
            for (j, &a) in row.iter().enumerate() {
                if a > 1 || a != adjacency[j][i] {
                    return Err(Error::Validation(format!(
                        "adjacency must be symmetric 0/1; mismatch at ({i}, {j})"
                    )));
                }
                if j > i && a == 1 {
                    edges.push((i, j));
                }
            }
        }
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted edge list with `i < j` in every pair.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.neighbors[i] >> j & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].count_ones() as usize
    }

    /// Neighbour set of `i` as a bitmask.
    pub fn neighbor_mask(&self, i: usize) -> u64 {
        self.neighbors[i]
    }

    /// Dense `n x n` adjacency matrix.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.has_edge(i, j) as u8).collect())
            .collect()
    }

    /// Mask with the low `n` bits set.
    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}
