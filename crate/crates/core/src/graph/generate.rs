use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "{name} must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Erdős–Rényi `G(n, p)`: every unordered pair is included independently
/// with probability `edge_prob`. Pairs are visited in lexicographic order.
///
/// An edgeless result is returned as-is.
pub fn generate_er(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    check_probability("edge probability", edge_prob)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < edge_prob {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges)
}

/// Watts–Strogatz small-world graph.
///
/// Starts from a ring lattice where every node links to its `k / 2` nearest
/// neighbours on each side. Then, for each offset `1..=k/2` and each node `u`,
/// the lattice edge `(u, u + offset)` is rewired with probability
/// `rewire_prob` to `(u, w)`, where `w` is drawn uniformly from the nodes that
/// are neither `u` nor already adjacent to `u`. Nodes that are already
/// adjacent to every other node are skipped.
pub fn generate_ws(n: usize, k: usize, rewire_prob: f64, seed: u64) -> Result<Graph> {
    check_probability("rewire probability", rewire_prob)?;
    if k % 2 != 0 || k < 2 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "neighbour count k must be even with 2 <= k < n; got k = {k}, n = {n}"
        )));
    }
    let mut adj = vec![vec![false; n]; n];
    for u in 0..n {
        for offset in 1..=k / 2 {
            let v = (u + offset) % n;
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for offset in 1..=k / 2 {
        for u in 0..n {
            let v = (u + offset) % n;
            if rng.gen::<f64>() >= rewire_prob {
                continue;
            }
            // The lattice edge may already have been moved by an earlier rewire.
            if !adj[u][v] {
                continue;
            }
            let candidates: Vec<usize> = (0..n).filter(|&w| w != u && !adj[u][w]).collect();
            let Some(&w) = candidates.choose(&mut rng) else {
                continue;
            };
            adj[u][v] = false;
            adj[v][u] = false;
            adj[u][w] = true;
            adj[w][u] = true;
        }
    }

    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::new(n, edges.filter(|&(i, j)| adj[i][j]).collect::<Vec<_>>())
}

/// Neighbour count used for Watts–Strogatz instances of size `n`:
/// `min(4, n / 2)`, rounded down to even and clamped up to 2.
pub fn ws_k_for(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "Watts-Strogatz graphs need at least 3 nodes, got {n}"
        )));
    }
    let k = 4.min(n / 2);
    Ok((k - k % 2).max(2))
}
