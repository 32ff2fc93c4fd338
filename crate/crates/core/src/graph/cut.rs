use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Largest graph the exhaustive MaxCut scan accepts.
pub const MAX_BRUTEFORCE_NODES: usize = 24;

/// A vertex bipartition together with the number of edges it cuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    pub value: usize,
    /// Bit `i` is the side of vertex `i`.
    pub mask: u64,
}

impl CutResult {
    /// Partition as a `0`/`1` string, vertex 0 first.
    pub fn bitstring(&self, n: usize) -> String {
        (0..n)
            .map(|i| if self.mask >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Cut size of `mask` without range checking.
///
/// Every cut edge is counted once, from its endpoint on the `1` side.
#[inline]
pub(crate) fn cut_size_unchecked(g: &Graph, mask: u64) -> usize {
    let outside = !mask;
    let mut total = 0u32;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        total += (g.neighbor_mask(i) & outside).count_ones();
        rest &= rest - 1;
    }
    total as usize
}

/// Number of edges whose endpoints fall on different sides of `mask`.
pub fn cut_size(g: &Graph, mask: u64) -> Result<usize> {
    if mask & !g.full_mask() != 0 {
        return Err(Error::InvalidArgument(format!(
            "mask {mask:#b} has bits beyond the {} graph vertices",
            g.n()
        )));
    }
    Ok(cut_size_unchecked(g, mask))
}

/// Exact MaxCut by exhaustive enumeration.
///
/// Returns the lowest mask attaining the maximum. Since a mask and its
/// complement cut the same edges, that mask always has the top vertex on the
/// `0` side, so only the lower half of the mask range is scanned. The range is
/// split across the rayon pool; the reduction keeps the sequential answer.
pub fn max_cut_bruteforce(g: &Graph) -> Result<CutResult> {
    let n = g.n();
    if n > MAX_BRUTEFORCE_NODES {
        return Err(Error::Capacity {
            n,
            max: MAX_BRUTEFORCE_NODES,
        });
    }
    let half = 1u64 << (n - 1);
    const CHUNK: u64 = 1 << 12;
    let chunks = half.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best = CutResult { value: 0, mask: c * CHUNK };
            for mask in c * CHUNK..((c + 1) * CHUNK).min(half) {
                let value = cut_size_unchecked(g, mask);
                if value > best.value {
                    best = CutResult { value, mask };
                }
            }
            best
        })
        .reduce(
            || CutResult { value: 0, mask: 0 },
            |a, b| {
                if b.value > a.value || (b.value == a.value && b.mask < a.mask) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(best)
}

/// One-exchange local search.
///
/// Starts from a seeded uniform random partition and repeatedly flips the
/// vertex with the largest positive gain (lowest index on ties) until no single
/// flip increases the cut.
pub fn one_exchange_cut(g: &Graph, seed: u64) -> CutResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = g.full_mask();
    let mut mask = rng.gen::<u64>() & full;
    loop {
        let mut best_gain = 0i64;
        let mut best_vertex = None;
        for i in 0..g.n() {
            let nb = g.neighbor_mask(i);
            let same_side = if mask >> i & 1 == 1 { nb & mask } else { nb & !mask };
            let other_side = nb & !same_side;
            let gain = same_side.count_ones() as i64 - other_side.count_ones() as i64;
            if gain > best_gain {
                best_gain = gain;
                best_vertex = Some(i);
            }
        }
        match best_vertex {
            Some(i) => mask ^= 1 << i,
            None => break,
        }
    }
    CutResult {
        value: cut_size_unchecked(g, mask),
        mask,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_er;
    use proptest::prelude::*;

    /// Direct edge-list scan, independent of the neighbour-mask counting.
    fn reference_cut(g: &Graph, mask: u64) -> usize {
        g.edges()
            .iter()
            .filter(|&&(i, j)| (mask >> i & 1) != (mask >> j & 1))
            .count()
    }

    fn reference_max_cut(g: &Graph) -> usize {
        (0..1u64 << g.n()).map(|m| reference_cut(g, m)).max().unwrap()
    }

    #[test]
    fn cut_size_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(cut_size(&k3, 0b001).unwrap(), 2);
        assert_eq!(cut_size(&k3, 0).unwrap(), 0);
        let p2 = Graph::path(2).unwrap();
        assert_eq!(cut_size(&p2, 0b01).unwrap(), 1);
        assert!(cut_size(&k3, 0b1000).is_err());
    }

    #[test]
    fn bruteforce_fixtures() {
        assert_eq!(max_cut_bruteforce(&Graph::complete(3).unwrap()).unwrap().value, 2);
        assert_eq!(max_cut_bruteforce(&Graph::cycle(4).unwrap()).unwrap().value, 4);
        assert_eq!(max_cut_bruteforce(&Graph::complete(4).unwrap()).unwrap().value, 4);
        assert_eq!(max_cut_bruteforce(&Graph::cycle(5).unwrap()).unwrap().value, 4);
        assert_eq!(max_cut_bruteforce(&Graph::empty(3).unwrap()).unwrap().value, 0);
    }

    #[test]
    fn bruteforce_capacity() {
        let g = Graph::empty(25).unwrap();
        assert!(matches!(max_cut_bruteforce(&g), Err(Error::Capacity { .. })));
    }

    #[test]
    fn one_exchange_examples() {
        assert_eq!(one_exchange_cut(&Graph::path(2).unwrap(), 3).value, 1);
        assert_eq!(one_exchange_cut(&Graph::empty(4).unwrap(), 3).value, 0);
        for seed in 0..20 {
            assert_eq!(one_exchange_cut(&Graph::complete(3).unwrap(), seed).value, 2);
        }
    }

    #[test]
    fn k3_local_optima_all_cut_two() {
        // every mask with no improving single flip cuts exactly 2 edges
        let k3 = Graph::complete(3).unwrap();
        for m in 0..8u64 {
            let v = reference_cut(&k3, m);
            let improvable = (0..3).any(|i| reference_cut(&k3, m ^ (1 << i)) > v);
            if !improvable {
                assert_eq!(v, 2);
            }
        }
    }

    proptest! {
        #[test]
        fn complement_symmetry(seed in any::<u64>(), n in 2usize..12, mask in any::<u64>()) {
            let g = generate_er(n, 0.5, seed).unwrap();
            let mask = mask & g.full_mask();
            prop_assert_eq!(
                cut_size(&g, mask).unwrap(),
                cut_size(&g, !mask & g.full_mask()).unwrap()
            );
            prop_assert_eq!(cut_size(&g, mask).unwrap(), reference_cut(&g, mask));
        }

        #[test]
        fn bruteforce_matches_independent_loop(seed in any::<u64>(), n in 1usize..=10) {
            let g = generate_er(n, 0.5, seed).unwrap();
            let best = max_cut_bruteforce(&g).unwrap();
            prop_assert_eq!(best.value, reference_max_cut(&g));
            prop_assert_eq!(reference_cut(&g, best.mask), best.value);
        }

        #[test]
        fn one_exchange_bounded_by_optimum(seed in any::<u64>(), n in 1usize..=12) {
            let g = generate_er(n, 0.5, seed).unwrap();
            let local = one_exchange_cut(&g, seed ^ 0x5555);
            prop_assert!(local.value <= max_cut_bruteforce(&g).unwrap().value);
            prop_assert_eq!(reference_cut(&g, local.mask), local.value);
            for i in 0..n {
                prop_assert!(reference_cut(&g, local.mask ^ (1 << i)) <= local.value);
            }
        }
    }
}
