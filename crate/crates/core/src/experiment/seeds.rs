use super::Model;

/// Which stochastic component a derived seed drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedRole {
    Graph,
    Baseline,
    Swarm,
}

impl SeedRole {
    fn tag(self) -> u64 {
        match self {
            SeedRole::Graph => 0x6772_6170_68, // "graph"
            SeedRole::Baseline => 0x6261_7365,  // "base"
            SeedRole::Swarm => 0x7377_6172_6d,  // "swarm"
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable 64-bit seed for one stochastic role of one suite cell.
///
/// Graph seeds are derived with `p = 0` so one instance is shared by every depth.
pub fn derive_seed(base: u64, model: Model, graph_index: usize, n: usize, p: usize, role: SeedRole) -> u64 {
    [model.tag(), graph_index as u64, n as u64, p as u64, role.tag()]
        .into_iter()
        .fold(splitmix64(base), |h, field| splitmix64(h ^ field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn stable_values() {
        // frozen: changing the derivation silently changes every suite result
        assert_eq!(splitmix64(0), 0xe220_a839_7b1d_cdaf);
        let a = derive_seed(1, Model::Er, 1, 3, 1, SeedRole::Swarm);
        assert_eq!(a, derive_seed(1, Model::Er, 1, 3, 1, SeedRole::Swarm));
    }

    #[test]
    fn distinct_over_default_suite() {
        let mut seen = HashSet::new();
        for base in [0u64, 1, 42] {
            for model in [Model::Er, Model::Ws] {
                for idx in 1..=5 {
                    for n in 3..=24 {
                        assert!(seen.insert(derive_seed(base, model, idx, n, 0, SeedRole::Graph)));
                        for p in 1..=3 {
                            assert!(seen.insert(derive_seed(base, model, idx, n, p, SeedRole::Baseline)));
                            assert!(seen.insert(derive_seed(base, model, idx, n, p, SeedRole::Swarm)));
                        }
                    }
                }
            }
        }
    }
}
