use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::KPartiteHypergraph;
use crate::matching::Matching;

/// A maximal matching built by scanning the edges in a seeded random order.
pub fn greedy_matching(h: &KPartiteHypergraph, seed: u64) -> Matching {
    let mut order: Vec<usize> = (0..h.edge_count()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut m = Matching::empty_for(h);
    for id in order {
        let e = h.edge(id);
        if m.is_free(e) {
            m.insert(e).expect("edge is free");
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::counterexample6;

    #[test]
    fn examples() {
        let empty = KPartiteHypergraph::empty(&[3, 3, 3]).unwrap();
        assert_eq!(greedy_matching(&empty, 1).len(), 0);
        for seed in 0..20 {
            let k = KPartiteHypergraph::complete(3, 5).unwrap();
            assert_eq!(greedy_matching(&k, seed).len(), 5);
            assert_eq!(greedy_matching(&counterexample6(), seed).len(), 1);
        }
    }

    #[test]
    fn deterministic_and_maximal() {
        let h = crate::constructions::build_hk(3, 7, 5).unwrap();
        let a = greedy_matching(&h, 9);
        assert_eq!(a, greedy_matching(&h, 9));
        assert!(h.edges().iter().all(|e| !a.is_free(e)));
    }
}
