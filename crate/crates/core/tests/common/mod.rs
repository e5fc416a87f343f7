//! Random graph fixtures shared by the integration tests.
#![allow(dead_code)]

use losp::Graph;
use rand::Rng;

/// G(n, p), redrawn until connected (and non-bipartite when asked).
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64, non_bipartite: bool) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() && !(non_bipartite && g.is_bipartite()) {
            return g;
        }
    }
}

/// Every subset of `0..n` as a bitmask, skipping the empty set.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}
