//! Synthetic graphs with planted communities, and seed selection.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

const MAX_RETRIES: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct PlantedPartitionSpec {
    pub blocks: usize,
    pub block_size: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub rng_seed: u64,
}

impl PlantedPartitionSpec {
    pub fn validate(&self) -> Result<()> {
        if self.blocks == 0 || self.block_size == 0 {
            return Err(Error::InvalidParameter("blocks and block_size must be positive".into()));
        }
        if !(0.0 <= self.p_out && self.p_out < self.p_in && self.p_in <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= p_out < p_in <= 1, got p_in={} p_out={}",
                self.p_in, self.p_out
            )));
        }
        Ok(())
    }
}

/// Samples a planted-partition graph, redrawing until it is connected.
/// Block `b` holds nodes `b·block_size .. (b+1)·block_size`.
pub fn generate_planted_partition(spec: &PlantedPartitionSpec) -> Result<(Graph, Vec<NodeSet>)> {
    spec.validate()?;
    let n = spec.blocks * spec.block_size;
    let block = |v: usize| v / spec.block_size;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    for _ in 0..MAX_RETRIES {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let p = if block(u) == block(v) { spec.p_in } else { spec.p_out };
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if g.is_connected() {
            let truth = (0..spec.blocks)
                .map(|b| (b * spec.block_size..(b + 1) * spec.block_size).collect())
                .collect();
            return Ok((g, truth));
        }
    }
    Err(Error::Precondition(format!(
        "no connected sample in {MAX_RETRIES} attempts"
    )))
}

/// `count` cliques of `size` nodes in a ring; the last node of each clique is
/// joined to the first node of the next by a single bridge edge.
pub fn ring_of_cliques(count: usize, size: usize) -> (Graph, Vec<NodeSet>) {
    let mut edges = Vec::new();
    for c in 0..count {
        let base = c * size;
        for i in 0..size {
            for j in i + 1..size {
                edges.push((base + i, base + j));
            }
        }
        if count > 1 {
            edges.push((base + size - 1, ((c + 1) % count) * size));
        }
    }
    let g = Graph::from_edges(count * size, &edges).expect("edges are in range");
    let cliques = (0..count).map(|c| (c * size..(c + 1) * size).collect()).collect();
    (g, cliques)
}

/// Uniform sample of `count` members without replacement.
pub fn pick_random_seeds(community: &NodeSet, count: usize, rng_seed: u64) -> Result<NodeSet> {
    if count > community.len() {
        return Err(Error::InvalidParameter(format!(
            "cannot pick {count} seeds from a community of {}",
            community.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    Ok(community
        .as_slice()
        .choose_multiple(&mut rng, count)
        .copied()
        .collect())
}
