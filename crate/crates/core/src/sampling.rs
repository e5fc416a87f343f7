//! Local sampling around the seeds: filtered BFS growth per seed, union, and
//! a short random-walk trim when the union exceeds the size budget.

use crate::diffusion::{initial_density, propagate, Direction, TransitionOperator, WalkKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeMap, NodeSet};

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingConfig {
    /// Keep expanding a seed's ball while it has fewer nodes than this.
    pub n1_lower: usize,
    /// Hard cap on the sampled subgraph size.
    pub n2_upper: usize,
    /// Expansion rounds allowed after the first BFS round.
    pub t_max_bfs: usize,
    /// Random-walk steps used to rank nodes when trimming.
    pub k_trim: usize,
    /// Frontier filtering stops once the kept nodes' degrees reach this.
    pub filter_outdeg_target: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            n1_lower: 300,
            n2_upper: 5000,
            t_max_bfs: 2,
            k_trim: 3,
            filter_outdeg_target: 3000,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        if self.n1_lower < 1 {
            return bad("n1_lower must be at least 1");
        }
        if self.n2_upper < self.n1_lower {
            return bad("n2_upper must be at least n1_lower");
        }
        if self.t_max_bfs < 1 {
            return bad("t_max_bfs must be at least 1");
        }
        if self.k_trim < 1 {
            return bad("k_trim must be at least 1");
        }
        Ok(())
    }
}

/// Induced local subgraph around the seeds.
#[derive(Clone, Debug)]
pub struct SampledSubgraph {
    pub graph: Graph,
    /// Seeds in local IDs.
    pub seeds: NodeSet,
    pub map: NodeMap,
    /// Size of the BFS union before any trimming.
    pub untrimmed_size: usize,
}

impl SampledSubgraph {
    /// Treats a whole graph as the sample, e.g. for small test graphs.
    pub fn whole(g: &Graph, seeds: &NodeSet) -> Result<Self> {
        let all: NodeSet = (0..g.node_count()).collect();
        Self::induce(g, &all, seeds, g.node_count())
    }

    fn induce(g: &Graph, nodes: &NodeSet, seeds: &NodeSet, untrimmed_size: usize) -> Result<Self> {
        let (graph, map) = g.induced_subgraph(nodes)?;
        let local = map.to_local_set(seeds);
        if local.len() != seeds.len() {
            return Err(Error::Precondition("every seed must lie in the sampled node set".into()));
        }
        Ok(SampledSubgraph {
            graph,
            seeds: local,
            map,
            untrimmed_size,
        })
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn operator(&self, kind: WalkKind) -> Result<TransitionOperator<'_>> {
        TransitionOperator::new(&self.graph, &self.seeds, kind)
    }

    /// Host-graph IDs of every sampled node.
    pub fn global_nodes(&self) -> NodeSet {
        NodeSet::new(self.map.globals().iter().copied())
    }

    pub fn to_global(&self, local: &NodeSet) -> NodeSet {
        self.map.to_global_set(local)
    }
}

/// `sources` together with all their neighbours.
pub fn bfs_closure(g: &Graph, sources: &NodeSet) -> NodeSet {
    sources
        .iter()
        .chain(sources.iter().flat_map(|u| g.neighbors(u).iter().copied()))
        .collect()
}

/// Fraction of `v`'s edges that land inside `current`.
pub fn inward_ratio(g: &Graph, current: &NodeSet, v: usize) -> Result<f64> {
    let degree = g.degree(v);
    if degree == 0 {
        return Err(Error::IsolatedNode(v));
    }
    let inward = g.neighbors(v).iter().filter(|&&u| current.contains(u)).count();
    Ok(inward as f64 / degree as f64)
}

/// Keeps the highest inward-ratio frontier nodes (ties by ascending ID) until
/// their degrees sum to at least the configured target.
pub fn filter_frontier(g: &Graph, frontier: &NodeSet, current: &NodeSet, cfg: &SamplingConfig) -> NodeSet {
    let mut ranked: Vec<(f64, usize)> = frontier
        .iter()
        .map(|v| (inward_ratio(g, current, v).unwrap_or(0.0), v))
        .collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut kept = Vec::new();
    let mut total = 0;
    for (_, v) in ranked {
        if total >= cfg.filter_outdeg_target {
            break;
        }
        kept.push(v);
        total += g.degree(v);
    }
    NodeSet::new(kept)
}

fn expand_seed(g: &Graph, seed: usize, cfg: &SamplingConfig) -> NodeSet {
    let mut ball = bfs_closure(g, &NodeSet::new([seed]));
    let mut frontier = ball.clone();
    let mut rounds = 1;
    while ball.len() < cfg.n1_lower && rounds <= cfg.t_max_bfs {
        frontier = bfs_closure(g, &filter_frontier(g, &frontier, &ball, cfg));
        ball = ball.union(&frontier);
        rounds += 1;
    }
    ball
}

/// Samples a local subgraph around `seeds` (host IDs).
pub fn sample(g: &Graph, seeds: &NodeSet, cfg: &SamplingConfig) -> Result<SampledSubgraph> {
    cfg.validate()?;
    if seeds.is_empty() {
        return Err(Error::EmptyNodeSet);
    }
    for s in seeds.iter() {
        if s >= g.node_count() {
            return Err(Error::NodeOutOfRange {
                node: s,
                n: g.node_count(),
            });
        }
        if g.degree(s) == 0 {
            return Err(Error::IsolatedNode(s));
        }
    }
    if seeds.len() > cfg.n2_upper {
        return Err(Error::InvalidParameter(format!(
            "{} seeds exceed the subgraph cap of {}",
            seeds.len(),
            cfg.n2_upper
        )));
    }

    let mut union = seeds.clone();
    for s in seeds.iter() {
        union = union.union(&expand_seed(g, s, cfg));
    }
    let untrimmed_size = union.len();

    let mut nodes = union;
    if nodes.len() > cfg.n2_upper {
        nodes = trim(g, &nodes, seeds, cfg)?;
    }

    // Trimming can strand nodes away from every seed.
    let (sub, map) = g.induced_subgraph(&nodes)?;
    let local_seeds = map.to_local_set(seeds);
    let component = sub.restrict_to_seed_component(&local_seeds)?;
    let nodes = map.to_global_set(&component);
    SampledSubgraph::induce(g, &nodes, seeds, untrimmed_size)
}

fn trim(g: &Graph, nodes: &NodeSet, seeds: &NodeSet, cfg: &SamplingConfig) -> Result<NodeSet> {
    let (sub, map) = g.induced_subgraph(nodes)?;
    let local_seeds = map.to_local_set(seeds);
    let op = TransitionOperator::new(&sub, &local_seeds, WalkKind::Standard)?;
    let p0 = initial_density(sub.node_count(), &local_seeds)?;
    let p = propagate(&op, &p0, cfg.k_trim, Direction::Regular);

    let mut ranked: Vec<usize> = (0..sub.node_count()).filter(|&v| !local_seeds.contains(v)).collect();
    ranked.sort_by(|&a, &b| p[b].total_cmp(&p[a]).then(a.cmp(&b)));
    let room = cfg.n2_upper - local_seeds.len();
    let kept = local_seeds.iter().chain(ranked.into_iter().take(room));
    Ok(NodeSet::new(kept.map(|v| map.global(v))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn clique(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(bfs_closure(&path3(), &NodeSet::new([0])), NodeSet::new([0, 1]));
        assert_eq!(bfs_closure(&clique(3), &NodeSet::new([0])), NodeSet::new(0..3));
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(bfs_closure(&star, &NodeSet::new([0])), NodeSet::new(0..5));
    }

    #[test]
    fn inward_ratios() {
        let k5 = clique(5);
        let all = NodeSet::new(0..5);
        for v in 0..5 {
            assert_eq!(inward_ratio(&k5, &all, v).unwrap(), 1.0);
        }
        assert_eq!(inward_ratio(&path3(), &NodeSet::new([0, 1]), 1).unwrap(), 0.5);
        assert_eq!(inward_ratio(&path3(), &NodeSet::new([0]), 2).unwrap(), 0.0);
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            inward_ratio(&g, &NodeSet::new([2]), 2),
            Err(Error::IsolatedNode(2))
        ));
    }

    #[test]
    fn filter_stops_at_degree_target() {
        let cfg = SamplingConfig::default();
        // Frontier degrees sum far below the target: everything kept.
        let k5 = clique(5);
        let all = NodeSet::new(0..5);
        assert_eq!(filter_frontier(&k5, &all, &all, &cfg), all);
        assert!(filter_frontier(&k5, &NodeSet::empty(), &all, &cfg).is_empty());

        // Node 0 has degree 3000 and every neighbour inside `current`; node 1
        // has degree 10 with one inward edge.
        let mut edges: Vec<(usize, usize)> = (0..3000).map(|i| (0, 2 + i)).collect();
        edges.push((1, 2));
        edges.extend((0..9).map(|i| (1, 3002 + i)));
        let g = Graph::from_edges(3011, &edges).unwrap();
        let current: NodeSet = (0..3002).collect();
        let frontier = NodeSet::new([0, 1]);
        assert!((inward_ratio(&g, &current, 1).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(filter_frontier(&g, &frontier, &current, &cfg), NodeSet::new([0]));
    }

    fn ring_of_cliques() -> Graph {
        let mut edges = Vec::new();
        for c in 0..4 {
            let base = c * 5;
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((base + i, base + j));
                }
            }
            edges.push((base + 4, ((c + 1) % 4) * 5));
        }
        Graph::from_edges(20, &edges).unwrap()
    }

    #[test]
    fn ring_sample_traces() {
        let g = ring_of_cliques();
        let cfg = SamplingConfig::default();
        // Interior seed: three BFS rounds reach both neighbouring cliques but
        // not the opposite one.
        let s = sample(&g, &NodeSet::new([2]), &cfg).unwrap();
        let expected: NodeSet = (0..10).chain(15..20).collect();
        assert_eq!(s.global_nodes(), expected);
        assert_eq!(s.untrimmed_size, 15);

        // Allowing more rounds covers the whole ring.
        let wide = SamplingConfig { t_max_bfs: 4, ..cfg };
        assert_eq!(sample(&g, &NodeSet::new([2]), &wide).unwrap().node_count(), 20);
    }

    #[test]
    fn trimming_keeps_seeds_and_cap() {
        let g = ring_of_cliques();
        let cfg = SamplingConfig {
            n1_lower: 5,
            n2_upper: 8,
            t_max_bfs: 4,
            k_trim: 1,
            filter_outdeg_target: 3000,
        };
        let seeds = NodeSet::new([0, 12]);
        let s = sample(&g, &seeds, &cfg).unwrap();
        assert!(s.node_count() <= 8);
        assert_eq!(s.to_global(&s.seeds), seeds);
    }

    #[test]
    fn small_graph_is_not_trimmed() {
        let g = clique(6);
        let s = sample(&g, &NodeSet::new([3]), &SamplingConfig::default()).unwrap();
        assert_eq!(s.node_count(), 6);
        assert_eq!(s.untrimmed_size, 6);
    }

    #[test]
    fn rejects_bad_seeds_and_config() {
        let g = path3();
        assert!(sample(&g, &NodeSet::new([7]), &SamplingConfig::default()).is_err());
        assert!(sample(&g, &NodeSet::empty(), &SamplingConfig::default()).is_err());
        let cfg = SamplingConfig {
            n2_upper: 10,
            ..SamplingConfig::default()
        };
        assert!(sample(&g, &NodeSet::new([0]), &cfg).is_err());
    }
}
