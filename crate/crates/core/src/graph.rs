//! Immutable undirected graph in compressed adjacency form, plus the
//! set primitives (volume, cut, conductance) everything else is built on.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Sorted, duplicate-free set of node IDs.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new(nodes: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }

    pub fn empty() -> Self {
        NodeSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn intersection_len(&self, other: &NodeSet) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        NodeSet::new(self.iter().chain(other.iter()))
    }

    /// Membership mask of length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet::new(iter)
    }
}

/// Simple undirected graph. Node IDs are dense `0..n`; `labels` keeps the
/// original ID each node was loaded with.
#[derive(Clone, Debug)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `n` nodes labelled `0..n`. Self-loops are dropped and
    /// parallel edges merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_labels((0..n as u64).collect(), edges)
    }

    fn with_labels(labels: Vec<u64>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::NodeOutOfRange { node: u, n });
            }
            if v >= n {
                return Err(Error::NodeOutOfRange { node: v, n });
            }
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Ok(Graph {
            offsets,
            targets,
            labels,
        })
    }

    /// Reads a whitespace-separated edge list. Lines starting with `#` and
    /// blank lines are skipped. Node IDs are compacted to `0..n` in
    /// ascending order of their original value.
    pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_edge_list(&text)
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut raw = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected two node IDs, found {} tokens", tokens.len()),
                });
            }
            let parse = |t: &str| {
                t.parse::<u64>().map_err(|e| Error::Parse {
                    line: idx + 1,
                    message: format!("bad node ID {t:?}: {e}"),
                })
            };
            let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
            if u != v {
                raw.push((u, v));
            }
        }
        if raw.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut labels: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
        labels.sort_unstable();
        labels.dedup();
        let index: HashMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let edges: Vec<(usize, usize)> = raw.iter().map(|(u, v)| (index[u], index[v])).collect();
        Self::with_labels(labels, &edges)
    }

    /// Writes the edge list using original labels, one `u v` line per edge.
    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let io_err = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut out = BufWriter::new(fs::File::create(path).map_err(io_err)?);
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.labels[u], self.labels[v]).map_err(io_err)?;
        }
        out.flush().map_err(io_err)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count())
            .flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| u < v)
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Looks up the dense ID for an original label.
    pub fn node_by_label(&self, label: u64) -> Option<usize> {
        // Loaded graphs have ascending labels; subgraphs keep their parent's
        // order, so labels stay sorted.
        self.labels.binary_search(&label).ok()
    }

    pub fn nodes_by_labels(&self, labels: &[u64]) -> Result<NodeSet> {
        labels
            .iter()
            .map(|&l| self.node_by_label(l).ok_or(Error::UnknownNode(l)))
            .collect::<Result<Vec<_>>>()
            .map(NodeSet::new)
    }

    pub fn total_volume(&self) -> usize {
        self.targets.len()
    }

    fn check(&self, s: &NodeSet) -> Result<()> {
        match s.as_slice().last() {
            Some(&v) if v >= self.node_count() => Err(Error::NodeOutOfRange {
                node: v,
                n: self.node_count(),
            }),
            _ => Ok(()),
        }
    }

    pub fn volume(&self, s: &NodeSet) -> Result<usize> {
        self.check(s)?;
        Ok(s.iter().map(|v| self.degree(v)).sum())
    }

    /// Number of edges with exactly one endpoint in `s`.
    pub fn cut(&self, s: &NodeSet) -> Result<usize> {
        self.check(s)?;
        let mask = s.mask(self.node_count());
        Ok(s
            .iter()
            .flat_map(|u| self.neighbors(u))
            .filter(|&&v| !mask[v])
            .count())
    }

    /// `cut(s) / min(vol(s), vol(V \ s))`.
    pub fn conductance(&self, s: &NodeSet) -> Result<f64> {
        let vol = self.volume(s)?;
        let rest = self.total_volume() - vol;
        if s.is_empty() || vol == 0 || rest == 0 {
            return Err(Error::UndefinedConductance);
        }
        Ok(self.cut(s)? as f64 / vol.min(rest) as f64)
    }

    /// Subgraph on `nodes` keeping every edge with both endpoints inside.
    pub fn induced_subgraph(&self, nodes: &NodeSet) -> Result<(Graph, NodeMap)> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        self.check(nodes)?;
        let map = NodeMap::new(nodes.as_slice().to_vec());
        let edges: Vec<(usize, usize)> = nodes
            .iter()
            .flat_map(|u| self.neighbors(u).iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| u < v)
            .filter_map(|(u, v)| Some((map.local(u)?, map.local(v)?)))
            .collect();
        let labels = nodes.iter().map(|v| self.labels[v]).collect();
        let sub = Graph::with_labels(labels, &edges)?;
        Ok((sub, map))
    }

    /// Union of the connected components that contain at least one seed.
    pub fn restrict_to_seed_component(&self, seeds: &NodeSet) -> Result<NodeSet> {
        self.check(seeds)?;
        let mut seen = vec![false; self.node_count()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for s in seeds.iter() {
            seen[s] = true;
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        Ok(seen
            .iter()
            .enumerate()
            .filter_map(|(v, &hit)| hit.then_some(v))
            .collect())
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0
            && self
                .restrict_to_seed_component(&NodeSet::new([0]))
                .map(|c| c.len() == self.node_count())
                .unwrap_or(false)
    }

    /// Two-colouring check over every component.
    pub fn is_bipartite(&self) -> bool {
        let n = self.node_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &v in self.neighbors(u) {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Hop distances from `source`; `usize::MAX` marks unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Bidirectional mapping between a subgraph's local IDs and its host's IDs.
#[derive(Clone, Debug)]
pub struct NodeMap {
    to_global: Vec<usize>,
    to_local: HashMap<usize, usize>,
}

impl NodeMap {
    fn new(to_global: Vec<usize>) -> Self {
        let to_local = to_global.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        NodeMap {
            to_global,
            to_local,
        }
    }

    pub fn global(&self, local: usize) -> usize {
        self.to_global[local]
    }

    pub fn local(&self, global: usize) -> Option<usize> {
        self.to_local.get(&global).copied()
    }

    pub fn to_global_set(&self, local: &NodeSet) -> NodeSet {
        local.iter().map(|v| self.global(v)).collect()
    }

    /// Maps the members that exist locally; the rest are dropped.
    pub fn to_local_set(&self, global: &NodeSet) -> NodeSet {
        global.iter().filter_map(|v| self.local(v)).collect()
    }

    pub fn globals(&self) -> &[usize] {
        &self.to_global
    }

    /// Map from a subgraph of this subgraph straight to the host.
    pub fn compose(&self, inner: &NodeMap) -> NodeMap {
        NodeMap::new(inner.to_global.iter().map(|&v| self.global(v)).collect())
    }
}

/// Reads one community per line (original IDs, whitespace-separated).
pub fn load_communities(path: impl AsRef<Path>, g: &Graph) -> Result<Vec<NodeSet>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_communities(&text, g)
}

pub fn parse_communities(text: &str, g: &Graph) -> Result<Vec<NodeSet>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let labels = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>().map_err(|e| Error::Parse {
                    line: idx + 1,
                    message: format!("bad node ID {t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(g.nodes_by_labels(&labels)?);
    }
    Ok(out)
}

pub fn write_communities(path: impl AsRef<Path>, g: &Graph, communities: &[NodeSet]) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut out = BufWriter::new(fs::File::create(path).map_err(io_err)?);
    for c in communities {
        writeln!(out, "{}", format_labels(g, c)).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

pub(crate) fn format_labels(g: &Graph, c: &NodeSet) -> String {
    c.iter()
        .map(|v| g.label(v).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    /// Four 5-cliques; node 4 of clique i is bridged to node 0 of clique i+1.
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
    fn load_path() {
        let g = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degrees(), vec![1, 2, 1]);
    }

    #[test]
    fn load_drops_self_loops_and_duplicates() {
        let g = Graph::parse_edge_list("0 1\n1 1\n1 2").unwrap();
        assert_eq!(g.edge_count(), 2);
        let g = Graph::parse_edge_list("0 1\n0 1\n1 0").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn load_compacts_sparse_ids() {
        let g = Graph::parse_edge_list("# comment\n100 7\n\n7 42\n").unwrap();
        assert_eq!(g.labels(), &[7, 42, 100]);
        assert!(g.has_edge(0, 2));
        assert!(g.has_edge(0, 1));
        assert_eq!(g.node_by_label(42), Some(1));
    }

    #[test]
    fn load_reports_line_numbers() {
        match Graph::parse_edge_list("0 1\n# c\n2 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse_edge_list("0 1 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Graph::parse_edge_list("# nothing\n3 3\n"),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn volume_and_cut() {
        let t = triangle();
        assert_eq!(t.volume(&NodeSet::new([0, 1, 2])).unwrap(), 6);
        assert_eq!(t.volume(&NodeSet::empty()).unwrap(), 0);
        assert_eq!(t.cut(&NodeSet::new([0])).unwrap(), 2);
        assert_eq!(t.cut(&NodeSet::new([0, 1, 2])).unwrap(), 0);

        let r = ring_of_cliques();
        let clique = NodeSet::new(0..5);
        assert_eq!(r.volume(&clique).unwrap(), 22);
        assert_eq!(r.cut(&clique).unwrap(), 2);
        assert!(matches!(
            t.volume(&NodeSet::new([3])),
            Err(Error::NodeOutOfRange { node: 3, n: 3 })
        ));
    }

    #[test]
    fn conductance_cases() {
        let t = triangle();
        assert_eq!(t.conductance(&NodeSet::new([1])).unwrap(), 1.0);
        let r = ring_of_cliques();
        let phi = r.conductance(&NodeSet::new(0..5)).unwrap();
        assert!((phi - 2.0 / 22.0).abs() < 1e-12);

        // Pendant vertex 3 hangs off triangle vertex 0.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let s = NodeSet::new([0, 1, 2]);
        assert_eq!(g.cut(&s).unwrap(), 1);
        assert_eq!(g.volume(&s).unwrap(), 7);
        assert_eq!(g.conductance(&s).unwrap(), 1.0);

        assert!(matches!(
            t.conductance(&NodeSet::empty()),
            Err(Error::UndefinedConductance)
        ));
        assert!(matches!(
            t.conductance(&NodeSet::new(0..3)),
            Err(Error::UndefinedConductance)
        ));
    }

    #[test]
    fn induced_subgraphs() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let (sub, map) = p.induced_subgraph(&NodeSet::new([0, 1])).unwrap();
        assert_eq!((sub.node_count(), sub.edge_count()), (2, 1));
        assert_eq!(map.global(1), 1);

        let t = triangle();
        let (sub, _) = t.induced_subgraph(&NodeSet::new(0..3)).unwrap();
        assert_eq!(sub.edges().collect::<Vec<_>>(), t.edges().collect::<Vec<_>>());

        let r = ring_of_cliques();
        let (sub, map) = r.induced_subgraph(&NodeSet::new(5..10)).unwrap();
        assert_eq!((sub.node_count(), sub.edge_count()), (5, 10));
        assert_eq!(map.local(7), Some(2));
        assert_eq!(map.local(0), None);
        assert!(matches!(
            sub.conductance(&NodeSet::new(0..5)),
            Err(Error::UndefinedConductance)
        ));
        assert!(matches!(
            r.induced_subgraph(&NodeSet::empty()),
            Err(Error::EmptyNodeSet)
        ));
    }

    #[test]
    fn seed_components() {
        let r = ring_of_cliques();
        assert_eq!(r.restrict_to_seed_component(&NodeSet::new([3])).unwrap().len(), 20);

        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(
            two.restrict_to_seed_component(&NodeSet::new([1])).unwrap(),
            NodeSet::new([0, 1, 2])
        );
        assert_eq!(
            two.restrict_to_seed_component(&NodeSet::new([1, 4])).unwrap(),
            NodeSet::new(0..6)
        );
        assert!(!two.is_connected());
        assert!(r.is_connected());
    }

    #[test]
    fn bipartite_detection() {
        let square = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(square.is_bipartite());
        assert!(!triangle().is_bipartite());
    }

    #[test]
    fn communities_use_original_labels() {
        let g = Graph::parse_edge_list("10 20\n20 30\n30 10\n30 40").unwrap();
        let cs = parse_communities("10 20 30\n# skip\n40\n", &g).unwrap();
        assert_eq!(cs, vec![NodeSet::new([0, 1, 2]), NodeSet::new([3])]);
        assert!(matches!(
            parse_communities("10 99\n", &g),
            Err(Error::UnknownNode(99))
        ));
    }
}
