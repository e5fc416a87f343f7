//! Scoring metrics and the dense spectral oracle.

pub mod jacobi;
pub mod spectral;

pub use spectral::{cheeger_check, glosp_indicator, weight_concentration, SpectralOracle};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

/// `2|C ∩ T| / (|C| + |T|)`.
pub fn f1_score(detected: &NodeSet, truth: &NodeSet) -> Result<f64> {
    let total = detected.len() + truth.len();
    if total == 0 {
        return Err(Error::EmptyNodeSet);
    }
    Ok(2.0 * detected.intersection_len(truth) as f64 / total as f64)
}

/// Fraction of `truth` inside `sampled`.
pub fn coverage(sampled: &NodeSet, truth: &NodeSet) -> Result<f64> {
    if truth.is_empty() {
        return Err(Error::EmptyNodeSet);
    }
    Ok(sampled.intersection_len(truth) as f64 / truth.len() as f64)
}

/// Mean pairwise shortest-path length divided by the diameter, and its
/// rescaling from `[1/3, 1]` to `[0, 1]`.
pub fn roundness(g: &Graph) -> Result<(f64, f64)> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::Precondition("roundness needs at least two nodes".into()));
    }
    let mut total = 0u64;
    let mut diameter = 0usize;
    for s in 0..n {
        let dist = g.bfs_distances(s);
        for &d in &dist[s + 1..] {
            if d == usize::MAX {
                return Err(Error::Disconnected);
            }
            total += d as u64;
            diameter = diameter.max(d);
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let r = total as f64 / pairs / diameter as f64;
    Ok((r, (r - 1.0 / 3.0) / (1.0 - 1.0 / 3.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_cases() {
        let a = NodeSet::new(0..10);
        assert_eq!(f1_score(&a, &a).unwrap(), 1.0);
        assert_eq!(f1_score(&a, &NodeSet::new(10..20)).unwrap(), 0.0);
        assert_eq!(f1_score(&a, &NodeSet::new(5..15)).unwrap(), 0.5);
        assert!(f1_score(&NodeSet::empty(), &NodeSet::empty()).is_err());
    }

    #[test]
    fn coverage_cases() {
        let t = NodeSet::new(0..4);
        assert_eq!(coverage(&NodeSet::new(0..10), &t).unwrap(), 1.0);
        assert_eq!(coverage(&NodeSet::new([0, 1]), &t).unwrap(), 0.5);
        assert_eq!(coverage(&NodeSet::new([9]), &t).unwrap(), 0.0);
        assert!(coverage(&t, &NodeSet::empty()).is_err());
    }

    #[test]
    fn roundness_cases() {
        let edges: Vec<_> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
        let (r, norm) = roundness(&Graph::from_edges(6, &edges).unwrap()).unwrap();
        assert_eq!(r, 1.0);
        assert!((norm - 1.0).abs() < 1e-15);

        let path = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(roundness(&path).unwrap().0, 0.5);

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(roundness(&star).unwrap().0, 0.75);

        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(roundness(&split), Err(Error::Disconnected)));
    }
}
