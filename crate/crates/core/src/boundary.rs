//! Turning an indicator vector into a node set: either take a known number of
//! top-ranked nodes, or sweep prefixes and stop at the first validated local
//! minimum of conductance.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::indicator::IndicatorVector;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    /// A candidate minimum is accepted once conductance rises above
    /// `beta` times its value.
    pub beta: f64,
    /// The sweep stops once the prefix volume exceeds this fraction of the
    /// subgraph volume.
    pub max_volume_fraction: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            beta: 1.02,
            max_volume_fraction: 0.5,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 1.0 && self.beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("beta must exceed 1, got {}", self.beta)));
        }
        if !(self.max_volume_fraction > 0.0 && self.max_volume_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "max_volume_fraction must lie in (0, 1], got {}",
                self.max_volume_fraction
            )));
        }
        Ok(())
    }
}

/// Node IDs sorted by decreasing value, ties by ascending ID.
pub fn ranking(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    order
}

/// The `size` highest-valued nodes.
pub fn truncate_by_size(y: &IndicatorVector, size: usize) -> Result<NodeSet> {
    if size == 0 || size > y.len() {
        return Err(Error::InvalidParameter(format!(
            "size {size} outside 1..={}",
            y.len()
        )));
    }
    Ok(ranking(&y.values).into_iter().take(size).collect())
}

/// Index of the first validated local minimum of a conductance curve.
///
/// A point is a candidate when the next value does not decrease. The candidate
/// is accepted as soon as a later value exceeds `beta` times it, and dropped if
/// a later value falls below it first. Without any accepted candidate the
/// global minimum (earliest on ties) is returned.
pub fn first_local_min(curve: &[f64], beta: f64) -> Option<usize> {
    let mut candidate: Option<usize> = None;
    for i in 0..curve.len() {
        if let Some(c) = candidate {
            if curve[i] > beta * curve[c] {
                return Some(c);
            }
            if curve[i] < curve[c] {
                candidate = None;
            }
        }
        if candidate.is_none() && i + 1 < curve.len() && curve[i + 1] >= curve[i] {
            candidate = Some(i);
        }
    }
    curve
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
}

/// Conductance of each swept prefix of `order`, starting at the first prefix
/// that holds every seed. Returns `(prefix_lengths, conductances)`.
pub fn sweep_curve(
    g: &Graph,
    order: &[usize],
    seeds: &NodeSet,
    max_volume_fraction: f64,
) -> (Vec<usize>, Vec<f64>) {
    let n = g.node_count();
    let total = g.total_volume();
    let cap = max_volume_fraction * total as f64;
    let mut inside = vec![false; n];
    let mut seeds_left = seeds.len();
    let (mut vol, mut cut) = (0usize, 0isize);
    let mut lengths = Vec::new();
    let mut curve = Vec::new();
    for (idx, &v) in order.iter().enumerate() {
        let internal = g.neighbors(v).iter().filter(|&&u| inside[u]).count() as isize;
        inside[v] = true;
        vol += g.degree(v);
        cut += g.degree(v) as isize - 2 * internal;
        if seeds.contains(v) {
            seeds_left -= 1;
        }
        if seeds_left > 0 {
            continue;
        }
        let k = idx + 1;
        let past_cap = vol as f64 > cap;
        if past_cap && !curve.is_empty() {
            break;
        }
        let rest = total - vol;
        if vol > 0 && rest > 0 {
            lengths.push(k);
            curve.push(cut as f64 / vol.min(rest) as f64);
        }
        if past_cap {
            break;
        }
    }
    (lengths, curve)
}

/// Prefix of the `y`-ranking at the first validated conductance minimum.
pub fn sweep_first_local_min(
    y: &IndicatorVector,
    g: &Graph,
    seeds: &NodeSet,
    cfg: &SweepConfig,
) -> Result<NodeSet> {
    cfg.validate()?;
    if y.len() != g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "indicator has {} entries for a graph of {} nodes",
            y.len(),
            g.node_count()
        )));
    }
    if y.values.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("indicator has non-finite entries".into()));
    }
    if seeds.is_empty() {
        return Err(Error::EmptyNodeSet);
    }
    let order = ranking(&y.values);
    let (lengths, curve) = sweep_curve(g, &order, seeds, cfg.max_volume_fraction);
    let k = match first_local_min(&curve, cfg.beta) {
        Some(i) => lengths[i],
        // Every prefix holding the seeds is the whole graph.
        None => order.len(),
    };
    Ok(order[..k].iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indicator(values: Vec<f64>) -> IndicatorVector {
        IndicatorVector {
            coefficients: vec![],
            values,
        }
    }

    #[test]
    fn truncation() {
        let y = indicator(vec![0.9, 0.1, 0.5]);
        assert_eq!(truncate_by_size(&y, 2).unwrap(), NodeSet::new([0, 2]));
        assert_eq!(truncate_by_size(&y, 3).unwrap(), NodeSet::new(0..3));
        let tie = indicator(vec![0.5, 0.5, 0.1]);
        assert_eq!(truncate_by_size(&tie, 1).unwrap(), NodeSet::new([0]));
        assert!(truncate_by_size(&y, 0).is_err());
        assert!(truncate_by_size(&y, 4).is_err());
    }

    #[test]
    fn local_min_rule_traces() {
        assert_eq!(first_local_min(&[0.5, 0.4, 0.3, 0.35, 0.32], 1.02), Some(2));
        // Strictly decreasing: fall back to the global minimum at the end.
        assert_eq!(first_local_min(&[0.5, 0.4, 0.3, 0.2], 1.02), Some(3));
        // Shallow rise below beta, then a deeper dip that validates.
        assert_eq!(
            first_local_min(&[0.5, 0.3, 0.301, 0.29, 0.2, 0.25, 0.4], 1.02),
            Some(4)
        );
        // Plateau counts as a stop; the candidate validates later.
        assert_eq!(first_local_min(&[0.4, 0.3, 0.3, 0.31, 0.4], 1.02), Some(1));
        // Rise never exceeds beta: global minimum fallback.
        assert_eq!(first_local_min(&[0.5, 0.3, 0.305, 0.304], 1.02), Some(1));
        assert_eq!(first_local_min(&[], 1.02), None);
        assert_eq!(first_local_min(&[0.7], 1.02), Some(0));
    }

    #[test]
    fn sweep_starts_after_all_seeds() {
        // Path 0-1-2-3-4-5 with seeds at both ends of the top-ranked block.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let order = vec![0, 1, 2, 3, 4, 5];
        let (lengths, _) = sweep_curve(&g, &order, &NodeSet::new([0, 2]), 1.0);
        assert_eq!(lengths, vec![3, 4, 5]);
    }

    #[test]
    fn sweep_respects_volume_cap() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let order = vec![0, 1, 2, 3, 4, 5];
        // Total volume 10, cap 5: prefixes of volume 1, 3 and 5 fit.
        let (lengths, curve) = sweep_curve(&g, &order, &NodeSet::new([0]), 0.5);
        assert_eq!(lengths, vec![1, 2, 3]);
        assert_eq!(curve, vec![1.0, 1.0 / 3.0, 1.0 / 5.0]);
    }

    #[test]
    fn sweep_on_two_triangles() {
        // Triangles {0,1,2} and {3,4,5} joined by edge 2-3.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
            .unwrap();
        let y = indicator(vec![1.0, 0.9, 0.8, 0.2, 0.1, 0.1]);
        let c = sweep_first_local_min(&y, &g, &NodeSet::new([0]), &SweepConfig::default()).unwrap();
        assert_eq!(c, NodeSet::new([0, 1, 2]));
    }

    #[test]
    fn rejects_bad_beta() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let cfg = SweepConfig {
            beta: 1.0,
            ..SweepConfig::default()
        };
        assert!(sweep_first_local_min(&indicator(vec![1.0, 0.0]), &g, &NodeSet::new([0]), &cfg).is_err());
    }
}
