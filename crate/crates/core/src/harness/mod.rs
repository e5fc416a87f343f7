//! End-to-end detection: sample, diffuse, solve for the indicator, cut the
//! boundary, and score.

pub mod bench;
pub mod generate;

use std::str::FromStr;
use std::time::Instant;

pub use bench::{run_benchmark, run_benchmark_on, BenchConfig, BenchRow, BenchSummary, CSV_HEADER};
pub use generate::{generate_planted_partition, pick_random_seeds, ring_of_cliques, PlantedPartitionSpec};

use crate::boundary::{ranking, sweep_first_local_min, SweepConfig};
use crate::diffusion::{krylov_basis, Direction, WalkKind};
use crate::error::{Error, Result};
use crate::eval::{coverage, f1_score};
use crate::graph::{Graph, NodeSet};
use crate::indicator::{solve_sparse_indicator, IndicatorVector};
use crate::sampling::{sample, SampledSubgraph, SamplingConfig};

/// How the community boundary is chosen from the indicator ranking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BoundaryMode {
    /// First validated local minimum of the conductance sweep.
    #[default]
    Sweep,
    /// As many nodes as the ground-truth community has.
    TruthSize,
    /// A fixed number of nodes.
    Size(usize),
}

impl FromStr for BoundaryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sweep" => Ok(BoundaryMode::Sweep),
            "truth" => Ok(BoundaryMode::TruthSize),
            _ => match s.strip_prefix("size:").map(str::parse::<usize>) {
                Some(Ok(n)) if n > 0 => Ok(BoundaryMode::Size(n)),
                _ => Err(Error::InvalidParameter(format!(
                    "boundary must be `sweep`, `truth` or `size:<n>`, got {s:?}"
                ))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub walk: WalkKind,
    pub direction: Direction,
    /// Krylov dimension `d`.
    pub dim: usize,
    /// Diffusion steps `k` before the first basis column.
    pub steps: usize,
    pub sampling: SamplingConfig,
    pub boundary: BoundaryMode,
    pub sweep: SweepConfig,
    pub rng_seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            walk: WalkKind::LightLazy(1),
            direction: Direction::Regular,
            dim: 2,
            steps: 2,
            sampling: SamplingConfig::default(),
            boundary: BoundaryMode::Sweep,
            sweep: SweepConfig::default(),
            rng_seed: 0,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.walk.validate()?;
        self.sampling.validate()?;
        self.sweep.validate()?;
        if self.dim == 0 {
            return Err(Error::InvalidParameter("Krylov dimension must be at least 1".into()));
        }
        Ok(())
    }

    /// Method label such as `LLi` or `LLi-inv`.
    pub fn method_label(&self) -> String {
        match self.direction {
            Direction::Regular => self.walk.label().to_string(),
            Direction::Inverse => format!("{}-inv", self.walk.label()),
        }
    }
}

/// Scores for one detected community.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub community_id: usize,
    pub method: String,
    pub size: usize,
    /// Conductance in the full graph; `None` when the community is every node.
    pub conductance: Option<f64>,
    pub f1: Option<f64>,
    /// Share of the truth that made it into the sampled subgraph.
    pub coverage: Option<f64>,
    pub time_ms: f64,
}

#[derive(Clone, Debug)]
pub struct Detection {
    /// Detected community in host-graph IDs.
    pub community: NodeSet,
    pub record: ResultRecord,
    pub subgraph: SampledSubgraph,
    pub indicator: IndicatorVector,
}

/// Top `size` nodes of the ranking with every seed forced in; the lowest
/// ranked non-seeds make room.
fn top_with_seeds(y: &IndicatorVector, size: usize, seeds: &NodeSet) -> NodeSet {
    let size = size.clamp(seeds.len(), y.len());
    let room = size - seeds.len();
    let others = ranking(&y.values).into_iter().filter(|&v| !seeds.contains(v)).take(room);
    seeds.iter().chain(others).collect()
}

/// Runs the full detection pipeline from `seeds` (host IDs).
pub fn run_pipeline(
    g: &Graph,
    seeds: &NodeSet,
    cfg: &PipelineConfig,
    truth: Option<&NodeSet>,
) -> Result<Detection> {
    let start = Instant::now();
    cfg.validate()?;
    if matches!(cfg.boundary, BoundaryMode::TruthSize) && truth.is_none() {
        return Err(Error::Precondition("truth-size boundary needs a ground-truth community".into()));
    }

    let sub = sample(g, seeds, &cfg.sampling).map_err(|e| e.at_stage("sampling"))?;
    let basis = sub
        .operator(cfg.walk)
        .and_then(|op| krylov_basis(&op, &sub.seeds, cfg.steps, cfg.dim, cfg.direction))
        .map_err(|e| e.at_stage("diffusion"))?;
    let y = solve_sparse_indicator(&basis, &sub.seeds).map_err(|e| e.at_stage("indicator"))?;

    let local = match cfg.boundary {
        BoundaryMode::Sweep => sweep_first_local_min(&y, &sub.graph, &sub.seeds, &cfg.sweep)
            .map_err(|e| e.at_stage("boundary"))?,
        BoundaryMode::TruthSize => top_with_seeds(&y, truth.map_or(0, NodeSet::len), &sub.seeds),
        BoundaryMode::Size(n) => top_with_seeds(&y, n, &sub.seeds),
    };
    let community = sub.to_global(&local);

    let conductance = g.conductance(&community).ok();
    let (f1, cov) = match truth {
        Some(t) => (
            Some(f1_score(&community, t).map_err(|e| e.at_stage("scoring"))?),
            Some(coverage(&sub.global_nodes(), t).map_err(|e| e.at_stage("scoring"))?),
        ),
        None => (None, None),
    };
    let record = ResultRecord {
        community_id: 0,
        method: cfg.method_label(),
        size: community.len(),
        conductance,
        f1,
        coverage: cov,
        time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(Detection {
        community,
        record,
        subgraph: sub,
        indicator: y,
    })
}
