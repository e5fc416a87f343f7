//! Local spectral community detection.
//!
//! Starting from a handful of seed nodes, the pipeline samples a small
//! subgraph around them, diffuses probability with a few random-walk steps,
//! spans a low-dimensional Krylov subspace with consecutive diffusion
//! vectors, and looks for the sparsest nonnegative vector in that subspace
//! that still covers the seeds. Ranking nodes by that vector and cutting at a
//! conductance minimum yields the community.
//!
//! ```
//! use losp::harness::{ring_of_cliques, run_pipeline, BoundaryMode, PipelineConfig};
//! use losp::graph::NodeSet;
//!
//! let (g, cliques) = ring_of_cliques(4, 5);
//! let cfg = PipelineConfig { boundary: BoundaryMode::Sweep, ..PipelineConfig::default() };
//! let found = run_pipeline(&g, &NodeSet::new([2]), &cfg, Some(&cliques[0])).unwrap();
//! assert_eq!(found.community, cliques[0]);
//! ```

pub mod boundary;
pub mod diffusion;
pub mod error;
pub mod eval;
pub mod graph;
pub mod harness;
pub mod indicator;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::{Graph, NodeSet};
