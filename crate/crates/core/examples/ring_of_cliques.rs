//! Recover one 5-clique of a ring of four from a single seed.
//!
//! cargo run --example ring_of_cliques

use losp::harness::{ring_of_cliques, run_pipeline, BoundaryMode, PipelineConfig};
use losp::NodeSet;

fn main() -> losp::Result<()> {
    let (g, cliques) = ring_of_cliques(4, 5);
    println!("{} nodes, {} edges", g.node_count(), g.edge_count());

    for seed in [0, 7, 13, 19] {
        let truth = cliques.iter().find(|c| c.contains(seed)).unwrap();
        let seeds = NodeSet::new([seed]);

        let swept = run_pipeline(&g, &seeds, &PipelineConfig::default(), Some(truth))?;
        let sized = run_pipeline(
            &g,
            &seeds,
            &PipelineConfig {
                boundary: BoundaryMode::TruthSize,
                ..PipelineConfig::default()
            },
            Some(truth),
        )?;
        println!(
            "seed {seed:>2}: sweep {:?} (conductance {:.4}, F1 {}), truth-size F1 {}",
            swept.community.as_slice(),
            swept.record.conductance.unwrap(),
            swept.record.f1.unwrap(),
            sized.record.f1.unwrap(),
        );
    }
    Ok(())
}
