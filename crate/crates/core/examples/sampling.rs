//! Local sampling on a graph too large to diffuse over whole.
//!
//! cargo run --release --example sampling

use losp::harness::{generate_planted_partition, pick_random_seeds, PlantedPartitionSpec};
use losp::sampling::{sample, SamplingConfig};
use losp::eval::coverage;

fn main() -> losp::Result<()> {
    let spec = PlantedPartitionSpec {
        blocks: 40,
        block_size: 50,
        p_in: 0.2,
        p_out: 0.001,
        rng_seed: 3,
    };
    let (g, truth) = generate_planted_partition(&spec)?;
    println!("host graph: {} nodes, {} edges", g.node_count(), g.edge_count());

    let target = &truth[17];
    let seeds = pick_random_seeds(target, 3, 0)?;
    for (n1, n2) in [(50, 5000), (300, 5000), (300, 400), (1000, 1500)] {
        let cfg = SamplingConfig {
            n1_lower: n1,
            n2_upper: n2,
            ..SamplingConfig::default()
        };
        let sub = sample(&g, &seeds, &cfg)?;
        println!(
            "N1={n1:<5} N2={n2:<5} -> {:>4} nodes ({:>4} before trimming), {:>5} edges, coverage {:.2}",
            sub.node_count(),
            sub.untrimmed_size,
            sub.graph.edge_count(),
            coverage(&sub.global_nodes(), target)?,
        );
    }
    Ok(())
}
