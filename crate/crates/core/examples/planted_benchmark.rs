//! Benchmark every walk kind on a planted partition and print the CSV.
//!
//! cargo run --release --example planted_benchmark [blocks] [block_size]

use std::io;
use std::sync::Arc;

use losp::diffusion::{Direction, WalkKind};
use losp::harness::{
    generate_planted_partition, run_benchmark_on, BenchConfig, BoundaryMode, PipelineConfig,
    PlantedPartitionSpec,
};

fn main() -> losp::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("expected a count"));
    let blocks = args.next().unwrap_or(4);
    let block_size = args.next().unwrap_or(50);
    let spec = PlantedPartitionSpec {
        blocks,
        block_size,
        p_in: 0.3,
        p_out: 0.02,
        rng_seed: 1,
    };
    let (g, truth) = generate_planted_partition(&spec)?;
    let g = Arc::new(g);
    eprintln!("{} nodes, {} edges, {} blocks", g.node_count(), g.edge_count(), truth.len());

    let methods = [
        (WalkKind::Standard, Direction::Regular),
        (WalkKind::LightLazy(1), Direction::Regular),
        (WalkKind::Lazy(1.0), Direction::Regular),
        (WalkKind::PersonalizedPageRank(0.1), Direction::Regular),
        (WalkKind::LightLazy(1), Direction::Inverse),
    ];
    for (walk, direction) in methods {
        for boundary in [BoundaryMode::TruthSize, BoundaryMode::Sweep] {
            let cfg = BenchConfig {
                pipeline: PipelineConfig {
                    walk,
                    direction,
                    boundary,
                    ..PipelineConfig::default()
                },
                ..BenchConfig::default()
            };
            let summary = run_benchmark_on(Arc::clone(&g), &truth, &cfg, io::sink())?;
            println!(
                "{:<8} {:<6} mean F1 {:.3}  mean size {:>6.1}  mean conductance {:.3}",
                cfg.pipeline.method_label(),
                if boundary == BoundaryMode::Sweep { "sweep" } else { "truth" },
                summary.mean_f1,
                summary.mean_size,
                summary.mean_conductance,
            );
        }
    }

    println!("\nCSV for LLi with truth-size boundaries:");
    let cfg = BenchConfig {
        pipeline: PipelineConfig {
            boundary: BoundaryMode::TruthSize,
            ..PipelineConfig::default()
        },
        ..BenchConfig::default()
    };
    run_benchmark_on(g, &truth, &cfg, io::stdout().lock())?;
    Ok(())
}
