//! Krylov subspace against the exact leading eigenvectors as the span for
//! the sparse indicator.
//!
//! cargo run --release --example glosp_vs_losp

use losp::boundary::truncate_by_size;
use losp::eval::{f1_score, glosp_indicator};
use losp::harness::{
    generate_planted_partition, pick_random_seeds, run_pipeline, BoundaryMode, PipelineConfig,
    PlantedPartitionSpec,
};

fn main() -> losp::Result<()> {
    let cfg = PipelineConfig {
        boundary: BoundaryMode::TruthSize,
        ..PipelineConfig::default()
    };
    // With four equal blocks the second eigenvalue is nearly threefold, so a
    // two-dimensional eigenspace picks an arbitrary direction inside it.
    let dims = [2, 4];
    let (mut krylov, mut eigen) = (0.0, [0.0; 2]);
    let trials = 10;
    for trial in 0..trials {
        let spec = PlantedPartitionSpec {
            blocks: 4,
            block_size: 30,
            p_in: 0.35,
            p_out: 0.02,
            rng_seed: trial,
        };
        let (g, truth) = generate_planted_partition(&spec)?;
        let target = &truth[0];
        let seeds = pick_random_seeds(target, 3, trial)?;

        let local = run_pipeline(&g, &seeds, &cfg, Some(target))?.record.f1.unwrap();
        let mut line = format!("trial {trial}: Krylov F1 {local:.3}");
        krylov += local;
        // The eigenspace version works on the whole graph.
        for (slot, d) in dims.iter().enumerate() {
            let f = match glosp_indicator(&g, &seeds, *d) {
                Ok(y) => f1_score(&truncate_by_size(&y, target.len())?, target)?,
                Err(e) => {
                    println!("trial {trial}: eigenspace LP with d={d} failed: {e}");
                    0.0
                }
            };
            line += &format!(", eigenspace d={d} F1 {f:.3}");
            eigen[slot] += f;
        }
        println!("{line}");
    }
    let n = trials as f64;
    println!(
        "mean: Krylov {:.3}, eigenspace d=2 {:.3}, d=4 {:.3}",
        krylov / n,
        eigen[0] / n,
        eigen[1] / n
    );
    Ok(())
}
