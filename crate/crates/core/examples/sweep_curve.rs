//! The conductance sweep over the indicator ranking and where the first
//! local minimum rule cuts it.
//!
//! cargo run --example sweep_curve

use losp::boundary::{first_local_min, ranking, sweep_curve, SweepConfig};
use losp::diffusion::{krylov_basis, Direction, WalkKind};
use losp::harness::ring_of_cliques;
use losp::indicator::solve_sparse_indicator;
use losp::sampling::SampledSubgraph;
use losp::NodeSet;

fn main() -> losp::Result<()> {
    let (g, _) = ring_of_cliques(6, 5);
    let sub = SampledSubgraph::whole(&g, &NodeSet::new([12]))?;
    let op = sub.operator(WalkKind::LightLazy(1))?;
    let basis = krylov_basis(&op, &sub.seeds, 2, 2, Direction::Regular)?;
    let y = solve_sparse_indicator(&basis, &sub.seeds)?;
    println!("indicator coefficients {:?}, ‖y‖₁ = {:.4}", y.coefficients, y.objective());

    let order = ranking(&y.values);
    let cfg = SweepConfig::default();
    let (lengths, curve) = sweep_curve(&sub.graph, &order, &sub.seeds, cfg.max_volume_fraction);
    let cut = first_local_min(&curve, cfg.beta).unwrap();
    for (i, (len, phi)) in lengths.iter().zip(&curve).enumerate() {
        let mark = if i == cut { "  <- first local minimum" } else { "" };
        println!("top {len:>2} (adds node {:>2}): Φ = {phi:.4}{mark}", order[len - 1]);
    }

    println!("\nsynthetic curves with β = {}:", cfg.beta);
    for curve in [
        vec![0.5, 0.4, 0.3, 0.35, 0.32],
        vec![0.6, 0.3, 0.305, 0.2, 0.5],
        vec![0.9, 0.7, 0.5, 0.3, 0.2],
    ] {
        println!("  {curve:?} -> index {:?}", first_local_min(&curve, cfg.beta));
    }
    Ok(())
}
