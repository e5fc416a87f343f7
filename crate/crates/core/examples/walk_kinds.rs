//! How the four walk operators spread mass from a seed, in both directions.
//!
//! cargo run --example walk_kinds

use losp::diffusion::{initial_density, krylov_basis, propagate, Direction, TransitionOperator, WalkKind};
use losp::harness::ring_of_cliques;
use losp::NodeSet;

fn show(label: &str, p: &[f64]) {
    let cells: Vec<String> = p.iter().map(|x| format!("{x:.3}")).collect();
    println!("  {label:<10} {}", cells.join(" "));
}

fn main() -> losp::Result<()> {
    let (g, _) = ring_of_cliques(3, 4);
    let seeds = NodeSet::new([1]);
    let p0 = initial_density(g.node_count(), &seeds)?;
    let kinds = [
        WalkKind::Standard,
        WalkKind::LightLazy(1),
        WalkKind::Lazy(1.0),
        WalkKind::PersonalizedPageRank(0.1),
    ];

    for kind in kinds {
        let op = TransitionOperator::new(&g, &seeds, kind)?;
        println!("{kind} ({})", kind.label());
        for steps in [1, 2, 5] {
            show(&format!("Nᵀ^{steps} p0"), &propagate(&op, &p0, steps, Direction::Regular));
        }
        show("N^2 p0", &propagate(&op, &p0, 2, Direction::Inverse));
        let sums = op.apply(&vec![1.0; g.node_count()]);
        show("row sums", &sums);
    }

    // The default basis: p_2 and p_3 of the light lazy walk.
    let op = TransitionOperator::new(&g, &seeds, WalkKind::LightLazy(1))?;
    let basis = krylov_basis(&op, &seeds, 2, 2, Direction::Regular)?;
    println!("Krylov basis (k=2, d=2)");
    for (i, col) in basis.columns().iter().enumerate() {
        show(&format!("p_{}", basis.k_start() + i), col);
    }
    Ok(())
}
