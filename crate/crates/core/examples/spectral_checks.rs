//! Conductance against the spectrum of the normalized Laplacian on a small
//! graph: the lower bound, the Rayleigh identity and weight concentration.
//!
//! cargo run --example spectral_checks

use losp::eval::{cheeger_check, weight_concentration, SpectralOracle};
use losp::harness::ring_of_cliques;
use losp::NodeSet;

fn main() -> losp::Result<()> {
    let (g, cliques) = ring_of_cliques(4, 5);
    let oracle = SpectralOracle::new(&g)?;
    let lambda: Vec<String> = oracle.eigenvalues.iter().map(|l| format!("{l:.4}")).collect();
    println!("L_sym spectrum: {}", lambda.join(" "));
    println!("max residual {:.1e}, orthonormality error {:.1e}", oracle.max_residual(&g), oracle.orthonormality_error());

    let candidates = [
        ("one clique", cliques[0].clone()),
        ("two cliques", cliques[0].union(&cliques[1])),
        ("clique minus a node", NodeSet::new(1..5)),
        ("bridge pair", NodeSet::new([4, 5])),
    ];
    for (name, c) in candidates {
        let phi = g.conductance(&c)?;
        println!(
            "{name:<20} Φ = {phi:.4}  Σwλ = {:.4}  λ₂/2 ≤ Φ: {}",
            oracle.rayleigh_quotient(&c)?,
            cheeger_check(&oracle, &g, &c)?,
        );
        for t in [2.0, 5.0, 10.0] {
            let eps = phi * 1.01;
            let (lhs, bound) = weight_concentration(&oracle, &g, &c, eps, t)?;
            println!("    t = {t:>4}: weight below λ₁ + t·ε = {lhs:.4} > {bound:.4}");
        }
    }
    Ok(())
}
