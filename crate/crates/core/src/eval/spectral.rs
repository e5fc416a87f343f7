//! Dense spectral reference for small subgraphs: the full eigensystem of the
//! normalised Laplacian `L_sym = I − D^{-1/2} A D^{-1/2}` and the checks built
//! on it.

use super::jacobi::symmetric_eigen;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::indicator::{solve_sparse_indicator, IndicatorVector};
use crate::diffusion::KrylovBasis;

/// Largest graph the dense oracle accepts.
pub const ORACLE_NODE_CAP: usize = 2000;

/// Slack used by the inequality checks.
pub const CHECK_SLACK: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SpectralOracle {
    /// `λ₁ ≤ … ≤ λ_n` of `L_sym`.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal `q_i`, paired with `eigenvalues`.
    pub eigenvectors: Vec<Vec<f64>>,
    sqrt_degree: Vec<f64>,
}

impl SpectralOracle {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.node_count();
        if n > ORACLE_NODE_CAP {
            return Err(Error::OracleTooLarge {
                n,
                cap: ORACLE_NODE_CAP,
            });
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let sqrt_degree: Vec<f64> = (0..n).map(|v| (g.degree(v) as f64).sqrt()).collect();
        let mut l = vec![vec![0.0; n]; n];
        for (i, row) in l.iter_mut().enumerate() {
            row[i] = 1.0;
            for &j in g.neighbors(i) {
                row[j] = -1.0 / (sqrt_degree[i] * sqrt_degree[j]);
            }
        }
        let eig = symmetric_eigen(l);
        Ok(SpectralOracle {
            eigenvalues: eig.values,
            eigenvectors: eig.vectors,
            sqrt_degree,
        })
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Eigenvalues `σ_i = 1 − λ_i` of the standard transition matrix,
    /// descending.
    pub fn transition_spectrum(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|l| 1.0 - l).collect()
    }

    /// Right eigenvector `D^{-1/2} q_i` of `D⁻¹A` for `σ_i`.
    pub fn transition_eigenvector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors[i]
            .iter()
            .zip(&self.sqrt_degree)
            .map(|(q, s)| q / s)
            .collect()
    }

    /// `max_i ‖L_sym q_i − λ_i q_i‖₂`.
    pub fn max_residual(&self, g: &Graph) -> f64 {
        let n = self.len();
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(lambda, q)| {
                (0..n)
                    .map(|i| {
                        let off: f64 = g
                            .neighbors(i)
                            .iter()
                            .map(|&j| q[j] / (self.sqrt_degree[i] * self.sqrt_degree[j]))
                            .sum();
                        let r = q[i] - off - lambda * q[i];
                        r * r
                    })
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `max_{i,j} |q_iᵀq_j − δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (i, a) in self.eigenvectors.iter().enumerate() {
            for (j, b) in self.eigenvectors.iter().enumerate().skip(i) {
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Spectral weights `w_i = x_i² / Σ x_j²` of the scaled indicator
    /// `D^{1/2} 1_C`, with `x_i = q_iᵀ D^{1/2} 1_C`.
    pub fn weights(&self, c: &NodeSet) -> Result<Vec<f64>> {
        if c.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let x: Vec<f64> = self
            .eigenvectors
            .iter()
            .map(|q| c.iter().map(|v| q[v] * self.sqrt_degree[v]).sum())
            .collect();
        let total: f64 = x.iter().map(|v| v * v).sum();
        Ok(x.iter().map(|v| v * v / total).collect())
    }

    /// `Σ w_i λ_i`, the Rayleigh quotient of the scaled indicator.
    pub fn rayleigh_quotient(&self, c: &NodeSet) -> Result<f64> {
        Ok(self
            .weights(c)?
            .iter()
            .zip(&self.eigenvalues)
            .map(|(w, l)| w * l)
            .sum())
    }
}

fn require_small_side(g: &Graph, c: &NodeSet) -> Result<f64> {
    let vol = g.volume(c)?;
    if c.is_empty() || 2 * vol > g.total_volume() {
        return Err(Error::Precondition(format!(
            "community must be nonempty with at most half the volume (vol {vol} of {})",
            g.total_volume()
        )));
    }
    g.conductance(c)
}

/// Whether `λ₂/2 ≤ Φ(C) ≤ 1` holds for a small-side set.
pub fn cheeger_check(oracle: &SpectralOracle, g: &Graph, c: &NodeSet) -> Result<bool> {
    let phi = require_small_side(g, c)?;
    let lambda2 = oracle.eigenvalues.get(1).copied().unwrap_or(0.0);
    Ok(lambda2 / 2.0 <= phi + CHECK_SLACK && phi <= 1.0 + CHECK_SLACK)
}

/// Weight carried by eigenvalues below `λ₁ + t·eps`, paired with the lower
/// bound `1 − 1/t` it must exceed whenever `Φ(C) < λ₁ + eps`.
pub fn weight_concentration(
    oracle: &SpectralOracle,
    g: &Graph,
    c: &NodeSet,
    eps: f64,
    t: f64,
) -> Result<(f64, f64)> {
    let phi = require_small_side(g, c)?;
    let lambda1 = oracle.eigenvalues[0];
    if !(eps > 0.0 && phi < lambda1 + eps) {
        return Err(Error::Precondition(format!(
            "conductance {phi} is not below lambda_1 + eps = {}",
            lambda1 + eps
        )));
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(t > 1.0) {
        return Err(Error::Precondition(format!("t must exceed 1, got {t}")));
    }
    let threshold = lambda1 + t * eps;
    let lhs = oracle
        .weights(c)?
        .iter()
        .zip(&oracle.eigenvalues)
        .filter(|(_, &l)| l < threshold)
        .map(|(w, _)| w)
        .sum();
    Ok((lhs, 1.0 - 1.0 / t))
}

/// The sparse-indicator LP solved over the `d` leading eigenvectors of the
/// transition matrix instead of a Krylov basis. Each eigenvector is signed
/// so its seed entries sum to a nonnegative value.
pub fn glosp_indicator(g: &Graph, seeds: &NodeSet, d: usize) -> Result<IndicatorVector> {
    let oracle = SpectralOracle::new(g)?;
    if d == 0 || d > oracle.len() {
        return Err(Error::InvalidParameter(format!(
            "eigenspace dimension {d} outside 1..={}",
            oracle.len()
        )));
    }
    let columns = (0..d)
        .map(|i| {
            let mut u = oracle.transition_eigenvector(i);
            if seeds.iter().map(|s| u[s]).sum::<f64>() < 0.0 {
                u.iter_mut().for_each(|x| *x = -*x);
            }
            u
        })
        .collect();
    solve_sparse_indicator(&KrylovBasis::from_columns(columns)?, seeds)
}
