//! Sparse community indicator: the minimum-ℓ1 nonnegative vector in the span
//! of a Krylov basis whose seed entries reach `1/|S|`.
//!
//! Writing `y = V·u` turns the problem into an LP over the `d` coefficients:
//!
//! ```text
//! min  (eᵀV)·u
//! s.t. V_i·u ≥ 0        for every node i
//!      V_s·u ≥ 1/|S|    for every seed s
//! ```
//!
//! With `d` around 2–3 this is tiny regardless of the subgraph size.

pub mod oracle;
mod simplex;

use crate::diffusion::KrylovBasis;
use crate::error::{Error, Result};
use crate::graph::NodeSet;

use simplex::Outcome;

/// Absolute tolerance on constraint satisfaction.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Relative slack defining the optimal face for the lexicographic tie-break.
const OPTIMAL_FACE_TOL: f64 = 1e-13;

/// Relaxed membership likelihood per node of the sampled subgraph.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicatorVector {
    pub values: Vec<f64>,
    /// Coefficients `u` with `values = V·u`.
    pub coefficients: Vec<f64>,
}

impl IndicatorVector {
    /// `‖y‖₁`, which equals `Σ y` since `y ≥ 0`.
    pub fn objective(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The LP in coefficient space.
#[derive(Clone, Debug)]
pub struct ReducedLp {
    /// Column sums of the basis.
    pub objective: Vec<f64>,
    /// One row per node followed by one row per seed.
    pub rows: Vec<Vec<f64>>,
    pub bounds: Vec<f64>,
    /// Local ID of the node behind each row.
    pub row_nodes: Vec<usize>,
}

impl ReducedLp {
    pub fn new(basis: &KrylovBasis, seeds: &NodeSet) -> Result<Self> {
        if seeds.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let n = basis.rows();
        if let Some(&s) = seeds.as_slice().last() {
            if s >= n {
                return Err(Error::NodeOutOfRange { node: s, n });
            }
        }
        let objective = basis.columns().iter().map(|c| c.iter().sum()).collect();
        let seed_bound = 1.0 / seeds.len() as f64;
        let mut rows = Vec::with_capacity(n + seeds.len());
        let mut bounds = Vec::with_capacity(n + seeds.len());
        let mut row_nodes = Vec::with_capacity(n + seeds.len());
        for i in 0..n {
            rows.push(basis.row(i));
            bounds.push(0.0);
            row_nodes.push(i);
        }
        for s in seeds.iter() {
            rows.push(basis.row(s));
            bounds.push(seed_bound);
            row_nodes.push(s);
        }
        Ok(ReducedLp {
            objective,
            rows,
            bounds,
            row_nodes,
        })
    }

    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.rows.len()
    }
}

/// Column subset and per-column scale used to condition the LP.
struct Conditioning {
    kept: Vec<usize>,
    scale: Vec<f64>,
}

/// Normalises every column to unit max-norm and drops columns that are
/// numerically dependent on earlier ones (modified Gram–Schmidt).
fn condition(basis: &KrylovBasis) -> Conditioning {
    let mut kept = Vec::new();
    let mut scale = Vec::new();
    let mut orthonormal: Vec<Vec<f64>> = Vec::new();
    for (j, col) in basis.columns().iter().enumerate() {
        let max = col.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if max == 0.0 {
            continue;
        }
        let mut r: Vec<f64> = col.iter().map(|x| x / max).collect();
        let norm0 = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        for q in &orthonormal {
            let dot: f64 = r.iter().zip(q).map(|(a, b)| a * b).sum();
            r.iter_mut().zip(q).for_each(|(a, b)| *a -= dot * b);
        }
        let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 * norm0 {
            orthonormal.push(r.iter().map(|x| x / norm).collect());
            kept.push(j);
            scale.push(max);
        }
    }
    Conditioning { kept, scale }
}

fn infeasible_seed(lp: &ReducedLp, kept: &[usize]) -> Option<usize> {
    lp.rows
        .iter()
        .zip(&lp.bounds)
        .zip(&lp.row_nodes)
        .find(|((row, &b), _)| b > 0.0 && kept.iter().all(|&j| row[j] == 0.0))
        .map(|(_, &node)| node)
}

/// Solves the sparse-indicator LP. Among optimal vertices the
/// lexicographically smallest coefficient vector is returned.
pub fn solve_sparse_indicator(basis: &KrylovBasis, seeds: &NodeSet) -> Result<IndicatorVector> {
    let lp = ReducedLp::new(basis, seeds)?;
    let Conditioning { kept, scale } = condition(basis);
    if kept.is_empty() {
        return Err(Error::Infeasible {
            seed: seeds.iter().next(),
        });
    }

    let objective: Vec<f64> = kept.iter().zip(&scale).map(|(&j, s)| lp.objective[j] / s).collect();
    let mut rows: Vec<Vec<f64>> = lp
        .rows
        .iter()
        .map(|r| kept.iter().zip(&scale).map(|(&j, s)| r[j] / s).collect())
        .collect();
    let mut bounds = lp.bounds.clone();

    let not_optimal = |outcome: Outcome| match outcome {
        Outcome::Infeasible | Outcome::Unbounded => Error::Infeasible {
            seed: infeasible_seed(&lp, &kept),
        },
        Outcome::Stalled => Error::Solver("simplex stalled or ended on a singular basis".into()),
        Outcome::Optimal(_) => unreachable!(),
    };

    let mut u = match simplex::minimise(&objective, &rows, &bounds) {
        Outcome::Optimal(u) => u,
        other => return Err(not_optimal(other)),
    };

    // Lexicographic tie-break: restrict to the optimal face, then minimise
    // each coordinate in turn.
    let best: f64 = dot(&objective, &u);
    rows.push(objective.iter().map(|x| -x).collect());
    bounds.push(-(best + OPTIMAL_FACE_TOL * best.abs().max(1.0)));
    for i in 0..kept.len() {
        let mut unit = vec![0.0; kept.len()];
        unit[i] = 1.0;
        match simplex::minimise(&unit, &rows, &bounds) {
            Outcome::Optimal(v) => {
                let slack = OPTIMAL_FACE_TOL * v[i].abs().max(1.0);
                rows.push(unit.iter().map(|x| -x).collect());
                bounds.push(-(v[i] + slack));
                u = v;
            }
            // The face is nonempty, so failure here is numerical; keep the
            // vertex already found.
            _ => break,
        }
    }

    let mut coefficients = vec![0.0; basis.dim()];
    for ((&j, s), x) in kept.iter().zip(&scale).zip(&u) {
        coefficients[j] = x / s;
    }
    let values = (0..basis.rows())
        .map(|i| {
            let y: f64 = basis
                .columns()
                .iter()
                .zip(&coefficients)
                .map(|(col, x)| col[i] * x)
                .sum();
            if y < 0.0 && y > -FEASIBILITY_TOL {
                0.0
            } else {
                y
            }
        })
        .collect();
    Ok(IndicatorVector {
        values,
        coefficients,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
