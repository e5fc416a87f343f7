//! Brute-force reference for the indicator LP: enumerate every vertex of the
//! feasible polyhedron and keep the cheapest. Exponential in `d`, so only
//! meant for cross-checking the simplex solver on small instances.

#![allow(clippy::needless_range_loop)]

use super::{IndicatorVector, ReducedLp, FEASIBILITY_TOL};
use crate::diffusion::KrylovBasis;
use crate::error::{Error, Result};
use crate::graph::NodeSet;

pub const MAX_DIM: usize = 3;
pub const MAX_ROWS: usize = 2000;

/// Row-echelon rank test for a set of columns.
fn rank(columns: &[Vec<f64>]) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let n = columns[0].len();
    // Rows of the transposed matrix, one per column.
    let mut m: Vec<Vec<f64>> = columns.to_vec();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())) else {
            break;
        };
        if m[p][c].abs() < 1e-9 {
            continue;
        }
        m.swap(r, p);
        for i in r + 1..m.len() {
            let f = m[i][c] / m[r][c];
            for k in c..n {
                m[i][k] -= f * m[r][k];
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[p][k].abs() < 1e-12 {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in 0..n {
            if i != k {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
                b[i] -= f * b[k];
            }
        }
    }
    Some((0..n).map(|k| b[k] / a[k][k]).collect())
}

fn combinations(m: usize, d: usize, mut visit: impl FnMut(&[usize])) {
    if d == 0 || d > m {
        return;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    'outer: loop {
        visit(&idx);
        for i in (0..d).rev() {
            if idx[i] < m - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        return;
    }
}

/// Cheapest feasible vertex, ties broken towards the lexicographically
/// smallest coefficients.
pub fn enumerate_lp_oracle(basis: &KrylovBasis, seeds: &NodeSet) -> Result<IndicatorVector> {
    if basis.dim() > MAX_DIM || basis.rows() > MAX_ROWS {
        return Err(Error::InvalidParameter(format!(
            "oracle handles d ≤ {MAX_DIM} and at most {MAX_ROWS} rows"
        )));
    }
    let lp = ReducedLp::new(basis, seeds)?;

    let mut kept: Vec<usize> = Vec::new();
    let mut scale: Vec<f64> = Vec::new();
    let mut chosen: Vec<Vec<f64>> = Vec::new();
    for (j, col) in basis.columns().iter().enumerate() {
        let max = col.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if max == 0.0 {
            continue;
        }
        let normalised: Vec<f64> = col.iter().map(|x| x / max).collect();
        chosen.push(normalised);
        if rank(&chosen) == chosen.len() {
            kept.push(j);
            scale.push(max);
        } else {
            chosen.pop();
        }
    }
    let d = kept.len();
    let infeasible = || Error::Infeasible {
        seed: lp
            .rows
            .iter()
            .zip(&lp.bounds)
            .zip(&lp.row_nodes)
            .find(|((row, &b), _)| b > 0.0 && kept.iter().all(|&j| row[j] == 0.0))
            .map(|(_, &node)| node),
    };
    if d == 0 {
        return Err(infeasible());
    }

    let rows: Vec<Vec<f64>> = lp
        .rows
        .iter()
        .map(|r| kept.iter().zip(&scale).map(|(&j, s)| r[j] / s).collect())
        .collect();
    let cost: Vec<f64> = kept.iter().zip(&scale).map(|(&j, s)| lp.objective[j] / s).collect();

    // Distinct nonzero constraints only; zero rows can never be active at a vertex.
    let mut candidates: Vec<(Vec<f64>, f64)> = Vec::new();
    for (row, &b) in rows.iter().zip(&lp.bounds) {
        if row.iter().all(|&x| x == 0.0) {
            continue;
        }
        if !candidates.iter().any(|(r, cb)| r == row && *cb == b) {
            candidates.push((row.clone(), b));
        }
    }

    let mut vertices: Vec<(f64, Vec<f64>)> = Vec::new();
    combinations(candidates.len(), d, |active| {
        let a = active.iter().map(|&i| candidates[i].0.clone()).collect();
        let b = active.iter().map(|&i| candidates[i].1).collect();
        let Some(u) = solve(a, b) else { return };
        let feasible = rows
            .iter()
            .zip(&lp.bounds)
            .all(|(r, &b)| r.iter().zip(&u).map(|(x, y)| x * y).sum::<f64>() >= b - FEASIBILITY_TOL);
        if feasible {
            let obj = cost.iter().zip(&u).map(|(x, y)| x * y).sum();
            vertices.push((obj, u));
        }
    });

    let best = vertices
        .iter()
        .map(|(obj, _)| *obj)
        .fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return Err(infeasible());
    }
    let tol = 1e-10 * best.abs().max(1.0);
    let u = vertices
        .into_iter()
        .filter(|(obj, _)| *obj <= best + tol)
        .map(|(_, u)| u)
        .min_by(|a, b| {
            for (x, y) in a.iter().zip(b) {
                if (x - y).abs() > 1e-9 * x.abs().max(y.abs()).max(1.0) {
                    return x.total_cmp(y);
                }
            }
            std::cmp::Ordering::Equal
        })
        .expect("at least one optimal vertex");

    let mut coefficients = vec![0.0; basis.dim()];
    for ((&j, s), x) in kept.iter().zip(&scale).zip(&u) {
        coefficients[j] = x / s;
    }
    let values = (0..basis.rows())
        .map(|i| {
            basis
                .columns()
                .iter()
                .zip(&coefficients)
                .map(|(col, x)| col[i] * x)
                .sum()
        })
        .collect();
    Ok(IndicatorVector {
        values,
        coefficients,
    })
}
