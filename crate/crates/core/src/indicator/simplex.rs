//! Dense tableau simplex for `min cᵀu` subject to `a_jᵀu ≥ b_j`, with `u`
//! free and few variables.
//!
//! The problem is solved through its dual, `max bᵀw` subject to
//! `Σ w_j a_j = c, w ≥ 0`, which is in standard form with only `d`
//! equality rows. The primal optimum is recovered from the final basis by
//! making the basic constraints active.

#![allow(clippy::needless_range_loop)]

const PIVOT_TOL: f64 = 1e-12;
const COST_TOL: f64 = 1e-11;
const MAX_ITERATIONS: usize = 100_000;
/// Switch from largest-coefficient to Bland pricing after this many
/// consecutive degenerate pivots.
const DEGENERATE_STREAK: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    Optimal(Vec<f64>),
    /// No `u` satisfies the constraints.
    Infeasible,
    /// The objective decreases without bound, or the dual phase 1 failed.
    Unbounded,
    /// Iteration limit or singular final basis.
    Stalled,
}

struct Tableau {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.cols + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.cols + 1;
        let p = self.at(row, col);
        for j in 0..width {
            self.data[row * width + j] /= p;
        }
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let factor = self.at(i, col);
            if factor != 0.0 {
                for j in 0..width {
                    let delta = factor * self.data[row * width + j];
                    self.data[i * width + j] -= delta;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximises `obj · x` over columns allowed by `enterable`.
    /// Returns `false` when the objective is unbounded.
    fn optimise(&mut self, obj: &[f64], enterable: impl Fn(usize) -> bool) -> Option<bool> {
        let mut streak = 0;
        for _ in 0..MAX_ITERATIONS {
            let weights: Vec<f64> = self.basis.iter().map(|&b| obj[b]).collect();
            let reduced = |j: usize| {
                obj[j] - (0..self.rows).map(|i| weights[i] * self.at(i, j)).sum::<f64>()
            };
            let bland = streak >= DEGENERATE_STREAK;
            let mut entering = None;
            let mut best = COST_TOL;
            for j in (0..self.cols).filter(|&j| enterable(j) && !self.basis.contains(&j)) {
                let r = reduced(j);
                if r > best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = r;
                }
            }
            let Some(col) = entering else {
                return Some(true);
            };

            let mut leaving: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, col);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    let better = match leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - 1e-15
                                || (ratio <= lr + 1e-15 && self.basis[i] < self.basis[li])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, ratio)) = leaving else {
                return Some(false);
            };
            streak = if ratio.abs() <= 1e-15 { streak + 1 } else { 0 };
            self.pivot(row, col);
        }
        None
    }
}

/// Solves `min cᵀu` s.t. `rows[j]·u ≥ b[j]`. The constraint rows must span
/// `R^d` for the primal recovery to be well defined.
pub(crate) fn minimise(c: &[f64], rows: &[Vec<f64>], b: &[f64]) -> Outcome {
    let d = c.len();
    let m = rows.len();
    let cols = m + d;
    let width = cols + 1;
    let mut data = vec![0.0; d * width];
    for i in 0..d {
        let sign = if c[i] < 0.0 { -1.0 } else { 1.0 };
        for (j, row) in rows.iter().enumerate() {
            data[i * width + j] = sign * row[i];
        }
        data[i * width + m + i] = 1.0;
        data[i * width + cols] = sign * c[i];
    }
    let mut tab = Tableau {
        rows: d,
        cols,
        data,
        basis: (m..cols).collect(),
    };

    let phase_one: Vec<f64> = (0..cols).map(|j| if j >= m { -1.0 } else { 0.0 }).collect();
    match tab.optimise(&phase_one, |_| true) {
        Some(true) => {}
        Some(false) => return Outcome::Stalled,
        None => return Outcome::Stalled,
    }
    let scale = 1.0 + c.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let residual: f64 = (0..d).filter(|&i| tab.basis[i] >= m).map(|i| tab.rhs(i)).sum();
    if residual > 1e-9 * scale {
        // The dual is infeasible, so the primal is infeasible or unbounded.
        return Outcome::Unbounded;
    }
    for i in 0..d {
        if tab.basis[i] >= m {
            let Some(j) = (0..m)
                .filter(|j| !tab.basis.contains(j))
                .max_by(|&a, &b| tab.at(i, a).abs().total_cmp(&tab.at(i, b).abs()))
                .filter(|&j| tab.at(i, j).abs() > 1e-9)
            else {
                return Outcome::Stalled;
            };
            tab.pivot(i, j);
        }
    }

    let phase_two: Vec<f64> = (0..cols).map(|j| if j < m { b[j] } else { 0.0 }).collect();
    match tab.optimise(&phase_two, |j| j < m) {
        Some(true) => {}
        Some(false) => return Outcome::Infeasible,
        None => return Outcome::Stalled,
    }

    let system: Vec<Vec<f64>> = tab.basis.iter().map(|&j| rows[j].clone()).collect();
    let rhs: Vec<f64> = tab.basis.iter().map(|&j| b[j]).collect();
    match solve_square(system, rhs) {
        Some(u) => Outcome::Optimal(u),
        None => Outcome::Stalled,
    }
}

/// Gaussian elimination with partial pivoting.
pub(crate) fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[p][k].abs() < 1e-14 {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f != 0.0 {
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
                b[i] -= f * b[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_corner() {
        // min u0 + u1 s.t. u0 ≥ 1, u1 ≥ 2, u0 + u1 ≥ 2
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        match minimise(&[1.0, 1.0], &rows, &[1.0, 2.0, 2.0]) {
            Outcome::Optimal(u) => {
                assert!((u[0] - 1.0).abs() < 1e-12 && (u[1] - 2.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_cost_components() {
        // min -u0 s.t. -u0 ≥ -3, u0 + u1 ≥ 0, u0 - u1 ≥ 0 → u0 = 3, |u1| ≤ 3
        let rows = vec![vec![-1.0, 0.0], vec![1.0, 1.0], vec![1.0, -1.0]];
        match minimise(&[-1.0, 0.0], &rows, &[-3.0, 0.0, 0.0]) {
            Outcome::Optimal(u) => assert!((u[0] - 3.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // u ≥ 1 and -u ≥ 0
        let rows = vec![vec![1.0], vec![-1.0]];
        assert_eq!(minimise(&[0.0], &rows, &[1.0, 0.0]), Outcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        // min -u s.t. u ≥ 0
        assert_eq!(minimise(&[-1.0], &[vec![1.0]], &[0.0]), Outcome::Unbounded);
    }

    #[test]
    fn square_solver() {
        let x = solve_square(vec![vec![0.0, 2.0], vec![1.0, 1.0]], vec![4.0, 3.0]).unwrap();
        assert_eq!(x, vec![1.0, 2.0]);
        assert!(solve_square(vec![vec![1.0, 1.0], vec![1.0, 1.0]], vec![1.0, 1.0]).is_none());
    }
}
