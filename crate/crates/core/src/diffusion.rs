//! Random-walk transition operators over a sampled subgraph and the Krylov
//! bases built from short diffusions.
//!
//! Every walk kind has the form `N = a·I + b·S + c·W⁻¹(A + ℓI)` where `W`
//! is the (possibly loop-augmented) degree matrix and `S` the seed
//! indicator diagonal. The operator is never materialised; both `N·p` and
//! `Nᵀ·p` are computed directly from the adjacency lists.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

/// The four transition matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WalkKind {
    /// `D⁻¹A`.
    Standard,
    /// `(D + αI)⁻¹(αI + A)`: a standard walk on the graph with `α` self-loops per node.
    LightLazy(u32),
    /// `α/(1+α)·I + 1/(1+α)·D⁻¹A`, `α ∈ [0, 1]`.
    Lazy(f64),
    /// `α·S + (1−α)·D⁻¹A`, `α ∈ [0, 1]`, with `S` the seed indicator diagonal.
    PersonalizedPageRank(f64),
}

impl WalkKind {
    /// Builds a kind from a method name (`srw`, `llrw`, `lrw`, `ppr`) and α.
    pub fn from_method(method: &str, alpha: f64) -> Result<Self> {
        let kind = match method {
            "srw" => WalkKind::Standard,
            "llrw" => {
                if !(alpha >= 0.0 && alpha.fract() == 0.0 && alpha <= u32::MAX as f64) {
                    return Err(Error::InvalidParameter(format!(
                        "light lazy walk needs a nonnegative integer alpha, got {alpha}"
                    )));
                }
                WalkKind::LightLazy(alpha as u32)
            }
            "lrw" => WalkKind::Lazy(alpha),
            "ppr" => WalkKind::PersonalizedPageRank(alpha),
            other => {
                return Err(Error::InvalidParameter(format!("unknown walk method {other:?}")))
            }
        };
        kind.validate()?;
        Ok(kind)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            WalkKind::Lazy(a) | WalkKind::PersonalizedPageRank(a) if !(0.0..=1.0).contains(&a) => {
                Err(Error::InvalidParameter(format!(
                    "alpha must lie in [0, 1] for {self}, got {a}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Short label used in result tables: `LRw`, `LLi`, `LLa`, `LPr`.
    pub fn label(&self) -> &'static str {
        match self {
            WalkKind::Standard => "LRw",
            WalkKind::LightLazy(_) => "LLi",
            WalkKind::Lazy(_) => "LLa",
            WalkKind::PersonalizedPageRank(_) => "LPr",
        }
    }

    /// Stochastic kinds conserve probability mass under the regular walk.
    pub fn is_stochastic(&self) -> bool {
        !matches!(self, WalkKind::PersonalizedPageRank(a) if *a > 0.0)
    }
}

impl fmt::Display for WalkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkKind::Standard => write!(f, "srw"),
            WalkKind::LightLazy(a) => write!(f, "llrw(alpha={a})"),
            WalkKind::Lazy(a) => write!(f, "lrw(alpha={a})"),
            WalkKind::PersonalizedPageRank(a) => write!(f, "ppr(alpha={a})"),
        }
    }
}

/// Which operator a diffusion step applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Direction {
    /// `p ← Nᵀp`: probability spreads out from the seeds.
    #[default]
    Regular,
    /// `p ← Np`.
    Inverse,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(Direction::Regular),
            "inverse" => Ok(Direction::Inverse),
            other => Err(Error::InvalidParameter(format!("unknown direction {other:?}"))),
        }
    }
}

/// Matrix-free transition operator bound to one graph and seed set.
#[derive(Clone, Debug)]
pub struct TransitionOperator<'g> {
    graph: &'g Graph,
    kind: WalkKind,
    /// Coefficient on `I`.
    identity: f64,
    /// Coefficient on the seed diagonal.
    seed_weight: f64,
    /// Coefficient on the walk part.
    walk: f64,
    /// Self-loops added to every node before normalising.
    loops: f64,
    /// `1 / (degree + loops)`.
    inv_weight: Vec<f64>,
    seed_mask: Vec<bool>,
}

impl<'g> TransitionOperator<'g> {
    pub fn new(graph: &'g Graph, seeds: &NodeSet, kind: WalkKind) -> Result<Self> {
        kind.validate()?;
        let n = graph.node_count();
        if let Some(v) = (0..n).find(|&v| graph.degree(v) == 0) {
            return Err(Error::IsolatedNode(v));
        }
        if let Some(&s) = seeds.as_slice().last() {
            if s >= n {
                return Err(Error::NodeOutOfRange { node: s, n });
            }
        }
        let (identity, seed_weight, walk, loops) = match kind {
            WalkKind::Standard => (0.0, 0.0, 1.0, 0.0),
            WalkKind::LightLazy(a) => (0.0, 0.0, 1.0, a as f64),
            WalkKind::Lazy(a) => (a / (1.0 + a), 0.0, 1.0 / (1.0 + a), 0.0),
            WalkKind::PersonalizedPageRank(a) => (0.0, a, 1.0 - a, 0.0),
        };
        let inv_weight = (0..n)
            .map(|v| 1.0 / (graph.degree(v) as f64 + loops))
            .collect();
        Ok(TransitionOperator {
            graph,
            kind,
            identity,
            seed_weight,
            walk,
            loops,
            inv_weight,
            seed_mask: seeds.mask(n),
        })
    }

    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.node_count()
    }

    fn diagonal_extra(&self, i: usize, p: f64) -> f64 {
        let seed = if self.seed_mask[i] { self.seed_weight } else { 0.0 };
        (self.identity + seed) * p
    }

    /// `N·p`.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        assert_eq!(p.len(), self.dim(), "vector length must match node count");
        (0..self.dim())
            .map(|i| {
                let gathered: f64 = self.graph.neighbors(i).iter().map(|&j| p[j]).sum();
                let walk = (self.loops * p[i] + gathered) * self.inv_weight[i];
                self.walk * walk + self.diagonal_extra(i, p[i])
            })
            .collect()
    }

    /// `Nᵀ·p`.
    pub fn apply_transpose(&self, p: &[f64]) -> Vec<f64> {
        assert_eq!(p.len(), self.dim(), "vector length must match node count");
        let scaled: Vec<f64> = p
            .iter()
            .zip(&self.inv_weight)
            .map(|(x, w)| x * w)
            .collect();
        (0..self.dim())
            .map(|j| {
                let gathered: f64 = self.graph.neighbors(j).iter().map(|&i| scaled[i]).sum();
                let walk = self.loops * scaled[j] + gathered;
                self.walk * walk + self.diagonal_extra(j, p[j])
            })
            .collect()
    }

    pub fn step(&self, p: &[f64], direction: Direction) -> Vec<f64> {
        match direction {
            Direction::Regular => self.apply_transpose(p),
            Direction::Inverse => self.apply(p),
        }
    }
}

/// Uniform mass `1/|S|` on each seed.
pub fn initial_density(n: usize, seeds: &NodeSet) -> Result<Vec<f64>> {
    if seeds.is_empty() {
        return Err(Error::EmptyNodeSet);
    }
    let mut p = vec![0.0; n];
    let mass = 1.0 / seeds.len() as f64;
    for s in seeds.iter() {
        if s >= n {
            return Err(Error::NodeOutOfRange { node: s, n });
        }
        p[s] = mass;
    }
    Ok(p)
}

/// Applies `steps` diffusion steps; no renormalisation between steps.
pub fn propagate(op: &TransitionOperator, p: &[f64], steps: usize, direction: Direction) -> Vec<f64> {
    let mut current = p.to_vec();
    for _ in 0..steps {
        current = op.step(&current, direction);
    }
    current
}

/// Column matrix `[p_k, p_{k+1}, …, p_{k+d−1}]`.
#[derive(Clone, Debug)]
pub struct KrylovBasis {
    columns: Vec<Vec<f64>>,
    k_start: usize,
    direction: Direction,
}

impl KrylovBasis {
    /// Wraps explicit columns, e.g. eigenvectors or test fixtures.
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::InvalidParameter("basis needs at least one column".into()));
        };
        let n = first.len();
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidParameter("basis columns differ in length".into()));
        }
        if columns.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("basis has non-finite entries".into()));
        }
        Ok(KrylovBasis {
            columns,
            k_start: 0,
            direction: Direction::Regular,
        })
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> usize {
        self.columns[0].len()
    }

    pub fn k_start(&self) -> usize {
        self.k_start
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i]).collect()
    }
}

/// Diffuses from the uniform seed density and collects `d` consecutive iterates
/// starting at step `k`.
pub fn krylov_basis(
    op: &TransitionOperator,
    seeds: &NodeSet,
    k: usize,
    d: usize,
    direction: Direction,
) -> Result<KrylovBasis> {
    if d == 0 {
        return Err(Error::InvalidParameter("Krylov dimension must be at least 1".into()));
    }
    let p0 = initial_density(op.dim(), seeds)?;
    let mut p = propagate(op, &p0, k, direction);
    let mut columns = Vec::with_capacity(d);
    for i in 0..d {
        if i > 0 {
            p = op.step(&p, direction);
        }
        columns.push(p.clone());
    }
    Ok(KrylovBasis {
        columns,
        k_start: k,
        direction,
    })
}
