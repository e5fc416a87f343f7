mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use losp::boundary::{first_local_min, sweep_first_local_min, truncate_by_size, SweepConfig};
use losp::diffusion::{initial_density, krylov_basis, propagate, Direction, KrylovBasis, TransitionOperator, WalkKind};
use losp::eval::{f1_score, roundness, SpectralOracle};
use losp::harness::{run_pipeline, BoundaryMode, PipelineConfig};
use losp::indicator::{solve_sparse_indicator, IndicatorVector, FEASIBILITY_TOL};
use losp::sampling::{sample, SamplingConfig};
use losp::{Graph, NodeSet};

fn graph_strategy(max_n: usize, non_bipartite: bool) -> impl Strategy<Value = Graph> {
    (3..=max_n, 0.15..0.6f64, any::<u64>()).prop_map(move |(n, p, seed)| {
        common::random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, p, non_bipartite)
    })
}

/// A graph plus a nonempty node subset given as raw picks reduced mod n.
fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, NodeSet)> {
    (graph_strategy(max_n, false), prop::collection::vec(any::<usize>(), 1..8)).prop_map(|(g, picks)| {
        let n = g.node_count();
        let set = NodeSet::new(picks.into_iter().map(|p| p % n));
        (g, set)
    })
}

fn walk_kind() -> impl Strategy<Value = WalkKind> {
    prop_oneof![
        Just(WalkKind::Standard),
        (0u32..4).prop_map(WalkKind::LightLazy),
        (0.0..=1.0f64).prop_map(WalkKind::Lazy),
        (0.0..0.99f64).prop_map(WalkKind::PersonalizedPageRank),
    ]
}

fn complement(g: &Graph, c: &NodeSet) -> NodeSet {
    (0..g.node_count()).filter(|&v| !c.contains(v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn volume_cut_and_conductance((g, c) in graph_and_set(30)) {
        let rest = complement(&g, &c);
        prop_assert_eq!(g.volume(&c).unwrap() + g.volume(&rest).unwrap(), 2 * g.edge_count());
        prop_assert_eq!(g.cut(&c).unwrap(), g.cut(&rest).unwrap());
        if !rest.is_empty() {
            let phi = g.conductance(&c).unwrap();
            prop_assert!((0.0..=1.0).contains(&phi));
            prop_assert_eq!(phi, g.conductance(&rest).unwrap());
        }
    }

    #[test]
    fn edge_list_round_trip(g in graph_strategy(30, false)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        g.write_edge_list(&path).unwrap();
        let back = Graph::load_edge_list(&path).unwrap();
        prop_assert_eq!(back.node_count(), g.node_count());
        let labelled = |h: &Graph| h.edges().map(|(u, v)| (h.label(u), h.label(v))).collect::<Vec<_>>();
        prop_assert_eq!(labelled(&back), labelled(&g));
    }

    #[test]
    fn stochastic_walks_conserve_mass((g, seeds) in graph_and_set(30), kind in walk_kind(), steps in 0usize..6) {
        let op = TransitionOperator::new(&g, &seeds, kind).unwrap();
        let p0 = initial_density(g.node_count(), &seeds).unwrap();
        for dir in [Direction::Regular, Direction::Inverse] {
            let p = propagate(&op, &p0, steps, dir);
            prop_assert!(p.iter().all(|&x| x >= 0.0));
            if kind.is_stochastic() && dir == Direction::Regular {
                let mass: f64 = p.iter().sum();
                prop_assert!((mass - 1.0).abs() < 1e-12, "mass {}", mass);
            }
        }
        if kind.is_stochastic() {
            let sums = op.apply(&vec![1.0; g.node_count()]);
            prop_assert!(sums.iter().all(|s| (s - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn transpose_is_adjoint((g, seeds) in graph_and_set(25), kind in walk_kind(), x in prop::collection::vec(-1.0..1.0f64, 25), y in prop::collection::vec(-1.0..1.0f64, 25)) {
        let n = g.node_count();
        let (x, y) = (&x[..n], &y[..n]);
        let op = TransitionOperator::new(&g, &seeds, kind).unwrap();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
        prop_assert!((dot(y, &op.apply(x)) - dot(&op.apply_transpose(y), x)).abs() < 1e-12);
    }

    #[test]
    fn indicator_is_feasible_and_scale_free((g, seeds) in graph_and_set(40), kind in walk_kind(), scale in prop::collection::vec(0.01..100.0f64, 3)) {
        let op = TransitionOperator::new(&g, &seeds, kind).unwrap();
        let basis = krylov_basis(&op, &seeds, 2, 2, Direction::Regular).unwrap();
        let Ok(y) = solve_sparse_indicator(&basis, &seeds) else { return Ok(()) };
        prop_assert!(y.values.iter().all(|&v| v >= -FEASIBILITY_TOL));
        let floor = 1.0 / seeds.len() as f64;
        prop_assert!(seeds.iter().all(|s| y.values[s] >= floor - 1e-9));

        let scaled = KrylovBasis::from_columns(
            basis.columns().iter().zip(&scale).map(|(c, s)| c.iter().map(|x| x * s).collect()).collect(),
        ).unwrap();
        let z = solve_sparse_indicator(&scaled, &seeds).unwrap();
        prop_assert!((z.objective() - y.objective()).abs() <= 1e-9 * y.objective().max(1.0));
    }

    #[test]
    fn truncation_ignores_positive_rescaling(values in prop::collection::vec(0.0..1.0f64, 1..40), factor in 0.001..1000.0f64, size_pick in any::<usize>()) {
        let size = 1 + size_pick % values.len();
        let y = IndicatorVector { values: values.clone(), coefficients: vec![] };
        let z = IndicatorVector { values: values.iter().map(|v| v * factor).collect(), coefficients: vec![] };
        let a = truncate_by_size(&y, size).unwrap();
        prop_assert_eq!(a.len(), size);
        prop_assert_eq!(a, truncate_by_size(&z, size).unwrap());
    }

    #[test]
    fn first_local_min_is_in_range(curve in prop::collection::vec(0.0..1.0f64, 1..30)) {
        let i = first_local_min(&curve, 1.02).unwrap();
        prop_assert!(i < curve.len());
        let global = curve.iter().cloned().fold(f64::INFINITY, f64::min);
        // Either the global minimum or a point some later value exceeds by β.
        prop_assert!(curve[i] == global || curve[i + 1..].iter().any(|&x| x > 1.02 * curve[i]));
    }

    #[test]
    fn f1_is_symmetric(a in prop::collection::btree_set(0usize..50, 0..20), b in prop::collection::btree_set(0usize..50, 1..20)) {
        let (a, b) = (NodeSet::new(a), NodeSet::new(b));
        let ab = f1_score(&a, &b).unwrap();
        prop_assert_eq!(ab, f1_score(&b, &a).unwrap());
        prop_assert!((0.0..=1.0).contains(&ab));
    }

    #[test]
    fn roundness_is_bounded(g in graph_strategy(30, false)) {
        let (r, _) = roundness(&g).unwrap();
        prop_assert!((1.0 / 3.0 - 1e-9..=1.0).contains(&r), "R = {}", r);
    }

    #[test]
    fn oracle_spectrum(g in graph_strategy(25, true)) {
        let o = SpectralOracle::new(&g).unwrap();
        prop_assert!(o.max_residual(&g) <= 1e-8);
        prop_assert!(o.orthonormality_error() <= 1e-8);
        prop_assert!(o.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let sigma = o.transition_spectrum();
        prop_assert!(sigma.iter().any(|s| (s - 1.0).abs() < 1e-8));
        let mut sorted = sigma.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        prop_assert!(sorted[1] < 1.0 - 1e-8);
        prop_assert!(*sorted.last().unwrap() > -1.0 + 1e-8);
        let w = o.weights(&NodeSet::new([0])).unwrap();
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sample_contains_seeds((g, seeds) in graph_and_set(60), n1 in 1usize..40, n2_extra in 0usize..40, t in 1usize..4) {
        let n2 = (seeds.len() + n2_extra).max(n1);
        let cfg = SamplingConfig { n1_lower: n1, n2_upper: n2, t_max_bfs: t, ..SamplingConfig::default() };
        let sub = sample(&g, &seeds, &cfg).unwrap();
        prop_assert!(sub.node_count() <= n2);
        prop_assert_eq!(sub.to_global(&sub.seeds), seeds.clone());
        // Every sampled node shares a component with some seed.
        let dists: Vec<Vec<usize>> = sub.seeds.iter().map(|s| sub.graph.bfs_distances(s)).collect();
        prop_assert!((0..sub.node_count()).all(|v| dists.iter().any(|d| d[v] != usize::MAX)));
    }

    #[test]
    fn pipeline_keeps_seeds((g, seeds) in graph_and_set(50), kind in walk_kind(), inverse in any::<bool>(), sweep in any::<bool>()) {
        let cfg = PipelineConfig {
            walk: kind,
            direction: if inverse { Direction::Inverse } else { Direction::Regular },
            boundary: if sweep { BoundaryMode::Sweep } else { BoundaryMode::Size(seeds.len() + 2) },
            ..PipelineConfig::default()
        };
        match run_pipeline(&g, &seeds, &cfg, None) {
            Ok(found) => prop_assert!(seeds.iter().all(|s| found.community.contains(s))),
            // A seed set covering more than half the volume has no sweep range.
            Err(e) => prop_assert!(sweep, "{}", e),
        }
    }

    #[test]
    fn sweep_result_contains_seeds((g, seeds) in graph_and_set(40), values in prop::collection::vec(0.0..1.0f64, 40)) {
        let y = IndicatorVector { values: values[..g.node_count()].to_vec(), coefficients: vec![] };
        if let Ok(c) = sweep_first_local_min(&y, &g, &seeds, &SweepConfig::default()) {
            prop_assert!(seeds.iter().all(|s| c.contains(s)));
        }
    }
}
