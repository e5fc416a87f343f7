//! Benchmark runner: detect many ground-truth communities from random seeds
//! and stream one CSV row per community plus a closing mean row.

use std::io::Write;
use std::path::Path;
use std::sync::{mpsc, Arc};
use std::thread;
use std::time::Duration;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{pick_random_seeds, run_pipeline, PipelineConfig, ResultRecord};
use crate::error::{Error, Result};
use crate::graph::{load_communities, Graph, NodeSet};

pub const CSV_HEADER: [&str; 8] = [
    "community_id",
    "method",
    "size",
    "conductance",
    "f1",
    "coverage",
    "time_ms",
    "error",
];

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub pipeline: PipelineConfig,
    /// How many communities to evaluate; all of them when larger than the file.
    pub n_communities: usize,
    pub seeds_per_community: usize,
    /// Per-community wall-clock limit.
    pub timeout: Duration,
    /// Write wall times into the `time_ms` column. Off by default so that
    /// reruns produce identical bytes.
    pub record_timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            pipeline: PipelineConfig::default(),
            n_communities: 500,
            seeds_per_community: 3,
            timeout: Duration::from_secs(60),
            record_timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BenchRow {
    Ok(ResultRecord),
    Failed {
        community_id: usize,
        method: String,
        error: String,
    },
}

#[derive(Clone, Debug, Default)]
pub struct BenchSummary {
    pub rows: Vec<BenchRow>,
    pub mean_size: f64,
    pub mean_conductance: f64,
    pub mean_f1: f64,
    pub mean_coverage: f64,
    pub mean_time_ms: f64,
    pub failures: usize,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl BenchSummary {
    fn from_rows(rows: Vec<BenchRow>) -> Self {
        let ok: Vec<&ResultRecord> = rows
            .iter()
            .filter_map(|r| match r {
                BenchRow::Ok(rec) => Some(rec),
                BenchRow::Failed { .. } => None,
            })
            .collect();
        BenchSummary {
            mean_size: mean(ok.iter().map(|r| r.size as f64)),
            mean_conductance: mean(ok.iter().filter_map(|r| r.conductance)),
            mean_f1: mean(ok.iter().filter_map(|r| r.f1)),
            mean_coverage: mean(ok.iter().filter_map(|r| r.coverage)),
            mean_time_ms: mean(ok.iter().map(|r| r.time_ms)),
            failures: rows.len() - ok.len(),
            rows,
        }
    }

    /// Writes the header, every row and the mean row.
    pub fn write_csv(&self, out: impl Write, record_timing: bool, method: &str) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::Output(e.to_string());
        w.write_record(CSV_HEADER).map_err(csv_err)?;
        let time = |t: f64| if record_timing { t.to_string() } else { String::new() };
        for row in &self.rows {
            let fields = match row {
                BenchRow::Ok(r) => [
                    r.community_id.to_string(),
                    r.method.clone(),
                    r.size.to_string(),
                    fmt_opt(r.conductance),
                    fmt_opt(r.f1),
                    fmt_opt(r.coverage),
                    time(r.time_ms),
                    String::new(),
                ],
                BenchRow::Failed {
                    community_id,
                    method,
                    error,
                } => [
                    community_id.to_string(),
                    method.clone(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    error.clone(),
                ],
            };
            w.write_record(&fields).map_err(csv_err)?;
        }
        let failures = if self.failures > 0 {
            format!("failed={}", self.failures)
        } else {
            String::new()
        };
        w.write_record([
            "mean".to_string(),
            method.to_string(),
            self.mean_size.to_string(),
            self.mean_conductance.to_string(),
            self.mean_f1.to_string(),
            self.mean_coverage.to_string(),
            time(self.mean_time_ms),
            failures,
        ])
        .map_err(csv_err)?;
        w.flush().map_err(|e| Error::Output(e.to_string()))
    }
}

fn run_one(
    g: &Arc<Graph>,
    truth: &NodeSet,
    seeds: NodeSet,
    cfg: &PipelineConfig,
    timeout: Duration,
) -> std::result::Result<ResultRecord, String> {
    let (tx, rx) = mpsc::channel();
    let (g, truth, cfg) = (Arc::clone(g), truth.clone(), cfg.clone());
    thread::spawn(move || {
        let result = run_pipeline(&g, &seeds, &cfg, Some(&truth)).map(|d| d.record);
        let _ = tx.send(result);
    });
    match rx.recv_timeout(timeout) {
        Ok(Ok(record)) => Ok(record),
        Ok(Err(e)) => Err(e.to_string()),
        Err(mpsc::RecvTimeoutError::Timeout) => {
            Err(format!("timed out after {:.3}s", timeout.as_secs_f64()))
        }
        Err(mpsc::RecvTimeoutError::Disconnected) => Err("pipeline worker panicked".into()),
    }
}

/// Runs the benchmark on an in-memory graph and writes CSV to `out`.
pub fn run_benchmark_on(
    g: Arc<Graph>,
    communities: &[NodeSet],
    cfg: &BenchConfig,
    out: impl Write,
) -> Result<BenchSummary> {
    cfg.pipeline.validate()?;
    if communities.is_empty() {
        return Err(Error::InvalidParameter("community file is empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.pipeline.rng_seed);
    let mut selected: Vec<usize> = if cfg.n_communities >= communities.len() {
        (0..communities.len()).collect()
    } else {
        index::sample(&mut rng, communities.len(), cfg.n_communities).into_vec()
    };
    selected.sort_unstable();

    let method = cfg.pipeline.method_label();
    let mut rows = Vec::with_capacity(selected.len());
    for id in selected {
        let truth = &communities[id];
        let seed_stream: u64 = rng.gen();
        let outcome = pick_random_seeds(truth, cfg.seeds_per_community, seed_stream)
            .map_err(|e| e.to_string())
            .and_then(|seeds| run_one(&g, truth, seeds, &cfg.pipeline, cfg.timeout));
        rows.push(match outcome {
            Ok(mut record) => {
                record.community_id = id;
                BenchRow::Ok(record)
            }
            Err(error) => BenchRow::Failed {
                community_id: id,
                method: method.clone(),
                error,
            },
        });
    }
    let summary = BenchSummary::from_rows(rows);
    summary.write_csv(out, cfg.record_timing, &method)?;
    Ok(summary)
}

/// Loads the graph and community files, then runs [`run_benchmark_on`].
pub fn run_benchmark(
    graph_path: impl AsRef<Path>,
    communities_path: impl AsRef<Path>,
    cfg: &BenchConfig,
    out: impl Write,
) -> Result<BenchSummary> {
    let g = Graph::load_edge_list(graph_path)?;
    let communities = load_communities(communities_path, &g)?;
    run_benchmark_on(Arc::new(g), &communities, cfg, out)
}
