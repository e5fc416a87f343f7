use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use losp::boundary::SweepConfig;
use losp::diffusion::{Direction, WalkKind};
use losp::graph::{load_communities, write_communities, Graph, NodeSet};
use losp::harness::{
    generate_planted_partition, run_benchmark_on, run_pipeline, BenchConfig, BoundaryMode,
    PipelineConfig, PlantedPartitionSpec,
};
use losp::sampling::SamplingConfig;
use losp::{Error, Result};

#[derive(Parser)]
#[command(name = "losp", version, about = "Local spectral community detection from seed nodes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect the community around a set of seeds.
    Detect {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated node IDs as they appear in the edge list.
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<u64>,
        #[command(flatten)]
        method: MethodArgs,
        /// Write the community (one line of node IDs) here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score detection on ground-truth communities; writes CSV.
    Bench {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        communities: PathBuf,
        #[arg(long, default_value_t = 500)]
        n_communities: usize,
        #[arg(long = "seeds-per", default_value_t = 3)]
        seeds_per: usize,
        #[command(flatten)]
        method: MethodArgs,
        /// Per-community time limit in seconds.
        #[arg(long, default_value_t = 60.0)]
        timeout_secs: f64,
        /// Fill the time_ms column (makes output vary between runs).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a planted-partition graph and its communities.
    GenPlanted {
        #[arg(long)]
        blocks: usize,
        #[arg(long)]
        block_size: usize,
        #[arg(long)]
        p_in: f64,
        #[arg(long)]
        p_out: f64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_communities: PathBuf,
    },
}

#[derive(Args)]
struct MethodArgs {
    /// srw | llrw | lrw | ppr
    #[arg(long, default_value = "llrw")]
    method: String,
    /// Defaults to 1 for llrw/lrw and 0.1 for ppr.
    #[arg(long)]
    alpha: Option<f64>,
    /// regular | inverse
    #[arg(long, default_value = "regular")]
    direction: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 2)]
    steps: usize,
    /// sweep | truth | size:<n>
    #[arg(long, default_value = "sweep")]
    boundary: String,
    #[arg(long, default_value_t = 1.02)]
    beta: f64,
    #[arg(long, default_value_t = 300)]
    sample_n1: usize,
    #[arg(long, default_value_t = 5000)]
    sample_n2: usize,
    #[arg(long, default_value_t = 2)]
    sample_t: usize,
    #[arg(long, default_value_t = 3)]
    sample_k: usize,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
}

impl MethodArgs {
    fn config(&self) -> Result<PipelineConfig> {
        let alpha = self.alpha.unwrap_or(match self.method.as_str() {
            "ppr" => 0.1,
            "srw" => 0.0,
            _ => 1.0,
        });
        let cfg = PipelineConfig {
            walk: WalkKind::from_method(&self.method, alpha)?,
            direction: self.direction.parse::<Direction>()?,
            dim: self.dim,
            steps: self.steps,
            sampling: SamplingConfig {
                n1_lower: self.sample_n1,
                n2_upper: self.sample_n2,
                t_max_bfs: self.sample_t,
                k_trim: self.sample_k,
                ..SamplingConfig::default()
            },
            boundary: self.boundary.parse::<BoundaryMode>()?,
            sweep: SweepConfig {
                beta: self.beta,
                ..SweepConfig::default()
            },
            rng_seed: self.rng_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| Error::Io {
            path: p.clone(),
            source,
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Detect {
            graph,
            seeds,
            method,
            out,
        } => {
            let cfg = method.config()?;
            let g = Graph::load_edge_list(&graph)?;
            let seeds = g.nodes_by_labels(&seeds)?;
            let found = run_pipeline(&g, &seeds, &cfg, None)?;
            let line = found
                .community
                .iter()
                .map(|v| g.label(v).to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let mut w = output(&out)?;
            writeln!(w, "{line}").map_err(|e| Error::Output(e.to_string()))?;
            eprintln!(
                "{}: {} nodes, conductance {}, sampled {} of {} nodes, {:.1} ms",
                found.record.method,
                found.record.size,
                found
                    .record
                    .conductance
                    .map_or("undefined".to_string(), |c| format!("{c:.6}")),
                found.subgraph.node_count(),
                g.node_count(),
                found.record.time_ms
            );
        }
        Command::Bench {
            graph,
            communities,
            n_communities,
            seeds_per,
            method,
            timeout_secs,
            timing,
            out,
        } => {
            let cfg = BenchConfig {
                pipeline: method.config()?,
                n_communities,
                seeds_per_community: seeds_per,
                timeout: Duration::try_from_secs_f64(timeout_secs)
                    .map_err(|e| Error::InvalidParameter(format!("timeout: {e}")))?,
                record_timing: timing,
            };
            let g = Graph::load_edge_list(&graph)?;
            let truth = load_communities(&communities, &g)?;
            let summary = run_benchmark_on(Arc::new(g), &truth, &cfg, output(&out)?)?;
            eprintln!(
                "{} communities, mean F1 {:.4}, mean size {:.1}, {} failed",
                summary.rows.len(),
                summary.mean_f1,
                summary.mean_size,
                summary.failures
            );
        }
        Command::GenPlanted {
            blocks,
            block_size,
            p_in,
            p_out,
            rng_seed,
            out_graph,
            out_communities,
        } => {
            let spec = PlantedPartitionSpec {
                blocks,
                block_size,
                p_in,
                p_out,
                rng_seed,
            };
            let (g, truth): (Graph, Vec<NodeSet>) = generate_planted_partition(&spec)?;
            g.write_edge_list(&out_graph)?;
            write_communities(&out_communities, &g, &truth)?;
            eprintln!("{} nodes, {} edges", g.node_count(), g.edge_count());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
