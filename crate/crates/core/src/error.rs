use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the detection pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("unknown node id {0}")]
    UnknownNode(u64),

    #[error("node set is empty")]
    EmptyNodeSet,

    #[error("conductance undefined: set is empty or covers every node")]
    UndefinedConductance,

    #[error("node {0} has no neighbors")]
    IsolatedNode(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("LP infeasible: {}", match .seed { Some(s) => format!("seed {s} cannot reach its lower bound"), None => "no coefficient vector satisfies the seed bounds".to_string() })]
    Infeasible { seed: Option<usize> },

    #[error("LP solver failure: {0}")]
    Solver(String),

    #[error("writing results failed: {0}")]
    Output(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("dense oracle limited to {cap} nodes, got {n}")]
    OracleTooLarge { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{stage} failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
