use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("manifest row {row}: {message}")]
    Manifest { row: usize, message: String },

    #[error("duplicate graph id `{0}`")]
    DuplicateId(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error(
        "infeasible partition: need 2*max_j|F_j| <= tau <= n_min/K, \
         got max_j|F_j| = {max_nodes}, tau = {tau}, K = {k}, n_min = {n_min}"
    )]
    Infeasible {
        max_nodes: usize,
        tau: usize,
        k: usize,
        n_min: usize,
    },

    #[error("infeasible partition: K*tau = {k}*{tau} exceeds n = {n} (need tau <= n/K)")]
    PartitionInfeasible { k: usize, tau: usize, n: usize },

    #[error(
        "configuration {config} needs {needed} vertices but graph{} has only {n}",
        graph.as_ref().map(|g| format!(" `{g}`")).unwrap_or_default()
    )]
    ConfigTooLarge {
        config: String,
        needed: usize,
        n: usize,
        graph: Option<String>,
    },

    #[error("brute-force enumeration refused: graph has {n} vertices (limit {limit})")]
    OracleRefused { n: usize, limit: usize },

    #[error("nothing to analyze: every density row has zero variance")]
    NothingToAnalyze,

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("eigen decomposition failed its {what} check (error {value:e})")]
    EigenCheck { what: &'static str, value: f64 },

    #[error("invalid kernel: {0}")]
    Kernel(String),

    #[error("edgeless configuration has no kernel moment")]
    EdgelessMoment,

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
