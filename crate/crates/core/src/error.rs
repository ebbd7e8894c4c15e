use thiserror::Error;

use crate::lp::LpError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("clustering does not match instance: {0}")]
    DimensionMismatch(String),

    #[error("grouping efficacy is undefined for an instance without edges")]
    NoEdges,

    #[error("size minima ({min_cols} cols, {min_rows} rows) cannot be met by a {u_count}x{v_count} instance")]
    InfeasibleMinima {
        min_cols: usize,
        min_rows: usize,
        u_count: usize,
        v_count: usize,
    },

    #[error("instance has {vertices} vertices; brute force is limited to {limit}")]
    SizeGuard { vertices: usize, limit: usize },

    #[error("no clustering satisfies the size minima")]
    NoFeasibleClustering,

    #[error("admissible (deletions, additions) set is empty")]
    EmptyFSet,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("solution document: {0}")]
    Schema(String),

    #[error(transparent)]
    Lp(#[from] LpError),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
