use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("negative or non-numeric cost in {table} at {index}: {value}")]
    NegativeCost {
        table: &'static str,
        index: String,
        value: f64,
    },

    #[error("{table}[{index}] is infinite; input and output costs must be finite")]
    InfiniteIoCost { table: &'static str, index: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error(
        "the dynamics pattern is not irreducible; the polynomial solver does not apply \
         (use the exhaustive oracle instead)"
    )]
    NotIrreducible,

    #[error("infeasible: there is no feasible information pattern ({0})")]
    Infeasible(String),

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("solver produced a selection that fails the fixed-mode check: {0}")]
    Unverified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
