//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Dyck-path enumeration refused: Catalan growth makes larger
    /// half-lengths impractical to stream.
    #[error("enumeration cap exceeded: half-length {requested} > cap {cap}")]
    EnumerationCap { requested: usize, cap: usize },

    /// Conditional Dyck sampling exhausted its rejection budget.
    #[error(
        "rejection budget of {budget} draws exhausted sampling k={k} at s={s}; \
         the target class is too rare, enumerate instead"
    )]
    RejectionBudget { s: usize, k: usize, budget: u64 },

    /// A quadrature did not reach the requested accuracy.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Implicit-shift QL ran out of sweeps.
    #[error("eigensolver did not converge within {sweeps} sweeps (order {order})")]
    EigNonConvergence { sweeps: usize, order: usize },

    /// The Painleve II integration left the Hastings-McLeod branch.
    #[error("Painleve II solver diverged near x = {x:.4}: {msg}")]
    SolverDivergence { x: f64, msg: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A scale hypothesis of a Monte Carlo experiment is violated.
    #[error("hypothesis guard: {0}")]
    Guard(String),

    /// Data required by the operation was not retained.
    #[error("missing data: {0}")]
    MissingData(String),

    /// A failure inside one Monte Carlo replication.
    #[error("replication {index}: {source}")]
    Replication {
        index: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
