use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("expected {expected} costs, got {got}")]
    CostLength { expected: usize, got: usize },
    #[error("vertex {0} has a negative cost")]
    NegativeCost(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{what}: size {got} exceeds cap {limit}")]
    CapExceeded { what: &'static str, limit: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no finite-cost solution exists")]
    NoFiniteSolution,
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
}

/// Crate-wide error for everything above the graph layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{what}: size {got} exceeds cap {limit}")]
    CapExceeded { what: &'static str, limit: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no finite-cost solution exists")]
    NoFiniteSolution,
    #[error("LP is infeasible")]
    Infeasible,
    #[error("LP is unbounded")]
    Unbounded,
    #[error("iteration cap {0} exceeded")]
    IterationLimit(usize),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("counterexample: {0}")]
    Counterexample(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn cap(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        Err(Error::CapExceeded { what, limit, got })
    } else {
        Ok(())
    }
}
