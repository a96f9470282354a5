//! Exact LP/ILP toolkit for feedback vertex set and pseudoforest deletion.

pub mod algorithms;
pub mod analysis;
pub mod caps;
pub mod error;
pub mod formulations;
pub mod graph;
pub mod lp;
pub mod scalar;
pub mod separation;

pub use caps::Caps;
pub use error::{Error, GraphError, Result};
pub use graph::{Cost, Cycle, EdgeId, Graph, VertexId};
pub use lp::{LinearProgram, LpSolution, LpStatus, Relation};
pub use scalar::{q, Rational, Scalar};

/// LP over arbitrary-precision rationals.
pub type ExactLp = LinearProgram<Rational>;
