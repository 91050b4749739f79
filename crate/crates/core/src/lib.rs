//! Modularity of partially observed graphs.
//!
//! Exact and heuristic modularity maximization, the fattening (greedy
//! amalgamation) algorithm, edge/vertex observation models and a harness for
//! the Monte-Carlo experiments built on them.

pub mod error;
pub mod fattening;
pub mod graph;
pub mod harness;
pub mod io;
pub mod modularity;
pub mod optimize;
pub mod partition;
pub mod sampling;
pub mod scalar;
pub mod transform;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphBuilder};
pub use modularity::{modularity, modularity_exact, modularity_f64, ModularityBreakdown};
pub use partition::Partition;
pub use scalar::{ratio, ArithmeticMode, Exact, Scalar, Weight};
