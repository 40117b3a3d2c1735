//! Exact all-pairs all-shortest-paths and betweenness centrality for a
//! directed graph with positive integer weights, maintained under fully
//! dynamic vertex updates.
//!
//! Paths are grouped into triples (first arc, last arc, weight, count). Every
//! vertex belongs to one of a logarithmic number of levels by how recently it
//! was updated, and each path lives at the newest level among its vertices,
//! where the engine keeps it while it is locally shortest in the graph of
//! vertices no newer than that level. An update removes the paths through
//! the updated vertex and regrows, level by level, the ones that became
//! shortest or locally shortest.

pub mod audit;
pub mod bc;
pub mod engine;
pub mod gen;
pub mod graph;
pub mod level;
pub mod oracle;
pub mod stream;
pub mod tuple;
pub mod weight;

use thiserror::Error;

pub use bc::{BcScalar, SpDag};
pub use engine::{DynamicApasp, Metrics, UpdateReport};
pub use graph::{Graph, GraphError, UpdateEvent, VertexId};
pub use tuple::{CenterArray, Count, Triple, Tuple};
pub use weight::{EdgeWeight, Weight};

/// Engine over 64-bit integer weights.
pub type Apasp = DynamicApasp<u64>;
/// Graph over 64-bit integer weights.
pub type WeightedGraph = Graph<u64>;
/// Exact betweenness scores.
pub type ExactScore = num_rational::BigRational;
/// Floating-point betweenness scores.
pub type DecimalScore = f64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Fault {
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("path count overflow")]
    CountOverflow,
    #[error("path length overflow")]
    WeightOverflow,
    #[error("epoch exhausted; reset required")]
    EpochExhausted,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
