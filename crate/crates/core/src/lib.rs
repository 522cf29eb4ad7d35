//! Bridge-depth of graphs, blocking-set shrinking, minor-model search for
//! necklaces and triangle-paths, and a kernelizer for Independent Set
//! parameterized by a modulator to bounded bridge-depth.

pub mod blocking;
pub mod bridge_depth;
pub mod dense;
pub mod enumerate;
pub mod error;
pub mod generators;
pub mod graph;
pub mod independence;
pub mod kernel;
pub mod matching;
pub mod minors;
pub mod oracle;
pub mod random;
pub mod sweeps;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, Graph, Vertex, VertexSet};
