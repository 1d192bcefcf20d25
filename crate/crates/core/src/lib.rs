//! Exact solvers for the strong transitivity number of a graph.
//!
//! A vertex set A strongly dominates a vertex set B when every vertex of B
//! has a neighbour in A of degree at least its own.  A strong transitive
//! partition is an ordered partition {V_1, ..., V_k} in which V_i strongly
//! dominates V_j whenever i < j, and the strong transitivity number is the
//! largest k admitting one.  The crate ships a linear-time solver for trees,
//! a clique-number solver for split graphs, a brute-force reference oracle
//! with a SAT encoding for everything small, a partition verifier, plain
//! text graph/partition/CNF formats, and a chordal hardness construction
//! that maps proper 3-colourability into the partition problem.

pub mod graph;
pub mod io;
pub mod oracle;
pub mod reduction;
pub mod split;
pub mod tree;
pub mod verifier;

pub use graph::{BfsOrdering, Graph, GraphError};
pub use verifier::{PartitionError, Verdict, VertexPartition, Violation};
