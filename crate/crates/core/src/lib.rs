//! Proof-labeling scheme for planarity.
//!
//! The honest prover embeds the graph, unfolds a DFS tree of the embedding
//! into a path-outerplanar graph on `2n - 1` Euler-tour indices, and hands
//! each node at most five edge certificates. The verifier runs in one round
//! and checks the spanning tree, the Euler-tour structure, and the
//! path-outerplanarity of the unfolded graph copy by copy.

pub mod corpus;
pub mod embedding;
pub mod graph;
pub mod io;
pub mod lowerbound;
pub mod pls;
pub mod pop;
pub mod sim;
pub mod transform;

pub use graph::{Graph, GraphError, NodeId};
