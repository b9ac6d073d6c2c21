//! Superoperators on `M_n`, channel constructors and the graph embedding.

mod graph;
mod superop;

pub use graph::Graph;
pub use superop::{embed_graph, pi_projector, random_unitary_channel, CptpReport, Superoperator};
