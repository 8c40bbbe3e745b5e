//! Spanning-tree congestion toolkit.
//!
//! * [`graph`]: double-weighted multigraphs, cuts, spanning trees, congestion.
//! * [`oracle`]: exact congestion by branch and bound.
//! * [`cactus`]: minimum-cut enumeration, cactus, rooted basic-cut tree.
//! * [`hub`]: the hub dynamic program deciding `stc(G) = λ(G)`.
//! * [`gadgets`]: flowers, bottlenecks, double-weight gadgets.
//! * [`reduction`]: (M2P1N)-SAT and the two hardness reductions.
//! * [`io`], [`generate`]: text formats and seeded instance generators.

pub mod cactus;
mod flow;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod hub;
pub mod io;
pub mod oracle;
pub mod reduction;

pub use graph::{
    cut_edges, edge_congestion, edge_congestions, edge_connectivity, tree_congestion, tree_shores,
    weighted_cut_size, CutShore, DoubleWeight, DoubleWeightedGraph, Edge, GraphError, SpanningTree,
};
