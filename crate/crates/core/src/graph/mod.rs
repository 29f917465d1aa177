//! Graph representations shared by every other module.
//!
//! Both graph types keep a dense bit matrix per direction, so adjacency and
//! multiplicity queries are O(1) and neighbourhood scans cost `n / 64` words.

mod digraph;
mod multigraph;
mod vertex_set;

pub use digraph::{DegreeStats, Digraph};
pub use multigraph::StandardMultigraph;
pub use vertex_set::VertexSet;

/// `underlying_multigraph` as a free function.
pub fn underlying_multigraph(d: &Digraph) -> StandardMultigraph {
    StandardMultigraph::underlying(d)
}
