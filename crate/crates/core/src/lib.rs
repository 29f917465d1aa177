//! Equitable acyclic colorings of dense digraphs, transitive tournament
//! factors, and acceptable clique tilings of standard multigraphs, together
//! with exhaustive oracles and extremal instance generators for small-scale
//! verification.

mod bitset;
pub mod coloring;
pub mod error;
pub mod extremal;
pub mod factor;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod tiler;

pub use coloring::{equitable_acyclic_coloring, Coloring, ColoringStatus};
pub use error::{Error, Result};
pub use graph::{Digraph, StandardMultigraph, VertexSet};
