//! Tilings of standard multigraphs by fit, near matching and acceptable
//! cliques: the improvement step, almost-perfect tilings by local moves,
//! sponges, absorbing families and the full absorbing driver.

mod absorb;
mod almost;
mod clique;
mod driver;
mod improve;
mod sponge;

pub use absorb::{build_absorbing_family, AbsorbingFamily, TilerParams};
pub use almost::{almost_tiling, almost_tiling_on, leftover_bound, AlmostOptions, AlmostStats};
pub use clique::{clique_status, CliqueStatus};
pub use driver::{full_tiling, TilingStats};
pub use improve::improve;
pub use sponge::{is_sponge, perfect_acceptable_tiling, sponge_tuples};

use crate::error::{Error, Result};
use crate::graph::{StandardMultigraph, VertexSet};
use crate::io::TilingRecord;

/// Disjoint `s`-cliques plus the vertices they leave uncovered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTiling {
    s: usize,
    tiles: Vec<VertexSet>,
    leftover: VertexSet,
}

impl CliqueTiling {
    pub fn new(s: usize, tiles: Vec<VertexSet>, leftover: VertexSet) -> Self {
        CliqueTiling { s, tiles, leftover }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn tiles(&self) -> &[VertexSet] {
        &self.tiles
    }

    pub fn leftover(&self) -> &VertexSet {
        &self.leftover
    }

    pub fn is_perfect(&self) -> bool {
        self.leftover.is_empty()
    }

    /// Every tile is an acceptable `s`-clique, and tiles and leftover
    /// partition the vertices of `m`.
    pub fn certify(&self, m: &StandardMultigraph) -> Result<()> {
        let mut seen = vec![false; m.n()];
        for part in self.tiles.iter().chain(std::iter::once(&self.leftover)) {
            part.check_range(m.n())?;
            for v in part.iter() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::invariant(format!("vertex {v} is covered twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&b| !b) {
            return Err(Error::invariant(format!("vertex {v} is not covered")));
        }
        for t in &self.tiles {
            let st = clique_status(m, t, self.s);
            if t.len() != self.s || !st.acceptable {
                return Err(Error::invariant(format!("tile {t:?} is not an acceptable {}-clique", self.s)));
            }
        }
        Ok(())
    }

    /// Tiles with their tags; fails if some tile is not acceptable.
    pub fn to_record(&self, m: &StandardMultigraph) -> Result<TilingRecord> {
        let tiles = self
            .tiles
            .iter()
            .map(|t| {
                clique_status(m, t, self.s)
                    .tag()
                    .map(|tag| (t.as_slice().to_vec(), tag))
                    .ok_or_else(|| Error::invariant(format!("tile {t:?} is not acceptable")))
            })
            .collect::<Result<_>>()?;
        Ok(TilingRecord { s: self.s, tiles })
    }
}
