//! Equitable acyclic colorings of digraphs.
//!
//! The engine builds the coloring by edge induction: vertices are activated
//! one at a time (largest total degree first) and whenever the new edges close
//! a cycle inside a color class, the offending vertex is moved to a class that
//! it has no in-edges from (or no out-edges to). That leaves a *useful*
//! coloring (one class of size `s-1`, one of size `s+1`) which [`repair`]
//! turns back into a *good* one by switching witnesses along paths of the
//! auxiliary class digraph, recursing on smaller subproblems when no such
//! path exists.

mod classify;
mod engine;
mod snapshot;

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexSet};

pub use classify::{classify_edges, diagnose, EdgeClassification, EdgeCounts, RepairDiagnostics};
pub use engine::{
    equitable_acyclic_coloring, equitable_acyclic_coloring_with, insert_vertex_edges,
    pad_to_divisible, repair, repair_with, switch_witness_path, EngineOptions, EngineStats,
};
pub use snapshot::{build_snapshot, ClassDigraphSnapshot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColoringStatus {
    /// Every class acyclic, sizes differ by at most one.
    Good,
    /// Every class acyclic; one class of size `s-1`, one of size `s+1`, the rest `s`.
    Useful,
    Invalid,
}

impl ColoringStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ColoringStatus::Good => "good",
            ColoringStatus::Useful => "useful",
            ColoringStatus::Invalid => "invalid",
        }
    }
}

impl fmt::Display for ColoringStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ColoringStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "good" => Ok(ColoringStatus::Good),
            "useful" => Ok(ColoringStatus::Useful),
            "invalid" => Ok(ColoringStatus::Invalid),
            other => Err(Error::InvalidParameter(format!("unknown coloring status `{other}`"))),
        }
    }
}

/// An ordered partition of the vertex set into color classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    classes: Vec<VertexSet>,
    status: ColoringStatus,
    small: Option<usize>,
    large: Option<usize>,
}

impl Coloring {
    /// Computes the status of `classes` as a coloring of `d`.
    pub fn classify(d: &Digraph, classes: Vec<VertexSet>) -> Coloring {
        let mut c = Coloring {
            classes,
            status: ColoringStatus::Invalid,
            small: None,
            large: None,
        };
        c.refresh(d);
        c
    }

    /// A coloring with a status taken on trust, e.g. parsed from a file.
    /// Use [`Coloring::classify`] to certify.
    pub fn from_parts(classes: Vec<VertexSet>, status: ColoringStatus) -> Coloring {
        let mut c = Coloring {
            classes,
            status,
            small: None,
            large: None,
        };
        if status == ColoringStatus::Useful {
            let (small, large) = c.useful_indices();
            c.small = small;
            c.large = large;
        }
        c
    }

    fn refresh(&mut self, d: &Digraph) {
        self.small = None;
        self.large = None;
        self.status = ColoringStatus::Invalid;
        if !self.is_partition(d.n()) || !self.classes.iter().all(|c| d.is_acyclic_slice(c.as_slice())) {
            return;
        }
        let min = self.classes.iter().map(VertexSet::len).min().unwrap_or(0);
        let max = self.classes.iter().map(VertexSet::len).max().unwrap_or(0);
        if max - min <= 1 {
            self.status = ColoringStatus::Good;
            return;
        }
        if let (Some(small), Some(large)) = self.useful_indices() {
            self.status = ColoringStatus::Useful;
            self.small = Some(small);
            self.large = Some(large);
        }
    }

    fn useful_indices(&self) -> (Option<usize>, Option<usize>) {
        let k = self.classes.len();
        let n: usize = self.classes.iter().map(VertexSet::len).sum();
        if k < 2 || !n.is_multiple_of(k) {
            return (None, None);
        }
        let s = n / k;
        if s == 0 {
            return (None, None);
        }
        let mut small = None;
        let mut large = None;
        for (i, c) in self.classes.iter().enumerate() {
            match c.len() {
                l if l == s => {}
                l if l + 1 == s && small.is_none() => small = Some(i),
                l if l == s + 1 && large.is_none() => large = Some(i),
                _ => return (None, None),
            }
        }
        match (small, large) {
            (Some(a), Some(b)) => (Some(a), Some(b)),
            _ => (None, None),
        }
    }

    fn is_partition(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        let mut count = 0;
        for c in &self.classes {
            for v in c.iter() {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
                count += 1;
            }
        }
        count == n
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<VertexSet> {
        self.classes
    }

    pub fn status(&self) -> ColoringStatus {
        self.status
    }

    pub fn is_good(&self) -> bool {
        self.status == ColoringStatus::Good
    }

    /// Index of `V⁻` when useful.
    pub fn small_index(&self) -> Option<usize> {
        self.small
    }

    /// Index of `V⁺` when useful.
    pub fn large_index(&self) -> Option<usize> {
        self.large
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(v: &[&[usize]]) -> Vec<VertexSet> {
        v.iter().map(|c| VertexSet::from_unsorted(c.to_vec())).collect()
    }

    #[test]
    fn status_detection() {
        let c3 = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(Coloring::classify(&c3, sets(&[&[0, 1], &[2]])).is_good());
        assert_eq!(
            Coloring::classify(&c3, sets(&[&[0, 1, 2], &[]])).status(),
            ColoringStatus::Invalid
        );
        // missing vertex
        assert_eq!(
            Coloring::classify(&c3, sets(&[&[0, 1], &[]])).status(),
            ColoringStatus::Invalid
        );
        let e = Digraph::new(6);
        let u = Coloring::classify(&e, sets(&[&[0], &[1, 2], &[3, 4, 5]]));
        assert_eq!(u.status(), ColoringStatus::Useful);
        assert_eq!((u.small_index(), u.large_index()), (Some(0), Some(2)));
        assert_eq!(
            Coloring::classify(&e, sets(&[&[], &[1, 2, 0], &[3, 4, 5]])).status(),
            ColoringStatus::Invalid
        );
    }
}
