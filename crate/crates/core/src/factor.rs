//! Transitive tournament factors of dense digraphs, obtained from equitable
//! acyclic colorings of the complement.

use crate::coloring::{equitable_acyclic_coloring_with, EngineOptions};
use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexSet};
use crate::io::FactorRecord;

/// A partition into `s`-sets, each listed in an order `v₁…vₛ` such that
/// `vᵢ → vⱼ` is an edge whenever `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TournamentFactor {
    s: usize,
    tiles: Vec<Vec<usize>>,
}

impl TournamentFactor {
    pub fn s(&self) -> usize {
        self.s
    }

    /// Tiles in certified order, sorted by minimum vertex.
    pub fn tiles(&self) -> &[Vec<usize>] {
        &self.tiles
    }

    pub fn to_record(&self) -> FactorRecord {
        FactorRecord {
            s: self.s,
            tiles: self.tiles.clone(),
        }
    }
}

/// An order of `set` in which every forward pair is an edge of `d`, or
/// `None` if `d[set]` contains no spanning transitive tournament.
///
/// Such an order must put `v` before `u` whenever `u → v` is missing, so it
/// exists exactly when those precedence constraints are acyclic.
pub fn certify_transitive(d: &Digraph, set: &VertexSet, s: usize) -> Result<Option<Vec<usize>>> {
    if set.len() != s {
        return Err(Error::InvalidParameter(format!("set has {} vertices, expected {s}", set.len())));
    }
    set.check_range(d.n())?;
    Ok(transitive_order(d, set.as_slice()))
}

pub(crate) fn transitive_order(d: &Digraph, set: &[usize]) -> Option<Vec<usize>> {
    let m = set.len();
    let mut precedes = Digraph::new(m);
    for i in 0..m {
        for j in 0..m {
            if i != j && !d.has_edge(set[i], set[j]) {
                // j must come before i
                if precedes.has_edge(i, j) {
                    return None;
                }
                precedes.add_edge(j, i).ok()?;
            }
        }
    }
    let local: Vec<usize> = (0..m).collect();
    let order = precedes.topological_order(&local)?;
    Some(order.into_iter().map(|i| set[i]).collect())
}

/// Checks a proposed factor edge by edge.
pub fn is_transitive_factor(d: &Digraph, s: usize, tiles: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; d.n()];
    for t in tiles {
        if t.len() != s {
            return false;
        }
        for &v in t {
            if v >= d.n() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        for i in 0..s {
            if t[i + 1..].iter().any(|&w| !d.has_edge(t[i], w)) {
                return false;
            }
        }
    }
    seen.into_iter().all(|b| b)
}

pub fn transitive_factor(d: &Digraph, s: usize) -> Result<TournamentFactor> {
    transitive_factor_with(d, s, &EngineOptions::default())
}

/// Colors the complement with `n/s` classes and certifies each class.
/// With `opts.strict` the degree hypothesis `δ ≥ 2(1 − 1/s)n − 1` is
/// enforced; otherwise the engine runs anyway and may report no solution.
pub fn transitive_factor_with(d: &Digraph, s: usize, opts: &EngineOptions) -> Result<TournamentFactor> {
    let n = d.n();
    if s == 0 || n == 0 || !n.is_multiple_of(s) {
        return Err(Error::InvalidParameter(format!("n = {n} is not a positive multiple of s = {s}")));
    }
    let k = n / s;
    let min = d.min_degree();
    // δ ≥ 2(1 − 1/s)n − 1  ⇔  δ ≥ 2n − 2k − 1
    if opts.strict && min + 2 * k + 1 < 2 * n {
        return Err(Error::Precondition(format!(
            "minimum total degree {min} below 2(1-1/s)n-1 = {}",
            2 * n - 2 * k - 1
        )));
    }
    let complement = d.complement();
    let (coloring, _) = equitable_acyclic_coloring_with(&complement, k, opts)?;
    let mut tiles = Vec::with_capacity(k);
    for class in coloring.classes() {
        let order = certify_transitive(d, class, s)?.ok_or_else(|| {
            Error::invariant(format!("class {:?} is acyclic in the complement but not transitive", class))
        })?;
        tiles.push(order);
    }
    tiles.sort_by_key(|t| t.iter().copied().min());
    Ok(TournamentFactor { s, tiles })
}
