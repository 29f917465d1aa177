use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::clique::is_fit;
use super::improve::improve;
use super::CliqueTiling;
use crate::error::{Error, Result};
use crate::graph::{StandardMultigraph, VertexSet};

/// `s(s−1)(2s−1)/3`, the most vertices a move-closed collection can leave.
pub fn leftover_bound(s: usize) -> usize {
    s * s.saturating_sub(1) * (2 * s).saturating_sub(1) / 3
}

/// `δ(M) ≥ 2(1 − 1/s)n − 1` on the vertices of `within`.
pub(crate) fn meets_almost_degree(m: &StandardMultigraph, within: &[usize], s: usize) -> bool {
    let n = within.len();
    let min = within.iter().map(|&v| m.degree_into(v, within)).min().unwrap_or(0);
    s * min + s >= 2 * (s - 1) * n
}

#[derive(Clone, Debug)]
pub struct AlmostOptions {
    /// Reject inputs below the degree threshold.
    pub strict: bool,
    /// Order in which vertices enter as singletons; `0` keeps index order.
    pub seed: u64,
}

impl Default for AlmostOptions {
    fn default() -> Self {
        AlmostOptions { strict: true, seed: 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlmostStats {
    pub growth_moves: usize,
    pub improvement_moves: usize,
}

pub fn almost_tiling(m: &StandardMultigraph, s: usize) -> Result<CliqueTiling> {
    let all: Vec<usize> = (0..m.n()).collect();
    almost_tiling_on(m, &all, s, &AlmostOptions::default()).map(|(t, _)| t)
}

/// Tiles `M[within]` with disjoint fit `s`-cliques by closing a collection
/// of fit cliques under two moves, each of which raises `(p_s, …, p_1)`
/// lexicographically (`p_i` = number of `i`-cliques):
///
/// - growth: `x ∈ X` joins `X′` when `|X| ≤ |X′| < s` and `X′ + x` is fit;
/// - improvement: two `t`-cliques and an `s`-clique meeting the degree
///   bounds of [`improve`] are replaced by a `(t+1)`-clique and an `s`-clique.
///
/// Vertices released by a move re-enter as singletons. When the degree
/// threshold holds, the closed collection leaves at most
/// [`leftover_bound`] vertices uncovered.
pub fn almost_tiling_on(
    m: &StandardMultigraph,
    within: &[usize],
    s: usize,
    opts: &AlmostOptions,
) -> Result<(CliqueTiling, AlmostStats)> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be positive".into()));
    }
    let mut vertices = within.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() != within.len() {
        return Err(Error::InvalidParameter("repeated vertex in the vertex set".into()));
    }
    if let Some(&v) = vertices.last().filter(|&&v| v >= m.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: m.n() });
    }
    let degree_ok = meets_almost_degree(m, &vertices, s);
    if opts.strict && !degree_ok {
        return Err(Error::Precondition(format!(
            "minimum degree below 2(1-1/s)n-1 for n = {}, s = {s}",
            vertices.len()
        )));
    }
    if opts.seed != 0 {
        vertices.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.seed));
    }

    let mut state = Collection {
        m,
        s,
        cliques: vertices.iter().map(|&v| vec![v]).collect(),
    };
    let mut stats = AlmostStats::default();
    loop {
        if state.grow() {
            stats.growth_moves += 1;
        } else if state.improve()? {
            stats.improvement_moves += 1;
        } else {
            break;
        }
    }

    let (mut tiles, rest): (Vec<Vec<usize>>, Vec<Vec<usize>>) = state.cliques.into_iter().partition(|c| c.len() == s);
    let leftover = VertexSet::from_unsorted(rest.concat());
    if degree_ok && leftover.len() > leftover_bound(s) {
        return Err(Error::invariant(format!(
            "closed collection leaves {} vertices, above the bound {}",
            leftover.len(),
            leftover_bound(s)
        )));
    }
    tiles.iter_mut().for_each(|t| t.sort_unstable());
    tiles.sort_unstable();
    let tiles = tiles.into_iter().map(VertexSet::from_unsorted).collect();
    Ok((CliqueTiling::new(s, tiles, leftover), stats))
}

struct Collection<'a> {
    m: &'a StandardMultigraph,
    s: usize,
    cliques: Vec<Vec<usize>>,
}

impl Collection<'_> {
    fn grow(&mut self) -> bool {
        let s = self.s;
        let mut open: Vec<usize> = (0..self.cliques.len()).filter(|&i| self.cliques[i].len() < s).collect();
        open.sort_by_key(|&i| std::cmp::Reverse(self.cliques[i].len()));
        let mut candidate = Vec::with_capacity(s);
        for &target in &open {
            let size = self.cliques[target].len();
            for &source in open.iter().rev() {
                if source == target {
                    continue;
                }
                if self.cliques[source].len() > size {
                    break;
                }
                for (pos, &x) in self.cliques[source].iter().enumerate() {
                    candidate.clear();
                    candidate.extend_from_slice(&self.cliques[target]);
                    candidate.push(x);
                    if is_fit(self.m, &candidate, s) {
                        self.cliques[target].push(x);
                        let mut rest = self.cliques[source].clone();
                        rest.remove(pos);
                        self.replace(&[source], vec![], rest);
                        return true;
                    }
                }
            }
        }
        false
    }

    fn improve(&mut self) -> Result<bool> {
        let s = self.s;
        let full: Vec<usize> = (0..self.cliques.len()).filter(|&i| self.cliques[i].len() == s).collect();
        for t in (1..s).rev() {
            let small: Vec<usize> = (0..self.cliques.len()).filter(|&i| self.cliques[i].len() == t).collect();
            if small.len() < 2 {
                continue;
            }
            for &y in &full {
                let mut ranked: Vec<(usize, usize)> = small
                    .iter()
                    .map(|&i| (self.m.between(&self.cliques[i], &self.cliques[y]), i))
                    .collect();
                ranked.sort_by_key(|&(w, i)| (std::cmp::Reverse(w), i));
                let (w1, i1) = ranked[0];
                let (w2, i2) = ranked[1];
                if w1 < 2 * (s - 1) * t + 1 || w2 < 2 * (s - 1) * t {
                    continue;
                }
                let set = |i: usize| VertexSet::from_unsorted(self.cliques[i].clone());
                let (grown, replaced) = improve(self.m, &set(i1), &set(i2), &set(y), s)?;
                let mut released: Vec<usize> = [i1, i2, y].iter().flat_map(|&i| self.cliques[i].clone()).collect();
                released.retain(|v| !grown.contains(*v) && !replaced.contains(*v));
                self.replace(&[i1, i2, y], vec![grown.into_vec(), replaced.into_vec()], released);
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Removes the cliques at `drop`, adds `add`, and adds `released` as
    /// singletons (or as one clique if it is still fit).
    fn replace(&mut self, drop: &[usize], add: Vec<Vec<usize>>, released: Vec<usize>) {
        let mut drop = drop.to_vec();
        drop.sort_unstable_by(|a, b| b.cmp(a));
        for i in drop {
            self.cliques.swap_remove(i);
        }
        self.cliques.extend(add);
        if released.is_empty() {
            return;
        }
        if is_fit(self.m, &released, self.s) {
            self.cliques.push(released);
        } else {
            self.cliques.extend(released.into_iter().map(|v| vec![v]));
        }
    }
}
