//! The auxiliary class digraph `H` of a useful coloring.
//!
//! Vertices of `H` are color classes; `U → W` is an edge when some `y ∈ U`
//! can join `W` without closing a cycle (`y` *witnesses* the edge). A vertex
//! that cannot join `W` is *blocked* in `W`. Blocking is rare relative to the
//! `k²` class pairs, so it is stored sparsely and witnesses are derived.

use std::collections::VecDeque;

use crate::coloring::{Coloring, ColoringStatus};
use crate::error::{Error, Result};
use crate::graph::Digraph;

pub(crate) const NONE: usize = usize::MAX;

/// Whether `class + y` contains a directed cycle. `class` must not contain `y`.
pub(crate) fn is_blocked(g: &Digraph, y: usize, class: &[usize], scratch: &mut Vec<usize>) -> bool {
    let (o, i) = g.split_degree_into(y, class);
    if o == 0 || i == 0 {
        return false;
    }
    scratch.clear();
    scratch.extend_from_slice(class);
    scratch.push(y);
    !g.is_acyclic_slice(scratch)
}

/// Lowest-index witness `y ∈ from` for the edge `from → to`.
pub(crate) fn lowest_witness(g: &Digraph, from: &[usize], to: &[usize], scratch: &mut Vec<usize>) -> Option<usize> {
    from.iter().copied().find(|&y| !is_blocked(g, y, to, scratch))
}

#[derive(Clone, Debug)]
pub struct ClassDigraphSnapshot {
    classes: Vec<Vec<usize>>,
    minus: usize,
    plus: usize,
    class_of: Vec<usize>,
    /// For each vertex of the subproblem, the sorted classes it is blocked in.
    blocked_in: Vec<Vec<usize>>,
    /// For each class `U`, the sorted classes `W ≠ U` with no edge `U → W`.
    no_edge: Vec<Vec<usize>>,
    dist_to_minus: Vec<Option<usize>>,
    reach_from_plus: Vec<bool>,
    /// Precomputed terminal flags; `None` means evaluate per query.
    terminal: Option<Vec<bool>>,
}

/// Snapshot of `f`, which must be useful for `d`.
pub fn build_snapshot(d: &Digraph, f: &Coloring) -> Result<ClassDigraphSnapshot> {
    if f.status() != ColoringStatus::Useful {
        return Err(Error::Precondition(format!(
            "snapshot needs a useful coloring, got {}",
            f.status()
        )));
    }
    let classes: Vec<Vec<usize>> = f.classes().iter().map(|c| c.as_slice().to_vec()).collect();
    Ok(ClassDigraphSnapshot::compute_full(
        d,
        &classes,
        f.small_index().expect("useful has V-"),
        f.large_index().expect("useful has V+"),
    ))
}

impl ClassDigraphSnapshot {
    pub(crate) fn compute_full(g: &Digraph, classes: &[Vec<usize>], minus: usize, plus: usize) -> Self {
        let mut snap = Self::compute_lazy(g, classes, minus, plus);
        snap.terminal = Some((0..snap.k()).map(|c| snap.is_terminal(c)).collect());
        snap
    }

    /// Like [`compute_full`](Self::compute_full) but terminality is
    /// evaluated per query, which costs one BFS each.
    pub(crate) fn compute_lazy(g: &Digraph, classes: &[Vec<usize>], minus: usize, plus: usize) -> Self {
        let k = classes.len();
        let mut class_of = vec![NONE; g.n()];
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                class_of[v] = c;
            }
        }

        let mut blocked_in: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        let mut out_cnt = vec![0u32; k];
        let mut in_cnt = vec![0u32; k];
        let mut touched: Vec<usize> = Vec::new();
        let mut scratch = Vec::new();
        for (own, members) in classes.iter().enumerate() {
            for &y in members {
                for v in g.out_neighbors(y) {
                    let c = class_of[v];
                    if c != NONE && c != own {
                        if out_cnt[c] == 0 && in_cnt[c] == 0 {
                            touched.push(c);
                        }
                        out_cnt[c] += 1;
                    }
                }
                for v in g.in_neighbors(y) {
                    let c = class_of[v];
                    if c != NONE && c != own {
                        if out_cnt[c] == 0 && in_cnt[c] == 0 {
                            touched.push(c);
                        }
                        in_cnt[c] += 1;
                    }
                }
                touched.sort_unstable();
                for &c in &touched {
                    if out_cnt[c] > 0 && in_cnt[c] > 0 && is_blocked(g, y, &classes[c], &mut scratch) {
                        blocked_in[y].push(c);
                    }
                    out_cnt[c] = 0;
                    in_cnt[c] = 0;
                }
                touched.clear();
            }
        }

        let mut no_edge = vec![Vec::new(); k];
        let mut hits = vec![0usize; k];
        for (u, members) in classes.iter().enumerate() {
            if members.is_empty() {
                continue;
            }
            for &y in members {
                for &w in &blocked_in[y] {
                    if hits[w] == 0 {
                        touched.push(w);
                    }
                    hits[w] += 1;
                }
            }
            touched.sort_unstable();
            for &w in &touched {
                if hits[w] == members.len() {
                    no_edge[u].push(w);
                }
                hits[w] = 0;
            }
            touched.clear();
        }

        let mut snap = ClassDigraphSnapshot {
            classes: classes.to_vec(),
            minus,
            plus,
            class_of,
            blocked_in,
            no_edge,
            dist_to_minus: Vec::new(),
            reach_from_plus: Vec::new(),
            terminal: None,
        };
        snap.dist_to_minus = snap.distances_to(minus, None);
        snap.reach_from_plus = snap.reachable_from(plus);
        snap
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn minus(&self) -> usize {
        self.minus
    }

    pub fn plus(&self) -> usize {
        self.plus
    }

    /// Class index of `v`, or `None` when `v` is not in this subproblem.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.class_of.get(v).copied().filter(|&c| c != NONE)
    }

    /// `W + y` contains a directed cycle. `false` for `y`'s own class.
    pub fn is_blocked(&self, y: usize, w: usize) -> bool {
        self.blocked_in[y].binary_search(&w).is_ok()
    }

    pub fn blocked_classes(&self, y: usize) -> &[usize] {
        &self.blocked_in[y]
    }

    /// `U → W` is an edge of `H`.
    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        u != w && !self.classes[u].is_empty() && self.no_edge[u].binary_search(&w).is_err()
    }

    /// Every `y ∈ U` with `W + y` acyclic, ascending.
    pub fn witnesses(&self, u: usize, w: usize) -> Vec<usize> {
        if u == w {
            return Vec::new();
        }
        self.classes[u].iter().copied().filter(|&y| !self.is_blocked(y, w)).collect()
    }

    /// BFS distance in `H` (or `H - excluded`) from each class to `target`.
    pub(crate) fn distances_to(&self, target: usize, excluded: Option<usize>) -> Vec<Option<usize>> {
        let k = self.k();
        let mut dist = vec![None; k];
        dist[target] = Some(0);
        let mut unvisited: Vec<usize> = (0..k).filter(|&c| c != target && Some(c) != excluded).collect();
        let mut queue = VecDeque::from([target]);
        while let Some(w) = queue.pop_front() {
            let d = dist[w].unwrap();
            unvisited.retain(|&u| {
                if self.has_edge(u, w) {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                    false
                } else {
                    true
                }
            });
        }
        dist
    }

    fn reachable_from(&self, source: usize) -> Vec<bool> {
        let k = self.k();
        let mut seen = vec![false; k];
        seen[source] = true;
        let mut unvisited: Vec<usize> = (0..k).filter(|&c| c != source).collect();
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            unvisited.retain(|&w| {
                if self.has_edge(u, w) {
                    seen[w] = true;
                    queue.push_back(w);
                    false
                } else {
                    true
                }
            });
        }
        seen
    }

    fn terminal_by_search(&self, w: usize) -> bool {
        if !self.in_a(w) {
            return false;
        }
        if w == self.minus {
            return self.a_count() == 1;
        }
        let dist = self.distances_to(self.minus, Some(w));
        (0..self.k()).filter(|&u| u != w && self.in_a(u)).all(|u| dist[u].is_some())
    }

    /// Total degree of `v` inside the union of this snapshot's classes.
    pub fn degree_within(&self, g: &Digraph, v: usize) -> usize {
        g.out_neighbors(v)
            .chain(g.in_neighbors(v))
            .filter(|&u| self.class_of(u).is_some())
            .count()
    }

    /// Class can reach `V⁻` in `H` (membership in `𝒜`).
    pub fn in_a(&self, c: usize) -> bool {
        self.dist_to_minus[c].is_some()
    }

    pub fn dist_to_minus(&self, c: usize) -> Option<usize> {
        self.dist_to_minus[c]
    }

    /// Class is reachable from `V⁺` (membership in `𝓑′`).
    pub fn in_b_prime(&self, c: usize) -> bool {
        self.reach_from_plus[c]
    }

    /// Membership in `𝒜′`.
    pub fn is_terminal(&self, c: usize) -> bool {
        match &self.terminal {
            Some(t) => t[c],
            None => self.terminal_by_search(c),
        }
    }

    pub fn a_count(&self) -> usize {
        self.dist_to_minus.iter().filter(|d| d.is_some()).count()
    }

    pub fn set_a(&self) -> Vec<usize> {
        (0..self.k()).filter(|&c| self.in_a(c)).collect()
    }

    pub fn set_b(&self) -> Vec<usize> {
        (0..self.k()).filter(|&c| !self.in_a(c)).collect()
    }

    pub fn set_b_prime(&self) -> Vec<usize> {
        (0..self.k()).filter(|&c| self.in_b_prime(c)).collect()
    }

    pub fn set_a_prime(&self) -> Vec<usize> {
        (0..self.k()).filter(|&c| self.is_terminal(c)).collect()
    }

    /// Union of the classes in `set`, ascending.
    pub fn union_of(&self, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().flat_map(|&c| self.classes[c].iter().copied()).collect();
        v.sort_unstable();
        v
    }

    /// `q` such that `x` is `q`-movable: the number of classes `Z ∈ 𝒜`, other
    /// than its own, that `x` witnesses an edge into.
    pub fn movability(&self, x: usize) -> usize {
        let own = self.class_of[x];
        let candidates = self.a_count() - usize::from(self.in_a(own));
        let blocked = self.blocked_in[x].iter().filter(|&&z| self.in_a(z)).count();
        candidates - blocked
    }
}
