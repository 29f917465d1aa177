use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Simple digraph on vertices `0..n`: no loops, at most one edge per ordered
/// pair. A pair joined in both directions is a heavy edge (a 2-cycle).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    out: BitMatrix,
    inc: BitMatrix,
    edges: usize,
}

/// Extremes of total degree `d = d⁺ + d⁻` and of semi-degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DegreeStats {
    pub min_total: usize,
    pub max_total: usize,
    pub min_semi: usize,
    pub max_semi: usize,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            out: BitMatrix::new(n),
            inc: BitMatrix::new(n),
            edges: 0,
        }
    }

    /// Complete digraph: every ordered pair is an edge.
    pub fn complete(n: usize) -> Self {
        Digraph::new(n).complement()
    }

    /// Builds from an edge list, ignoring repeated edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Digraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out.n()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Returns `Ok(false)` when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
        }
        if self.out.get(u, v) {
            return Ok(false);
        }
        self.out.set(u, v, true);
        self.inc.set(v, u, true);
        self.edges += 1;
        Ok(true)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if !self.out.get(u, v) {
            return Ok(false);
        }
        self.out.set(u, v, false);
        self.inc.set(v, u, false);
        self.edges -= 1;
        Ok(true)
    }

    /// Panics on out-of-range indices.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out.get(u, v)
    }

    /// Both `uv` and `vu` present.
    #[inline]
    pub fn is_heavy(&self, u: usize, v: usize) -> bool {
        self.out.get(u, v) && self.out.get(v, u)
    }

    /// Number of edges between `u` and `v`, in `{0, 1, 2}`.
    #[inline]
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.out.get(u, v) as usize + self.out.get(v, u) as usize
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out.iter_row(v)
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inc.iter_row(v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out.row_count(v)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc.row_count(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.out.iter_row(u).map(move |v| (u, v)))
    }

    /// `(‖x,S‖⁺, ‖x,S‖⁻)`: edges from `x` into `S` and from `S` into `x`.
    pub fn split_degree_into(&self, x: usize, set: &[usize]) -> (usize, usize) {
        set.iter().fold((0, 0), |(o, i), &w| {
            (o + self.out.get(x, w) as usize, i + self.out.get(w, x) as usize)
        })
    }

    /// `‖x,S‖`, counting both directions.
    pub fn degree_into(&self, x: usize, set: &[usize]) -> usize {
        let (o, i) = self.split_degree_into(x, set);
        o + i
    }

    /// Number of edges with both ends in `set`.
    pub fn induced_edge_count(&self, set: &[usize]) -> usize {
        set.iter()
            .map(|&u| set.iter().filter(|&&v| self.out.get(u, v)).count())
            .sum()
    }

    pub fn complement(&self) -> Digraph {
        let out = self.out.complement_off_diagonal();
        let inc = self.inc.complement_off_diagonal();
        let n = self.n();
        Digraph {
            out,
            inc,
            edges: n * n.saturating_sub(1) - self.edges,
        }
    }

    pub fn degree_stats(&self) -> DegreeStats {
        if self.n() == 0 {
            return DegreeStats::default();
        }
        let mut stats = DegreeStats {
            min_total: usize::MAX,
            max_total: 0,
            min_semi: usize::MAX,
            max_semi: 0,
        };
        for v in 0..self.n() {
            let (o, i) = (self.out_degree(v), self.in_degree(v));
            stats.min_total = stats.min_total.min(o + i);
            stats.max_total = stats.max_total.max(o + i);
            stats.min_semi = stats.min_semi.min(o.min(i));
            stats.max_semi = stats.max_semi.max(o.max(i));
        }
        stats
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let n = self.n();
        let mut g = Digraph::new(n + other.n());
        for (u, v) in self.edges().chain(other.edges().map(|(u, v)| (u + n, v + n))) {
            g.out.set(u, v, true);
            g.inc.set(v, u, true);
            g.edges += 1;
        }
        g
    }

    /// `D[S]` has no directed cycle of any length, 2-cycles included.
    pub fn is_acyclic(&self, set: &VertexSet) -> Result<bool> {
        set.check_range(self.n())?;
        Ok(self.is_acyclic_slice(set.as_slice()))
    }

    /// Unchecked variant for hot paths; `set` must hold distinct in-range vertices.
    pub fn is_acyclic_slice(&self, set: &[usize]) -> bool {
        if set.len() <= 64 {
            self.acyclic_small(set)
        } else {
            self.topological_order(set).is_some()
        }
    }

    fn acyclic_small(&self, set: &[usize]) -> bool {
        let m = set.len();
        if m < 2 {
            return true;
        }
        let mut out_mask = [0u64; 64];
        let mut in_mask = [0u64; 64];
        for (i, &u) in set.iter().enumerate() {
            let row = self.out.row(u);
            for (j, &v) in set.iter().enumerate() {
                if (row[v / 64] >> (v % 64)) & 1 == 1 {
                    out_mask[i] |= 1 << j;
                    in_mask[j] |= 1 << i;
                }
            }
        }
        // a 2-cycle shows up as a vertex that is both an in- and out-neighbour
        if (0..m).any(|i| out_mask[i] & in_mask[i] != 0) {
            return false;
        }
        let mut remaining: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        loop {
            let mut peeled = 0u64;
            let mut rest = remaining;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if in_mask[i] & remaining == 0 {
                    peeled |= 1 << i;
                }
            }
            if peeled == 0 {
                return remaining == 0;
            }
            remaining &= !peeled;
            if remaining == 0 {
                return true;
            }
        }
    }

    /// Kahn order of `D[S]` taking the smallest available vertex first, or
    /// `None` when `D[S]` has a cycle.
    pub fn topological_order(&self, set: &[usize]) -> Option<Vec<usize>> {
        let mut sorted: Vec<usize> = set.to_vec();
        sorted.sort_unstable();
        let m = sorted.len();
        let pos = |v: usize| sorted.binary_search(&v).ok();
        let mut indeg = vec![0usize; m];
        for &u in &sorted {
            for v in self.out.iter_row(u) {
                if let Some(j) = pos(v) {
                    indeg[j] += 1;
                }
            }
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..m).filter(|&j| indeg[j] == 0).collect();
        let mut order = Vec::with_capacity(m);
        while let Some(j) = ready.pop_first() {
            order.push(sorted[j]);
            for v in self.out.iter_row(sorted[j]) {
                if let Some(t) = pos(v) {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.insert(t);
                    }
                }
            }
        }
        (order.len() == m).then_some(order)
    }
}
