use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexSet};

/// Loopless multigraph whose pairs have multiplicity 0, 1 (light) or 2 (heavy).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StandardMultigraph {
    /// multiplicity >= 1
    any: BitMatrix,
    /// multiplicity == 2
    heavy: BitMatrix,
}

impl StandardMultigraph {
    pub fn new(n: usize) -> Self {
        StandardMultigraph {
            any: BitMatrix::new(n),
            heavy: BitMatrix::new(n),
        }
    }

    /// `K²ₙ`: every pair heavy.
    pub fn complete(n: usize) -> Self {
        let full = BitMatrix::new(n).complement_off_diagonal();
        StandardMultigraph {
            any: full.clone(),
            heavy: full,
        }
    }

    /// The multigraph underlying `d`: orientation erased, 2-cycles become heavy.
    pub fn underlying(d: &Digraph) -> Self {
        let mut m = StandardMultigraph::new(d.n());
        for u in 0..d.n() {
            for v in u + 1..d.n() {
                let mult = d.multiplicity(u, v);
                if mult > 0 {
                    m.set_unchecked(u, v, mult as u8);
                }
            }
        }
        m
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, u8)>) -> Result<Self> {
        let mut m = StandardMultigraph::new(n);
        for (u, v, c) in edges {
            m.set_multiplicity(u, v, c)?;
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.any.n()
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

    pub fn set_multiplicity(&mut self, u: usize, v: usize, mult: u8) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
        }
        if mult > 2 {
            return Err(Error::InvalidParameter(format!(
                "multiplicity {mult} on pair {{{u},{v}}} exceeds 2"
            )));
        }
        self.set_unchecked(u, v, mult);
        Ok(())
    }

    fn set_unchecked(&mut self, u: usize, v: usize, mult: u8) {
        for (a, b) in [(u, v), (v, u)] {
            self.any.set(a, b, mult >= 1);
            self.heavy.set(a, b, mult == 2);
        }
    }

    /// `μ(uv)`; zero on the diagonal. Panics on out-of-range indices.
    #[inline]
    pub fn multiplicity(&self, u: usize, v: usize) -> u8 {
        self.any.get(u, v) as u8 + self.heavy.get(u, v) as u8
    }

    #[inline]
    pub fn is_light(&self, u: usize, v: usize) -> bool {
        self.any.get(u, v) && !self.heavy.get(u, v)
    }

    #[inline]
    pub fn is_heavy(&self, u: usize, v: usize) -> bool {
        self.heavy.get(u, v)
    }

    /// Sum of multiplicities at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.any.row_count(v) + self.heavy.row_count(v)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn heavy_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.heavy.iter_row(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.any.iter_row(v)
    }

    /// `‖x,S‖`: multiplicity sum from `x` into `S`.
    pub fn degree_into(&self, x: usize, set: &[usize]) -> usize {
        set.iter().map(|&w| self.multiplicity(x, w) as usize).sum()
    }

    /// `‖X,Y‖`, summing multiplicities over `X × Y`.
    pub fn between(&self, xs: &[usize], ys: &[usize]) -> usize {
        xs.iter().map(|&x| self.degree_into(x, ys)).sum()
    }

    /// `‖x,S‖ˡ`: light edges from `x` into `S`.
    pub fn light_degree_into(&self, x: usize, set: &[usize]) -> usize {
        set.iter().filter(|&&w| self.is_light(x, w)).count()
    }

    /// `‖S‖ˡ`: light edges with both ends in `S`.
    pub fn light_edges_within(&self, set: &[usize]) -> usize {
        let mut count = 0;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                count += self.is_light(u, v) as usize;
            }
        }
        count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.any
                .iter_row(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v, self.multiplicity(u, v)))
        })
    }

    /// Number of pairs with positive multiplicity.
    pub fn pair_count(&self) -> usize {
        (0..self.n()).map(|v| self.any.row_count(v)).sum::<usize>() / 2
    }

    /// `μ̄ = 2 − μ` on every pair.
    pub fn complement(&self) -> StandardMultigraph {
        StandardMultigraph {
            any: self.heavy.complement_off_diagonal(),
            heavy: self.any.complement_off_diagonal(),
        }
    }

    /// No heavy pair inside `S` and the light pairs inside `S` form a forest.
    pub fn is_acyclic(&self, set: &VertexSet) -> Result<bool> {
        set.check_range(self.n())?;
        Ok(self.is_acyclic_slice(set.as_slice()))
    }

    pub fn is_acyclic_slice(&self, set: &[usize]) -> bool {
        for (i, &u) in set.iter().enumerate() {
            if set[i + 1..].iter().any(|&v| self.is_heavy(u, v)) {
                return false;
            }
        }
        self.light_forest(set)
    }

    /// Light pairs inside `set` form a forest (no cycle in `L(M)[S]`).
    pub fn light_forest(&self, set: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..set.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                if self.is_light(set[i], set[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a == b {
                        return false;
                    }
                    parent[a] = b;
                }
            }
        }
        true
    }

    /// `G(M)[S]` complete.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.any.get(u, v)))
    }

    pub fn induced(&self, set: &[usize]) -> StandardMultigraph {
        let mut m = StandardMultigraph::new(set.len());
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let c = self.multiplicity(set[i], set[j]);
                if c > 0 {
                    m.set_unchecked(i, j, c);
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn underlying_examples() {
        let one = Digraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(StandardMultigraph::underlying(&one).multiplicity(0, 1), 1);
        let two = Digraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(StandardMultigraph::underlying(&two).multiplicity(1, 0), 2);
        let c3 = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let m = StandardMultigraph::underlying(&c3);
        assert_eq!(m.edges().collect::<Vec<_>>(), vec![(0, 1, 1), (0, 2, 1), (1, 2, 1)]);
    }

    #[test]
    fn acyclic_multi_examples() {
        let heavy = StandardMultigraph::from_edges(2, [(0, 1, 2)]).unwrap();
        assert!(!heavy.is_acyclic(&VertexSet::range(2)).unwrap());
        let path = StandardMultigraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        assert!(path.is_acyclic(&VertexSet::range(4)).unwrap());
        let tri = StandardMultigraph::from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert!(!tri.is_acyclic(&VertexSet::range(3)).unwrap());
        assert!(tri.is_acyclic(&VertexSet::from_unsorted(vec![0, 2])).unwrap());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(StandardMultigraph::complete(4).complement().pair_count(), 0);
        let m = StandardMultigraph::from_edges(3, [(0, 1, 1)]).unwrap();
        let c = m.complement();
        assert_eq!(c.multiplicity(0, 1), 1);
        assert_eq!(c.multiplicity(0, 2), 2);
        assert_eq!(c.complement(), m);
    }

    #[test]
    fn complement_of_acyclic_is_full_clique() {
        let forest = StandardMultigraph::from_edges(4, [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(forest.is_acyclic_slice(&[0, 1, 2, 3]));
        let full = forest.complement();
        assert!(full.is_clique(&[0, 1, 2, 3]));
    }

    #[test]
    fn rejects_bad_multiplicity() {
        let mut m = StandardMultigraph::new(3);
        assert!(m.set_multiplicity(0, 1, 3).is_err());
        assert!(m.set_multiplicity(1, 1, 1).is_err());
        assert!(m.set_multiplicity(0, 3, 1).is_err());
    }
}
