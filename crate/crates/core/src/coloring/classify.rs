//! Read-only diagnostics over the crossing edges between `A` and `B`.
//!
//! Nothing here is used by the engine; these are the quantities the
//! counting argument behind the repair step talks about, exposed so tests
//! can check them on concrete colorings.

use super::snapshot::ClassDigraphSnapshot;
use crate::coloring::{build_snapshot, Coloring};
use crate::error::Result;
use crate::graph::Digraph;

/// A directed edge between `A` and `B`, classified relative to the class
/// `W ∈ 𝒜` containing its `A` end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeClassification {
    pub tail: usize,
    pub head: usize,
    pub e_a: usize,
    pub e_b: usize,
    /// Class of `e_a`.
    pub class: usize,
    /// The edge points from `e_b` into `W` (it lies in `E⁻(W, e_b)`).
    pub into_a: bool,
    /// `G[W + e_b]` has a directed cycle through the edge.
    pub vital: bool,
    /// Vital and the only vital edge in its direction between `W` and `e_b`.
    pub lonely: bool,
    /// The only edge in its direction between `W` and `e_b`.
    pub solo: bool,
}

/// Counts of vital (`ν`), lonely (`λ`) and solo (`σ`) edges, split by
/// direction relative to the `A` side.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeCounts {
    pub edges: usize,
    pub vital_in: usize,
    pub vital_out: usize,
    pub lonely_in: usize,
    pub lonely_out: usize,
    pub solo_in: usize,
    pub solo_out: usize,
}

impl EdgeCounts {
    pub fn tally<'a>(edges: impl IntoIterator<Item = &'a EdgeClassification>) -> Self {
        let mut c = EdgeCounts::default();
        for e in edges {
            c.edges += 1;
            let (vital, lonely, solo) = if e.into_a {
                (&mut c.vital_in, &mut c.lonely_in, &mut c.solo_in)
            } else {
                (&mut c.vital_out, &mut c.lonely_out, &mut c.solo_out)
            };
            *vital += e.vital as usize;
            *lonely += e.lonely as usize;
            *solo += e.solo as usize;
        }
        c
    }

    pub fn vital(&self) -> usize {
        self.vital_in + self.vital_out
    }

    pub fn lonely(&self) -> usize {
        self.lonely_in + self.lonely_out
    }

    pub fn solo(&self) -> usize {
        self.solo_in + self.solo_out
    }
}

/// `to` reachable from `from` inside `d[set]`.
fn reaches(d: &Digraph, set: &[usize], from: usize, to: usize) -> bool {
    let mut seen = vec![false; set.len()];
    let pos = |v: usize| set.iter().position(|&u| u == v);
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for w in d.out_neighbors(v) {
            if let Some(i) = pos(w) {
                if !seen[i] {
                    seen[i] = true;
                    stack.push(w);
                }
            }
        }
    }
    false
}

/// Every crossing edge between `A` and `B` of the snapshot, in
/// `(class, e_b, tail, head)` order.
pub fn classify_edges(d: &Digraph, snap: &ClassDigraphSnapshot) -> Vec<EdgeClassification> {
    let b_vertices = snap.union_of(&snap.set_b());
    let mut out = Vec::new();
    for w in snap.set_a() {
        let class = &snap.classes()[w];
        for &y in &b_vertices {
            let mut with_y = class.clone();
            with_y.push(y);
            let mut group = Vec::new();
            for &x in class {
                if d.has_edge(y, x) {
                    group.push((y, x, x, true, reaches(d, &with_y, x, y)));
                }
                if d.has_edge(x, y) {
                    group.push((x, y, x, false, reaches(d, &with_y, y, x)));
                }
            }
            for dir in [true, false] {
                let total = group.iter().filter(|g| g.3 == dir).count();
                let vital = group.iter().filter(|g| g.3 == dir && g.4).count();
                for &(tail, head, x, into_a, is_vital) in group.iter().filter(|g| g.3 == dir) {
                    out.push(EdgeClassification {
                        tail,
                        head,
                        e_a: x,
                        e_b: y,
                        class: w,
                        into_a,
                        vital: is_vital,
                        lonely: is_vital && vital == 1,
                        solo: total == 1,
                    });
                }
            }
        }
    }
    out.sort_by_key(|e| (e.class, e.e_b, e.tail, e.head));
    out
}

/// Which of the structural facts about a useful coloring hold. Facts that
/// only make sense in some configurations are `None` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairDiagnostics {
    pub a: usize,
    pub a_prime: usize,
    pub b: usize,
    pub b_prime: usize,
    pub plus_in_a: bool,
    pub minus_terminal: bool,
    /// Every vertex of `A′ ∪ B` has degree at most `2k − 1`.
    pub degree_condition: bool,
    /// Every blocked `y` has at least two edges to the blocking class.
    pub blocked_degree: bool,
    /// `ν(W,y) ≥ 2` for all `W ∈ 𝒜`, `y ∈ B`.
    pub vital_pairs: bool,
    /// `ν(W,y) + λ(W,y) ≥ 4`.
    pub vital_lonely_pairs: bool,
    /// `‖W,y‖ + σ(W,y) ≥ 4`.
    pub solo_pairs: bool,
    /// `|A| = as−1`, `|A′| = a′s`, `|B| = bs+1`, `|B′| = b′s+1`.
    pub cardinalities: Option<bool>,
    /// `‖x,B‖ ≤ 2(b+q)+1−‖x,W‖` for `q`-movable `x ∈ W ∈ 𝒜′`.
    pub movable_bound: Option<bool>,
    /// `a′ > b`.
    pub terminal_majority: Option<bool>,
}

pub fn diagnose(d: &Digraph, f: &Coloring) -> Result<RepairDiagnostics> {
    let snap = build_snapshot(d, f)?;
    let k = snap.k();
    let s = snap.classes()[snap.minus()].len() + 1;
    let set_a = snap.set_a();
    let set_b = snap.set_b();
    let a_prime = snap.set_a_prime();
    let b_prime = snap.set_b_prime();
    let b_vertices = snap.union_of(&set_b);
    let plus_in_a = snap.in_a(snap.plus());

    let low_degree = |v: usize| d.degree(v) < 2 * k;
    let degree_condition = snap.union_of(&a_prime).into_iter().chain(b_vertices.iter().copied()).all(low_degree);

    let mut blocked_degree = true;
    for (c, class) in snap.classes().iter().enumerate() {
        for y in (0..k).filter(|&u| u != c).flat_map(|u| snap.classes()[u].iter().copied()) {
            if snap.is_blocked(y, c) && d.degree_into(y, class) < 2 {
                blocked_degree = false;
            }
        }
    }

    let edges = classify_edges(d, &snap);
    let (mut vital_pairs, mut vital_lonely_pairs, mut solo_pairs) = (true, true, true);
    for &w in &set_a {
        for &y in &b_vertices {
            let c = EdgeCounts::tally(edges.iter().filter(|e| e.class == w && e.e_b == y));
            vital_pairs &= c.vital() >= 2;
            vital_lonely_pairs &= c.vital() + c.lonely() >= 4;
            solo_pairs &= c.edges + c.solo() >= 4;
        }
    }

    let cardinalities = (!plus_in_a).then(|| {
        snap.union_of(&set_a).len() + 1 == set_a.len() * s
            && snap.union_of(&a_prime).len() == a_prime.len() * s
            && b_vertices.len() == set_b.len() * s + 1
            && snap.union_of(&b_prime).len() == b_prime.len() * s + 1
    });

    let movable_bound = degree_condition.then(|| {
        a_prime.iter().all(|&w| {
            let class = &snap.classes()[w];
            class.iter().all(|&x| {
                let q = snap.movability(x);
                d.degree_into(x, &b_vertices) + d.degree_into(x, class) <= 2 * (set_b.len() + q) + 1
            })
        })
    });

    Ok(RepairDiagnostics {
        a: set_a.len(),
        a_prime: a_prime.len(),
        b: set_b.len(),
        b_prime: b_prime.len(),
        plus_in_a,
        minus_terminal: snap.is_terminal(snap.minus()),
        degree_condition,
        blocked_degree,
        vital_pairs,
        vital_lonely_pairs,
        solo_pairs,
        cardinalities,
        movable_bound,
        terminal_majority: (!plus_in_a).then_some(a_prime.len() > set_b.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::ColoringStatus;
    use crate::graph::VertexSet;

    #[test]
    fn heavy_crossing_pair_is_vital_both_ways() {
        // V- = {0}, B holds {1,2} and {3,4,5}; 0 is heavy to every B vertex
        let mut d = Digraph::new(6);
        for y in 1..6 {
            d.add_edge(0, y).unwrap();
            d.add_edge(y, 0).unwrap();
        }
        let f = Coloring::classify(
            &d,
            vec![
                VertexSet::from_unsorted(vec![0]),
                VertexSet::from_unsorted(vec![1, 2]),
                VertexSet::from_unsorted(vec![3, 4, 5]),
            ],
        );
        assert_eq!(f.status(), ColoringStatus::Useful);
        let snap = build_snapshot(&d, &f).unwrap();
        assert_eq!(snap.set_b(), vec![1, 2]);
        let edges = classify_edges(&d, &snap);
        assert_eq!(edges.len(), 10);
        assert!(edges.iter().all(|e| e.vital && e.lonely && e.solo));
        let diag = diagnose(&d, &f).unwrap();
        assert!(diag.vital_pairs && diag.vital_lonely_pairs && diag.solo_pairs);
    }

    #[test]
    fn tally_splits_directions() {
        let e = |into_a, vital, lonely, solo| EdgeClassification {
            tail: 0,
            head: 1,
            e_a: 0,
            e_b: 1,
            class: 0,
            into_a,
            vital,
            lonely,
            solo,
        };
        let c = EdgeCounts::tally(&[e(true, true, true, true), e(false, true, false, false), e(false, false, false, true)]);
        assert_eq!((c.edges, c.vital_in, c.vital_out, c.lonely(), c.solo_in, c.solo_out), (3, 1, 1, 1, 1, 1));
    }
}
