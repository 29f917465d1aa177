//! Named extremal constructions and random instance generators.
//!
//! Canonical layouts: `X` is always the first `|X|` indices, a removed
//! clique occupies the last indices, and the reversed vertex is the last
//! index of `Y`.

pub mod random;

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// `K²_{sk}` minus both directions of every pair inside the last `k + 1`
/// vertices.
pub fn hs_extremal(s: usize, k: usize) -> Result<Digraph> {
    if s < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("hs-extremal needs s >= 2 and k >= 1, got s={s} k={k}")));
    }
    let n = s * k;
    if k + 1 > n {
        return Err(Error::InvalidParameter(format!("hollow set of size {} exceeds n = {n}", k + 1)));
    }
    let mut d = Digraph::complete(n);
    for u in n - k - 1..n {
        for v in n - k - 1..n {
            if u != v {
                d.remove_edge(u, v)?;
            }
        }
    }
    Ok(d)
}

fn minus_x_to_y(n: usize, x: usize) -> Digraph {
    let mut d = Digraph::complete(n);
    for u in 0..x {
        for v in x..n {
            d.remove_edge(u, v).expect("in range");
        }
    }
    d
}

/// `K²_{3k} − E⁺(X, Y)` with `|X| = |Y| + 1 = (3k + 1)/2`, for odd `k`.
pub fn wang_extremal(k: usize) -> Result<Digraph> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("wang construction needs odd k, got {k}")));
    }
    Ok(minus_x_to_y(3 * k, (3 * k).div_ceil(2)))
}

/// `K²_{3k} − E⁺(X, Y)` with `k = 2p + 1`, `|X| = 3p + 2`, `|Y| = 3p + 1`,
/// then every edge at the last vertex of `Y` reversed.
pub fn strong2_extremal(p: usize) -> Result<Digraph> {
    if p == 0 {
        return Err(Error::InvalidParameter("strong2 construction needs p >= 1".into()));
    }
    let k = 2 * p + 1;
    let n = 3 * k;
    let base = minus_x_to_y(n, 3 * p + 2);
    let v = n - 1;
    let mut d = Digraph::new(n);
    for (a, b) in base.edges() {
        let (a, b) = if a == v || b == v { (b, a) } else { (a, b) };
        d.add_edge(a, b)?;
    }
    Ok(d)
}

/// Every vertex reaches every other vertex.
pub fn is_strongly_connected(d: &Digraph) -> bool {
    strongly_connected_without(d, None)
}

/// Strongly connected after deleting any single vertex, with at least three
/// vertices.
pub fn is_strongly_2_connected(d: &Digraph) -> bool {
    d.n() >= 3 && is_strongly_connected(d) && (0..d.n()).all(|v| strongly_connected_without(d, Some(v)))
}

fn strongly_connected_without(d: &Digraph, skip: Option<usize>) -> bool {
    let n = d.n();
    let Some(root) = (0..n).find(|&v| Some(v) != skip) else {
        return true;
    };
    let live = n - usize::from(skip.is_some());
    let count = |forward: bool| {
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            let next: Vec<usize> = if forward {
                d.out_neighbors(v).collect()
            } else {
                d.in_neighbors(v).collect()
            };
            for w in next {
                if !seen[w] && Some(w) != skip {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached
    };
    count(true) == live && count(false) == live
}

/// Outcome of adding one missing edge to a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdProbe {
    pub added: (usize, usize),
    pub min_degree: usize,
    pub has_factor: bool,
}

/// Adds each missing edge of `d` in turn (up to `limit` of them) and asks
/// `has_factor` about the result. Diagnostic only.
pub fn threshold_probe(
    d: &Digraph,
    limit: usize,
    mut has_factor: impl FnMut(&Digraph) -> Result<bool>,
) -> Result<Vec<ThresholdProbe>> {
    let mut out = Vec::new();
    for u in 0..d.n() {
        for v in 0..d.n() {
            if out.len() == limit {
                return Ok(out);
            }
            if u == v || d.has_edge(u, v) {
                continue;
            }
            let mut e = d.clone();
            e.add_edge(u, v)?;
            out.push(ThresholdProbe {
                added: (u, v),
                min_degree: e.min_degree(),
                has_factor: has_factor(&e)?,
            });
        }
    }
    Ok(out)
}
