//! Random instances with degree guarantees.
//!
//! Each generator walks the candidate pairs in a random order and keeps a
//! change only when it preserves the degree bound, so the bound holds by
//! construction and `density` controls how far the result is pushed
//! towards it.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Digraph, StandardMultigraph};

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect()
}

/// Random digraph with `Δ ≤ max_degree`. Each ordered pair is offered with
/// probability `density` and accepted while both ends have room.
pub fn bounded_digraph<R: Rng + ?Sized>(n: usize, max_degree: usize, density: f64, rng: &mut R) -> Digraph {
    let mut pairs = ordered_pairs(n);
    pairs.shuffle(rng);
    let mut d = Digraph::new(n);
    let mut deg = vec![0usize; n];
    for (u, v) in pairs {
        if deg[u] < max_degree && deg[v] < max_degree && rng.gen_bool(density) {
            d.add_edge(u, v).expect("in range");
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    d
}

/// Random digraph with `δ ≥ min_degree`, obtained as the complement of a
/// bounded-degree digraph.
pub fn dense_digraph<R: Rng + ?Sized>(n: usize, min_degree: usize, density: f64, rng: &mut R) -> Result<Digraph> {
    let full = 2 * n.saturating_sub(1);
    if min_degree > full {
        return Err(Error::InvalidParameter(format!("minimum degree {min_degree} exceeds {full}")));
    }
    Ok(bounded_digraph(n, full - min_degree, density, rng).complement())
}

/// Removes multiplicity units from the pairs of `m` in random order while
/// every degree stays at least `min_degree`. `allowed` filters which pairs
/// may lose units.
fn thin<R: Rng + ?Sized>(
    m: &mut StandardMultigraph,
    min_degree: usize,
    density: f64,
    rng: &mut R,
    allowed: impl Fn(usize, usize) -> bool,
) {
    let n = m.n();
    let mut units: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if allowed(u, v) {
                for _ in 0..m.multiplicity(u, v) {
                    units.push((u, v));
                }
            }
        }
    }
    units.shuffle(rng);
    let mut deg: Vec<usize> = (0..n).map(|v| m.degree(v)).collect();
    for (u, v) in units {
        if deg[u] > min_degree && deg[v] > min_degree && rng.gen_bool(density) {
            let c = m.multiplicity(u, v);
            m.set_multiplicity(u, v, c - 1).expect("valid");
            deg[u] -= 1;
            deg[v] -= 1;
        }
    }
}

/// Random standard multigraph with `δ ≥ min_degree`, thinned from `K²ₙ`.
pub fn dense_multigraph<R: Rng + ?Sized>(n: usize, min_degree: usize, density: f64, rng: &mut R) -> Result<StandardMultigraph> {
    let full = 2 * n.saturating_sub(1);
    if min_degree > full {
        return Err(Error::InvalidParameter(format!("minimum degree {min_degree} exceeds {full}")));
    }
    let mut m = StandardMultigraph::complete(n);
    thin(&mut m, min_degree, density, rng, |_, _| true);
    Ok(m)
}

/// `⌈(2(s−1)/s + ε)·n⌉`, the degree floor used by the planted generator.
pub fn planted_min_degree(n: usize, s: usize, epsilon: f64) -> usize {
    ((2.0 * (s as f64 - 1.0) / s as f64 + epsilon) * n as f64 - 1e-9).ceil() as usize
}

/// A multigraph with a hidden perfect tiling: `V` is split into random
/// `s`-sets, each turned into a full clique whose light edges form a random
/// matching, and pairs across different sets are thinned at random while
/// `δ ≥ ⌈(2(s−1)/s + ε)·n⌉`. Returns the multigraph and the planted tiles.
pub fn planted_multigraph<R: Rng + ?Sized>(
    n: usize,
    s: usize,
    epsilon: f64,
    rng: &mut R,
) -> Result<(StandardMultigraph, Vec<Vec<usize>>)> {
    if s == 0 || !n.is_multiple_of(s) {
        return Err(Error::InvalidParameter(format!("{s} does not divide {n}")));
    }
    let min_degree = planted_min_degree(n, s, epsilon);
    if min_degree > 2 * n.saturating_sub(1) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} too large for n = {n}")));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut tiles: Vec<Vec<usize>> = perm.chunks(s).map(|c| c.to_vec()).collect();
    let mut tile_of = vec![0; n];
    let mut m = StandardMultigraph::complete(n);
    for (t, tile) in tiles.iter_mut().enumerate() {
        tile.sort_unstable();
        for &v in tile.iter() {
            tile_of[v] = t;
        }
        let mut order = tile.clone();
        order.shuffle(rng);
        for pair in order.chunks(2) {
            if pair.len() == 2 && rng.gen_bool(0.5) {
                m.set_multiplicity(pair[0], pair[1], 1)?;
            }
        }
    }
    thin(&mut m, min_degree, 1.0, rng, |u, v| tile_of[u] != tile_of[v]);
    Ok((m, tiles))
}
