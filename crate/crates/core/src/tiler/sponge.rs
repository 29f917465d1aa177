use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::clique::{is_acceptable, is_near_matching};
use crate::graph::StandardMultigraph;

/// A perfect tiling of `M[vertices]` by acceptable `s`-cliques, by exhaustive
/// search that always covers the lowest remaining vertex. Meant for the
/// handful of vertices in a sponge.
pub fn perfect_acceptable_tiling(m: &StandardMultigraph, vertices: &[usize], s: usize) -> Option<Vec<Vec<usize>>> {
    fn go(m: &StandardMultigraph, rest: &[usize], s: usize, tiles: &mut Vec<Vec<usize>>) -> bool {
        let Some((&first, others)) = rest.split_first() else {
            return true;
        };
        let mut tile = vec![first];
        pick(m, rest, others, 0, s, &mut tile, tiles)
    }
    fn pick(
        m: &StandardMultigraph,
        rest: &[usize],
        pool: &[usize],
        from: usize,
        s: usize,
        tile: &mut Vec<usize>,
        tiles: &mut Vec<Vec<usize>>,
    ) -> bool {
        if tile.len() == s {
            if !is_acceptable(m, tile, s) {
                return false;
            }
            let remaining: Vec<usize> = rest.iter().copied().filter(|v| !tile.contains(v)).collect();
            tiles.push(tile.clone());
            if go(m, &remaining, s, tiles) {
                return true;
            }
            tiles.pop();
            return false;
        }
        for i in from..pool.len() {
            let v = pool[i];
            // a tile with a missing pair can never become acceptable
            if tile.iter().any(|&u| m.multiplicity(u, v) == 0) {
                continue;
            }
            tile.push(v);
            if pick(m, rest, pool, i + 1, s, tile, tiles) {
                return true;
            }
            tile.pop();
        }
        false
    }
    if s == 0 || !vertices.len().is_multiple_of(s) {
        return None;
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let mut tiles = Vec::new();
    go(m, &sorted, s, &mut tiles).then_some(tiles)
}

/// `Z` is an `S`-sponge: `Z ∩ S = ∅` and both `M[Z]` and `M[Z ∪ S]` have a
/// perfect acceptable `s`-clique tiling.
pub fn is_sponge(m: &StandardMultigraph, s: usize, z: &[usize], set: &[usize]) -> bool {
    if z.iter().any(|v| set.contains(v)) {
        return false;
    }
    let mut joined = z.to_vec();
    joined.extend_from_slice(set);
    perfect_acceptable_tiling(m, &joined, s).is_some() && perfect_acceptable_tiling(m, z, s).is_some()
}

/// `T` extended by one vertex stays extendable: for both anchors `x`,
/// `T + x` is a near matching clique and `x` has at most
/// `max{0, t − s + 3}` light edges into `T`.
fn useful(m: &StandardMultigraph, s: usize, anchors: [usize; 2], tuple: &[usize]) -> bool {
    let t = tuple.len();
    let cap = (t + 3).saturating_sub(s);
    anchors.iter().all(|&x| {
        let mut with = tuple.to_vec();
        with.push(x);
        m.light_degree_into(x, tuple) <= cap && is_near_matching(m, &with, s)
    })
}

/// Up to `limit` distinct `(s−1)`-tuples `T` of distinct vertices, avoiding
/// `x1` and `x2`, such that `im(T) + x1` and `im(T) + x2` are both near
/// matching `s`-cliques.
///
/// Each probe grows a tuple one vertex at a time, keeping it extendable and
/// preferring candidates with more multiplicity into the current tuple and
/// anchors; a probe that gets stuck is abandoned. `probes` bounds the work.
pub fn sponge_tuples(
    m: &StandardMultigraph,
    s: usize,
    x1: usize,
    x2: usize,
    limit: usize,
    probes: usize,
    seed: u64,
) -> Vec<Vec<usize>> {
    let n = m.n();
    if s < 2 || x1 == x2 || x1 >= n || x2 >= n || n < s + 1 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut candidates: Vec<usize> = (0..n).filter(|&v| v != x1 && v != x2).collect();
    for _ in 0..probes {
        if found.len() >= limit {
            break;
        }
        candidates.shuffle(&mut rng);
        let mut tuple: Vec<usize> = Vec::with_capacity(s - 1);
        while tuple.len() < s - 1 {
            let mut core = tuple.clone();
            core.extend([x1, x2]);
            let mut ranked: Vec<&usize> = candidates.iter().filter(|v| !tuple.contains(v)).collect();
            // stable sort keeps the shuffled order inside each class V_c
            ranked.sort_by_key(|&&v| std::cmp::Reverse(m.degree_into(v, &core)));
            let next = ranked.into_iter().copied().find(|&v| {
                tuple.push(v);
                let ok = useful(m, s, [x1, x2], &tuple);
                tuple.pop();
                ok
            });
            match next {
                Some(v) => tuple.push(v),
                None => break,
            }
        }
        if tuple.len() == s - 1 && !found.contains(&tuple) {
            found.push(tuple);
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_heavy_tuples_qualify() {
        let m = StandardMultigraph::complete(10);
        let tuples = sponge_tuples(&m, 3, 0, 1, 5, 50, 1);
        assert_eq!(tuples.len(), 5);
        for t in &tuples {
            assert_eq!(t.len(), 2);
            assert!(t.iter().all(|&v| v > 1) && t[0] != t[1]);
        }
    }

    #[test]
    fn light_star_at_anchor_is_avoided() {
        // 0 is light to 2, 3, 4 and heavy elsewhere; an anchor may have at
        // most two light edges into a 3-tuple
        let mut m = StandardMultigraph::complete(8);
        for v in [2, 3, 4] {
            m.set_multiplicity(0, v, 1).unwrap();
        }
        for t in sponge_tuples(&m, 4, 0, 1, 20, 200, 3) {
            assert!(t.iter().filter(|v| [2, 3, 4].contains(v)).count() <= 2);
        }
    }

    #[test]
    fn sponges_in_complete_graph() {
        let m = StandardMultigraph::complete(12);
        let z: Vec<usize> = (3..12).collect();
        assert!(is_sponge(&m, 3, &z, &[0, 1, 2]));
        assert!(!is_sponge(&m, 3, &z, &[0, 1, 3]));
        let mut sparse = m.clone();
        for v in 1..12 {
            sparse.set_multiplicity(0, v, 0).unwrap();
        }
        assert!(!is_sponge(&sparse, 3, &z, &[0, 1, 2]));
        assert_eq!(perfect_acceptable_tiling(&m, &[0, 1, 2, 3], 2).map(|t| t.len()), Some(2));
    }
}
