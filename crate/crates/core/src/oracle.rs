//! Exhaustive solvers for small instances.
//!
//! These evaluate every definition from scratch and share no search code
//! with the constructive algorithms, so they can be used to check them.
//! Budgets are hard limits: running out is an error, never a guess.

use std::time::{Duration, Instant};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::{Digraph, StandardMultigraph, VertexSet};

#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 15,
            max_nodes: 500_000_000,
            time_limit: Duration::from_secs(120),
        }
    }
}

impl OracleBudget {
    fn check_size(&self, n: usize) -> Result<()> {
        if self.max_vertices == 0 || self.max_nodes == 0 || self.time_limit.is_zero() {
            return Err(Error::InvalidParameter("oracle budget values must be positive".into()));
        }
        if n > self.max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices exceeds the limit of {}",
                self.max_vertices
            )));
        }
        Ok(())
    }
}

struct Meter<'a> {
    budget: &'a OracleBudget,
    nodes: u64,
    start: Instant,
}

impl<'a> Meter<'a> {
    fn new(budget: &'a OracleBudget) -> Self {
        Meter {
            budget,
            nodes: 0,
            start: Instant::now(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded(format!("explored more than {} nodes", self.budget.max_nodes)));
        }
        if self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.budget.time_limit {
            return Err(Error::BudgetExceeded(format!("time limit of {:?} reached", self.budget.time_limit)));
        }
        Ok(())
    }
}

/// Brute-force acyclicity: some order of `set` has every edge pointing forward.
fn acyclic_by_orders(d: &Digraph, set: &[usize]) -> bool {
    fn extend(d: &Digraph, rest: &mut Vec<usize>) -> bool {
        if rest.is_empty() {
            return true;
        }
        for i in 0..rest.len() {
            let v = rest[i];
            // v may go first if nothing left points into it
            if rest.iter().all(|&u| !d.has_edge(u, v)) {
                rest.swap_remove(i);
                let ok = extend(d, rest);
                rest.push(v);
                let last = rest.len() - 1;
                rest.swap(i, last);
                return ok;
            }
        }
        false
    }
    extend(d, &mut set.to_vec())
}

/// Assigns vertices `0..n` to `k` classes with sizes `⌊n/k⌋` or `⌈n/k⌉`,
/// keeping every partial class accepted by `ok`. Only the first empty class
/// is ever opened, which removes the `k!` relabelings.
fn equitable_partition(
    n: usize,
    k: usize,
    meter: &mut Meter,
    ok: &dyn Fn(&[usize], usize) -> bool,
) -> Result<Option<Vec<Vec<usize>>>> {
    struct State<'a> {
        n: usize,
        small: usize,
        big_allowed: usize,
        classes: Vec<Vec<usize>>,
        ok: &'a dyn Fn(&[usize], usize) -> bool,
    }
    fn go(st: &mut State, v: usize, meter: &mut Meter) -> Result<bool> {
        meter.tick()?;
        if v == st.n {
            return Ok(true);
        }
        let remaining = st.n - v;
        let deficit: usize = st.classes.iter().map(|c| st.small.saturating_sub(c.len())).sum();
        if deficit > remaining {
            return Ok(false);
        }
        let big = st.classes.iter().filter(|c| c.len() > st.small).count();
        let mut opened = false;
        for c in 0..st.classes.len() {
            let len = st.classes[c].len();
            if len == 0 {
                if opened {
                    continue;
                }
                opened = true;
            }
            if len > st.small || (len == st.small && big == st.big_allowed) {
                continue;
            }
            if !(st.ok)(&st.classes[c], v) {
                continue;
            }
            st.classes[c].push(v);
            if go(st, v + 1, meter)? {
                return Ok(true);
            }
            st.classes[c].pop();
        }
        Ok(false)
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let mut st = State {
        n,
        small: n / k,
        big_allowed: n % k,
        classes: vec![Vec::new(); k],
        ok,
    };
    Ok(go(&mut st, 0, meter)?.then_some(st.classes))
}

/// A good `k`-coloring of `d` if one exists.
pub fn oracle_equitable_acyclic(d: &Digraph, k: usize, budget: &OracleBudget) -> Result<Option<Coloring>> {
    budget.check_size(d.n())?;
    let mut meter = Meter::new(budget);
    let ok = |class: &[usize], v: usize| {
        let mut with = class.to_vec();
        with.push(v);
        acyclic_by_orders(d, &with)
    };
    let found = equitable_partition(d.n(), k, &mut meter, &ok)?;
    Ok(found.map(|classes| Coloring::classify(d, classes.into_iter().map(VertexSet::from_unsorted).collect())))
}

/// An equitable proper `k`-coloring of the undirected graph with the given
/// edges, if one exists.
pub fn oracle_equitable_proper(
    n: usize,
    edges: &[(usize, usize)],
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<Vec<VertexSet>>> {
    budget.check_size(n)?;
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut meter = Meter::new(budget);
    let ok = |class: &[usize], v: usize| class.iter().all(|&u| !adj[u][v]);
    let found = equitable_partition(n, k, &mut meter, &ok)?;
    Ok(found.map(|classes| classes.into_iter().map(VertexSet::from_unsorted).collect()))
}

/// Exhaustive search for an order of `set` with all forward edges present.
pub fn exhaustive_transitive_order(d: &Digraph, set: &[usize]) -> Result<Option<Vec<usize>>> {
    if set.len() > 8 {
        return Err(Error::BudgetExceeded(format!("order search limited to 8 vertices, got {}", set.len())));
    }
    fn go(d: &Digraph, order: &mut Vec<usize>, rest: &mut Vec<usize>) -> bool {
        if rest.is_empty() {
            return true;
        }
        for i in 0..rest.len() {
            let v = rest[i];
            if order.iter().all(|&u| d.has_edge(u, v)) {
                rest.remove(i);
                order.push(v);
                if go(d, order, rest) {
                    return true;
                }
                order.pop();
                rest.insert(i, v);
            }
        }
        false
    }
    let mut order = Vec::new();
    let mut rest = set.to_vec();
    Ok(go(d, &mut order, &mut rest).then_some(order))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TilePredicate {
    /// Spans a transitive tournament.
    Transitive,
    /// A triangle containing a directed 3-cycle.
    CyclicTriangle,
    /// Spans some tournament: every pair has an edge in at least one direction.
    AnyTournament,
    /// Triangles only: exactly `cyclic` tiles span `C₃` and `transitive` span `T₃`.
    Mixed { cyclic: usize, transitive: usize },
}

fn spans_cyclic_triangle(d: &Digraph, t: &[usize]) -> bool {
    let (a, b, c) = (t[0], t[1], t[2]);
    (d.has_edge(a, b) && d.has_edge(b, c) && d.has_edge(c, a)) || (d.has_edge(a, c) && d.has_edge(c, b) && d.has_edge(b, a))
}

fn spans_tournament(d: &Digraph, t: &[usize]) -> bool {
    t.iter()
        .enumerate()
        .all(|(i, &u)| t[i + 1..].iter().all(|&v| d.has_edge(u, v) || d.has_edge(v, u)))
}

fn spans_transitive(d: &Digraph, t: &[usize]) -> bool {
    matches!(exhaustive_transitive_order(d, t), Ok(Some(_)))
}

/// Calls `visit` on every `s`-subset of `pool` containing `pool[0]`.
fn tiles_through_first(
    pool: &[usize],
    s: usize,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    fn go(
        pool: &[usize],
        from: usize,
        s: usize,
        tile: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if tile.len() == s {
            return visit(tile);
        }
        let need = s - tile.len();
        for i in from..pool.len() {
            if pool.len() - i < need {
                break;
            }
            tile.push(pool[i]);
            if go(pool, i + 1, s, tile, visit)? {
                return Ok(true);
            }
            tile.pop();
        }
        Ok(false)
    }
    let mut tile = vec![pool[0]];
    go(pool, 1, s, &mut tile, visit)
}

/// Generic perfect tiling search: always covers the lowest uncovered vertex.
/// `accept` returns the labels a tile may take (for mixed factors) and
/// `finish` checks the final label counts.
fn tile_search<const L: usize>(
    n: usize,
    s: usize,
    meter: &mut Meter,
    accept: &dyn Fn(&[usize]) -> [bool; L],
    finish: &dyn Fn(&[usize; L]) -> bool,
    allowed: &dyn Fn(&[usize; L]) -> bool,
) -> Result<Option<Vec<Vec<usize>>>> {
    fn go<const L: usize>(
        uncovered: &[usize],
        s: usize,
        meter: &mut Meter,
        tiles: &mut Vec<Vec<usize>>,
        counts: &mut [usize; L],
        accept: &dyn Fn(&[usize]) -> [bool; L],
        finish: &dyn Fn(&[usize; L]) -> bool,
        allowed: &dyn Fn(&[usize; L]) -> bool,
    ) -> Result<bool> {
        meter.tick()?;
        if uncovered.is_empty() {
            return Ok(finish(counts));
        }
        tiles_through_first(uncovered, s, &mut |tile| {
            let labels = accept(tile);
            for (label, &fits) in labels.iter().enumerate() {
                if !fits {
                    continue;
                }
                counts[label] += 1;
                if allowed(counts) {
                    let rest: Vec<usize> = uncovered.iter().copied().filter(|v| !tile.contains(v)).collect();
                    tiles.push(tile.to_vec());
                    if go(&rest, s, meter, tiles, counts, accept, finish, allowed)? {
                        counts[label] -= 1;
                        return Ok(true);
                    }
                    tiles.pop();
                }
                counts[label] -= 1;
            }
            Ok(false)
        })
    }
    if s == 0 || !n.is_multiple_of(s) {
        return Err(Error::InvalidParameter(format!("s = {s} does not divide n = {n}")));
    }
    let all: Vec<usize> = (0..n).collect();
    let mut tiles = Vec::new();
    let mut counts = [0usize; L];
    let found = go(&all, s, meter, &mut tiles, &mut counts, accept, finish, allowed)?;
    Ok(found.then_some(tiles))
}

/// A perfect tiling of `d` by `s`-sets satisfying `predicate`, if one exists.
/// Tiles are returned as sorted vertex lists.
pub fn oracle_factor(
    d: &Digraph,
    s: usize,
    predicate: TilePredicate,
    budget: &OracleBudget,
) -> Result<Option<Vec<Vec<usize>>>> {
    budget.check_size(d.n())?;
    let mut meter = Meter::new(budget);
    let n = d.n();
    match predicate {
        TilePredicate::Mixed { cyclic, transitive } => {
            if s != 3 || 3 * (cyclic + transitive) != n {
                return Err(Error::InvalidParameter(format!(
                    "mixed factor needs s = 3 and 3(c + t) = n, got s = {s}, c = {cyclic}, t = {transitive}, n = {n}"
                )));
            }
            tile_search::<2>(
                n,
                s,
                &mut meter,
                &|t| [spans_cyclic_triangle(d, t), spans_transitive(d, t)],
                &|c| c[0] == cyclic && c[1] == transitive,
                &|c| c[0] <= cyclic && c[1] <= transitive,
            )
        }
        _ => {
            if predicate == TilePredicate::CyclicTriangle && s != 3 {
                return Err(Error::InvalidParameter("cyclic triangle tiles need s = 3".into()));
            }
            let test = |t: &[usize]| match predicate {
                TilePredicate::Transitive => spans_transitive(d, t),
                TilePredicate::CyclicTriangle => spans_cyclic_triangle(d, t),
                _ => spans_tournament(d, t),
            };
            tile_search::<1>(n, s, &mut meter, &|t| [test(t)], &|_| true, &|_| true)
        }
    }
}

/// Every pair of `set` has positive multiplicity and the light pairs are
/// acyclic, evaluated by depth-first search.
fn is_full_clique(m: &StandardMultigraph, set: &[usize]) -> bool {
    for (i, &u) in set.iter().enumerate() {
        if set[i + 1..].iter().any(|&v| m.multiplicity(u, v) == 0) {
            return false;
        }
    }
    // a graph is a forest iff every component has one fewer edge than vertices
    let mut seen = vec![false; set.len()];
    for start in 0..set.len() {
        if seen[start] {
            continue;
        }
        let (mut vertices, mut degree_sum) = (0, 0);
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            vertices += 1;
            for j in 0..set.len() {
                if j != i && m.multiplicity(set[i], set[j]) == 1 {
                    degree_sum += 1;
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        if degree_sum / 2 != vertices - 1 {
            return false;
        }
    }
    true
}

fn light_degrees(m: &StandardMultigraph, set: &[usize]) -> Vec<usize> {
    set.iter()
        .map(|&u| set.iter().filter(|&&v| v != u && m.multiplicity(u, v) == 1).count())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliquePredicate {
    Full,
    Fit,
    NearMatching,
    Acceptable,
    Universal,
}

/// Direct evaluation of the clique predicates on `set` relative to `s`.
pub fn clique_predicate(m: &StandardMultigraph, set: &[usize], s: usize, predicate: CliquePredicate) -> Result<bool> {
    if !is_full_clique(m, set) {
        return Ok(false);
    }
    let degrees = light_degrees(m, set);
    let light: usize = degrees.iter().sum::<usize>() / 2;
    // ‖K‖ˡ ≤ max{0, |K| − s/2}, doubled to stay in integers
    let fit = 2 * light <= (2 * set.len()).saturating_sub(s);
    let near = degrees.iter().all(|&x| x <= 1)
        || (set.len() == s && degrees.iter().all(|&x| x <= 2) && degrees.iter().filter(|&&x| x == 2).count() <= 1);
    Ok(match predicate {
        CliquePredicate::Full => true,
        CliquePredicate::Fit => fit,
        CliquePredicate::NearMatching => near,
        CliquePredicate::Acceptable => fit || near,
        CliquePredicate::Universal => is_universal_clique(&m.induced(set))?,
    })
}

/// A perfect tiling of `m` by `s`-sets satisfying `predicate`, if one exists.
pub fn oracle_multigraph_tiling(
    m: &StandardMultigraph,
    s: usize,
    predicate: CliquePredicate,
    budget: &OracleBudget,
) -> Result<Option<Vec<Vec<usize>>>> {
    budget.check_size(m.n())?;
    let mut meter = Meter::new(budget);
    let universal_ok = predicate != CliquePredicate::Universal || s <= 6;
    if !universal_ok {
        return Err(Error::BudgetExceeded(format!("universality check limited to s <= 6, got {s}")));
    }
    tile_search::<1>(
        m.n(),
        s,
        &mut meter,
        &|t| [clique_predicate(m, t, s, predicate).unwrap_or(false)],
        &|_| true,
        &|_| true,
    )
}

fn permutations(s: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; s], &mut out);
    out
}

fn pairs(s: usize) -> Vec<(usize, usize)> {
    (0..s).flat_map(|u| (u + 1..s).map(move |v| (u, v))).collect()
}

/// One representative of every isomorphism class of tournaments on `s`
/// vertices, as adjacency matrices (`t[u][v]` iff `u → v`).
pub fn tournaments(s: usize) -> Vec<Vec<Vec<bool>>> {
    let ps = pairs(s);
    let perms = permutations(s);
    let build = |mask: u64| {
        let mut t = vec![vec![false; s]; s];
        for (i, &(u, v)) in ps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                t[u][v] = true;
            } else {
                t[v][u] = true;
            }
        }
        t
    };
    let code = |t: &[Vec<bool>], p: &[usize]| -> u64 {
        ps.iter()
            .enumerate()
            .fold(0, |acc, (i, &(u, v))| acc | ((t[p[u]][p[v]] as u64) << i))
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..(1u64 << ps.len()) {
        let t = build(mask);
        let canon = perms.iter().map(|p| code(&t, p)).min().unwrap_or(0);
        if seen.insert(canon) {
            out.push(t);
        }
    }
    out
}

/// Every orientation of the light pairs of `k` (heavy pairs in both
/// directions), as adjacency matrices.
fn orientations(k: &StandardMultigraph) -> Vec<Vec<Vec<bool>>> {
    let s = k.n();
    let light: Vec<(usize, usize)> = pairs(s).into_iter().filter(|&(u, v)| k.multiplicity(u, v) == 1).collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << light.len()) {
        let mut d = vec![vec![false; s]; s];
        for (u, v) in pairs(s) {
            if k.multiplicity(u, v) == 2 {
                d[u][v] = true;
                d[v][u] = true;
            }
        }
        for (i, &(u, v)) in light.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d[u][v] = true;
            } else {
                d[v][u] = true;
            }
        }
        out.push(d);
    }
    out
}

fn check_universal_input(k: &StandardMultigraph) -> Result<()> {
    let s = k.n();
    if s > 6 {
        return Err(Error::BudgetExceeded(format!("universality check limited to s <= 6, got {s}")));
    }
    let all: Vec<usize> = (0..s).collect();
    if !k.is_clique(&all) {
        return Err(Error::InvalidParameter("not a clique".into()));
    }
    Ok(())
}

/// `k` is universal: every orientation of it contains every tournament on
/// `|k|` vertices.
pub fn is_universal_clique(k: &StandardMultigraph) -> Result<bool> {
    check_universal_input(k)?;
    let s = k.n();
    let perms = permutations(s);
    let ts = tournaments(s);
    Ok(orientations(k).iter().all(|d| {
        ts.iter()
            .all(|t| perms.iter().any(|p| (0..s).all(|u| (0..s).all(|v| !t[u][v] || d[p[u]][p[v]]))))
    }))
}

/// The same property, checked as: every orientation of `L(k)` embeds into
/// every tournament on `|k|` vertices.
pub fn is_universal_by_light_embedding(k: &StandardMultigraph) -> Result<bool> {
    check_universal_input(k)?;
    let s = k.n();
    let perms = permutations(s);
    let ts = tournaments(s);
    let light: Vec<(usize, usize)> = pairs(s).into_iter().filter(|&(u, v)| k.multiplicity(u, v) == 1).collect();
    for mask in 0..(1u64 << light.len()) {
        let arcs: Vec<(usize, usize)> = light
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (u, v) } else { (v, u) })
            .collect();
        let embeds_everywhere = ts
            .iter()
            .all(|t| perms.iter().any(|p| arcs.iter().all(|&(u, v)| t[p[u]][p[v]])));
        if !embeds_everywhere {
            return Ok(false);
        }
    }
    Ok(true)
}
