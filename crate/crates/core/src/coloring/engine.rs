use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::snapshot::{is_blocked, lowest_witness, ClassDigraphSnapshot, NONE};
use crate::coloring::{Coloring, ColoringStatus};
use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexSet};

#[derive(Clone, Debug)]
pub struct EngineOptions {
    /// Reject inputs with `Δ > 2k − 1` instead of attempting them.
    pub strict: bool,
    /// Shuffles the initial partition and degree ties; `0` keeps index order.
    pub seed: u64,
    /// Re-check the degree hypothesis and set cardinalities at every repair.
    pub check_invariants: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            strict: true,
            seed: 0,
            check_invariants: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub pad_vertices: usize,
    /// Vertex insertions that closed a cycle and forced a move.
    pub conflicts: usize,
    pub path_switches: usize,
    pub full_snapshots: usize,
    pub config_a: usize,
    pub config_b: usize,
    pub max_depth: usize,
}

/// Adds a disjoint `K²_p` so that `k` divides the vertex count.
/// The new vertices are `n..n+p`.
pub fn pad_to_divisible(d: &Digraph, k: usize) -> Result<(Digraph, usize)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let p = (k - d.n() % k) % k;
    if p == 0 {
        return Ok((d.clone(), 0));
    }
    Ok((d.disjoint_union(&Digraph::complete(p)), p))
}

/// Given a good coloring `f` of `d − E(u)`, returns `f` if it stays acyclic
/// in `d`, otherwise the coloring obtained by moving `u` to a class it has
/// no in-edges from (or no out-edges to).
pub fn insert_vertex_edges(d: &Digraph, f: &Coloring, u: usize) -> Result<Coloring> {
    if u >= d.n() {
        return Err(Error::VertexOutOfRange { vertex: u, n: d.n() });
    }
    let own = f
        .class_of(u)
        .ok_or_else(|| Error::InvalidParameter(format!("vertex {u} is not colored")))?;
    if d.is_acyclic_slice(f.classes()[own].as_slice()) {
        return Ok(f.clone());
    }
    let classes: Vec<&[usize]> = f.classes().iter().map(VertexSet::as_slice).collect();
    let target = receiving_class(d, &classes, u, own)
        .ok_or_else(|| Error::invariant(format!("no class can receive vertex {u}")))?;
    let mut moved = f.classes().to_vec();
    moved[own].remove(u);
    moved[target].insert(u);
    Ok(Coloring::classify(d, moved))
}

fn receiving_class(d: &Digraph, classes: &[&[usize]], u: usize, own: usize) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (w, class) in classes.iter().enumerate() {
        if w == own {
            continue;
        }
        let (o, i) = d.split_degree_into(u, class);
        if (o == 0 || i == 0) && best.is_none_or(|(b, _)| o + i < b) {
            best = Some((o + i, w));
        }
    }
    best.map(|(_, w)| w)
}

/// Moves the lowest-index witness of each edge of `path` (a `V⁺, V⁻` path
/// of the class digraph) one step forward. Witnesses are chosen on `f` and
/// each move is validated before the next one.
pub fn switch_witness_path(d: &Digraph, f: &Coloring, path: &[usize]) -> Result<Coloring> {
    if f.status() != ColoringStatus::Useful {
        return Err(Error::Precondition("witness switching needs a useful coloring".into()));
    }
    let (minus, plus) = (f.small_index().unwrap(), f.large_index().unwrap());
    if path.first() != Some(&plus) || path.last() != Some(&minus) {
        return Err(Error::InvalidParameter("path must run from V+ to V-".into()));
    }
    if path.iter().any(|&c| c >= f.k()) {
        return Err(Error::InvalidParameter("path names a class out of range".into()));
    }
    let mut classes: Vec<Vec<usize>> = f.classes().iter().map(|c| c.as_slice().to_vec()).collect();
    apply_path(d, &mut classes, path)?;
    let out = Coloring::classify(d, classes.into_iter().map(VertexSet::from_unsorted).collect());
    if !out.is_good() {
        return Err(Error::invariant("witness switch did not produce a good coloring"));
    }
    Ok(out)
}

fn apply_path(g: &Digraph, classes: &mut [Vec<usize>], path: &[usize]) -> Result<()> {
    let mut scratch = Vec::new();
    let mut witnesses = Vec::with_capacity(path.len());
    for pair in path.windows(2) {
        let (from, to) = (pair[0], pair[1]);
        let y = lowest_witness(g, &classes[from], &classes[to], &mut scratch)
            .ok_or_else(|| Error::StalePath(format!("no witness for class edge {from} -> {to}")))?;
        witnesses.push(y);
    }
    for (j, &y) in witnesses.iter().enumerate() {
        let (from, to) = (path[j], path[j + 1]);
        let pos = classes[from]
            .binary_search(&y)
            .map_err(|_| Error::StalePath(format!("witness {y} already left class {from}")))?;
        classes[from].remove(pos);
        let at = classes[to].binary_search(&y).unwrap_err();
        classes[to].insert(at, y);
        if !g.is_acyclic_slice(&classes[to]) {
            return Err(Error::StalePath(format!("moving {y} into class {to} closed a cycle")));
        }
    }
    Ok(())
}

/// Turns a useful coloring of `d` into a good one with the same number of
/// classes.
pub fn repair(d: &Digraph, f: &Coloring) -> Result<Coloring> {
    repair_with(d, f, &EngineOptions::default()).map(|(c, _)| c)
}

pub fn repair_with(d: &Digraph, f: &Coloring, opts: &EngineOptions) -> Result<(Coloring, EngineStats)> {
    if f.status() != ColoringStatus::Useful {
        return Err(Error::Precondition("repair needs a useful coloring".into()));
    }
    let classes: Vec<Vec<usize>> = f.classes().iter().map(|c| c.as_slice().to_vec()).collect();
    let mut stats = EngineStats::default();
    let mut r = Repairer {
        g: d,
        check: opts.check_invariants,
        prefer_b: false,
        stats: &mut stats,
        depth_limit: f.k(),
    };
    let fixed = r.repair(classes, f.small_index().unwrap(), f.large_index().unwrap(), 0)?;
    let out = Coloring::classify(d, fixed.into_iter().map(VertexSet::from_unsorted).collect());
    if !out.is_good() {
        return Err(Error::invariant("repair returned a coloring that is not good"));
    }
    Ok((out, stats))
}

struct Repairer<'a> {
    g: &'a Digraph,
    check: bool,
    /// Test hook: at the top level, prefer the second configuration.
    prefer_b: bool,
    stats: &'a mut EngineStats,
    depth_limit: usize,
}

enum Config {
    /// `x` movable, `W − x + y` acyclic.
    A { w: usize, x: usize, y: usize },
    /// `x` not movable, `W − x + y + y′` acyclic with `y′ ∈ B′ − y`.
    B { w: usize, x: usize, y_prime: usize },
}

impl Repairer<'_> {
    fn repair(&mut self, mut classes: Vec<Vec<usize>>, minus: usize, plus: usize, depth: usize) -> Result<Vec<Vec<usize>>> {
        if depth > self.depth_limit {
            return Err(Error::invariant(format!("repair recursion exceeded depth {}", self.depth_limit)));
        }
        self.stats.max_depth = self.stats.max_depth.max(depth);

        if let Some(path) = self.shortest_path(&classes, minus, plus) {
            apply_path(self.g, &mut classes, &path)?;
            self.stats.path_switches += 1;
            return Ok(classes);
        }

        self.stats.full_snapshots += 1;
        let snap = ClassDigraphSnapshot::compute_lazy(self.g, &classes, minus, plus);
        if self.check {
            self.check_snapshot(&snap)?;
        }
        let config = if self.prefer_b && depth == 0 {
            self.find_config(&snap, false).or_else(|| self.find_config(&snap, true))
        } else {
            self.find_config(&snap, true)
        };
        match config {
            Some(Config::A { w, x, y }) => {
                self.stats.config_a += 1;
                self.execute_a(&snap, w, x, y, depth)
            }
            Some(Config::B { w, x, y_prime }) => {
                self.stats.config_b += 1;
                self.execute_b(&snap, w, x, y_prime, depth)
            }
            None => Err(Error::invariant(dump(&snap, "no repair configuration exists"))),
        }
    }

    /// Shortest, then lexicographically least, `V⁺ → V⁻` path in `H`,
    /// found by a backward BFS from `V⁻` that tests class edges on demand
    /// and stops at the layer containing `V⁺`.
    fn shortest_path(&self, classes: &[Vec<usize>], minus: usize, plus: usize) -> Option<Vec<usize>> {
        let k = classes.len();
        let mut scratch = Vec::new();
        let mut dist = vec![NONE; k];
        dist[minus] = 0;
        let mut frontier = vec![minus];
        let mut unvisited: Vec<usize> = (0..k).filter(|&c| c != minus && !classes[c].is_empty()).collect();
        let mut layer = 0;
        while dist[plus] == NONE && !frontier.is_empty() {
            let mut next = Vec::new();
            unvisited.retain(|&u| {
                let hit = frontier
                    .iter()
                    .any(|&w| lowest_witness(self.g, &classes[u], &classes[w], &mut scratch).is_some());
                if hit {
                    dist[u] = layer + 1;
                    next.push(u);
                }
                !hit
            });
            frontier = next;
            layer += 1;
        }
        if dist[plus] == NONE {
            return None;
        }
        let mut path = vec![plus];
        let mut cur = plus;
        while cur != minus {
            cur = (0..k)
                .find(|&c| {
                    dist[c] != NONE
                        && dist[c] + 1 == dist[cur]
                        && lowest_witness(self.g, &classes[cur], &classes[c], &mut scratch).is_some()
                })
                .expect("BFS layer has a successor");
            path.push(cur);
        }
        Some(path)
    }

    fn find_config(&self, snap: &ClassDigraphSnapshot, allow_a: bool) -> Option<Config> {
        let b_vertices = snap.union_of(&snap.set_b());
        let mut order: Vec<usize> = snap.set_a().into_iter().filter(|&w| w != snap.minus()).collect();
        order.sort_by_key(|&w| (std::cmp::Reverse(snap.dist_to_minus(w)), w));
        let mut scratch = Vec::new();
        for w in order {
            if !snap.is_terminal(w) {
                continue;
            }
            let class = &snap.classes()[w];
            let mut xs = class.clone();
            xs.sort_by_key(|&x| (std::cmp::Reverse(snap.movability(x)), x));
            let mut ys = b_vertices.clone();
            ys.sort_by_key(|&y| (self.g.degree_into(y, class), y));
            for &x in &xs {
                let movable = snap.movability(x) > 0;
                let rest: Vec<usize> = class.iter().copied().filter(|&v| v != x).collect();
                for &y in &ys {
                    if is_blocked(self.g, y, &rest, &mut scratch) {
                        continue;
                    }
                    if movable {
                        if allow_a {
                            return Some(Config::A { w, x, y });
                        }
                        continue;
                    }
                    let mut with_y = rest.clone();
                    with_y.push(y);
                    let partner = b_vertices.iter().copied().find(|&y2| {
                        y2 != y
                            && snap.in_b_prime(snap.class_of(y2).unwrap())
                            && !is_blocked(self.g, y2, &with_y, &mut scratch)
                    });
                    if let Some(y_prime) = partner {
                        return Some(Config::B { w, x, y_prime });
                    }
                }
            }
        }
        None
    }

    /// Moves `x` out of `w` into the nearest class of `𝒜 − W` it witnesses an
    /// edge into, then switches witnesses towards `V⁻` inside `H − W`. Only
    /// the classes of `𝒜 ∖ W` change.
    fn rebalance_a(&self, snap: &ClassDigraphSnapshot, classes: &mut [Vec<usize>], w: usize, x: usize) -> Result<()> {
        let dist = snap.distances_to(snap.minus(), Some(w));
        let u = snap
            .set_a()
            .into_iter()
            .filter(|&u| u != w && !snap.is_blocked(x, u) && dist[u].is_some())
            .min_by_key(|&u| (dist[u], u))
            .ok_or_else(|| Error::invariant(format!("vertex {x} has no receiving class in A - W")))?;
        let mut path = vec![u];
        let mut cur = u;
        while cur != snap.minus() {
            let d = dist[cur].unwrap();
            cur = (0..snap.k())
                .find(|&c| c != w && dist[c] == Some(d - 1) && snap.has_edge(cur, c))
                .ok_or_else(|| Error::invariant("broken distance labels in H - W"))?;
            path.push(cur);
        }
        let witnesses: Vec<usize> = path
            .windows(2)
            .map(|p| snap.witnesses(p[0], p[1])[0])
            .collect();
        insert_sorted(&mut classes[u], x);
        for (j, &y) in witnesses.iter().enumerate() {
            remove_sorted(&mut classes[path[j]], y);
            insert_sorted(&mut classes[path[j + 1]], y);
        }
        Ok(())
    }

    /// Repairs the classes of `𝓑` after `y` left them. Returns the classes
    /// in the order of `set_b`.
    fn repair_b(&mut self, snap: &ClassDigraphSnapshot, y: usize, depth: usize) -> Result<Vec<Vec<usize>>> {
        let set_b = snap.set_b();
        let home = snap.class_of(y).unwrap();
        let mut sub: Vec<Vec<usize>> = set_b.iter().map(|&c| snap.classes()[c].clone()).collect();
        let local = set_b.iter().position(|&c| c == home).unwrap();
        remove_sorted(&mut sub[local], y);
        if home == snap.plus() {
            return Ok(sub);
        }
        let plus_local = set_b.iter().position(|&c| c == snap.plus()).unwrap();
        self.repair(sub, local, plus_local, depth + 1)
    }

    fn execute_a(&mut self, snap: &ClassDigraphSnapshot, w: usize, x: usize, y: usize, depth: usize) -> Result<Vec<Vec<usize>>> {
        let mut classes = snap.classes().to_vec();
        self.rebalance_a(snap, &mut classes, w, x)?;
        remove_sorted(&mut classes[w], x);
        insert_sorted(&mut classes[w], y);
        let set_b = snap.set_b();
        let fixed = self.repair_b(snap, y, depth)?;
        for (c, class) in set_b.into_iter().zip(fixed) {
            classes[c] = class;
        }
        Ok(classes)
    }

    fn execute_b(&mut self, snap: &ClassDigraphSnapshot, w: usize, x: usize, y_prime: usize, depth: usize) -> Result<Vec<Vec<usize>>> {
        let x_prime = snap.classes()[w]
            .iter()
            .copied()
            .find(|&v| snap.movability(v) > 0)
            .ok_or_else(|| Error::invariant(format!("class {w} of A has no movable vertex")))?;
        let mut classes = snap.classes().to_vec();
        self.rebalance_a(snap, &mut classes, w, x_prime)?;
        remove_sorted(&mut classes[w], x_prime);
        remove_sorted(&mut classes[w], x);
        insert_sorted(&mut classes[w], y_prime);

        let set_b = snap.set_b();
        let g2 = self.repair_b(snap, y_prime, depth)?;

        // G₃: the fresh coloring of B − y′ plus W′, with x dropped into the
        // first class that stays acyclic.
        let mut g3 = g2;
        g3.push(classes[w].clone());
        let small = g3.len() - 1;
        let mut scratch = Vec::new();
        let z = (0..g3.len())
            .find(|&z| !is_blocked(self.g, x, &g3[z], &mut scratch))
            .ok_or_else(|| Error::invariant(format!("vertex {x} fits no class of G3")))?;
        insert_sorted(&mut g3[z], x);
        let g3 = if z == small { g3 } else { self.repair(g3, small, z, depth + 1)? };
        for (c, class) in set_b.into_iter().chain(std::iter::once(w)).zip(g3) {
            classes[c] = class;
        }
        Ok(classes)
    }

    fn check_snapshot(&self, snap: &ClassDigraphSnapshot) -> Result<()> {
        let k = snap.k();
        let s = snap.classes()[snap.minus()].len() + 1;
        for c in (0..k).filter(|&c| !snap.in_a(c) || snap.is_terminal(c)) {
            for &v in &snap.classes()[c] {
                let d = snap.degree_within(self.g, v);
                if d > 2 * k - 1 {
                    return Err(Error::invariant(format!(
                        "degree hypothesis fails at vertex {v}: {d} > {}",
                        2 * k - 1
                    )));
                }
            }
        }
        for (c, class) in snap.classes().iter().enumerate() {
            for &y in (0..k).filter(|&u| u != c).flat_map(|u| snap.classes()[u].iter()) {
                if snap.is_blocked(y, c) && self.g.degree_into(y, class) < 2 {
                    return Err(Error::invariant(format!("vertex {y} blocked in class {c} with fewer than 2 edges")));
                }
            }
        }
        if snap.is_terminal(snap.minus()) {
            return Err(Error::invariant(dump(snap, "V- is terminal")));
        }
        let a = snap.a_count();
        let a_set = snap.union_of(&snap.set_a()).len();
        let a_prime = snap.set_a_prime();
        let b = k - a;
        let b_prime = snap.set_b_prime().len();
        let sizes_ok = a_set + 1 == a * s
            && snap.union_of(&a_prime).len() == a_prime.len() * s
            && snap.union_of(&snap.set_b()).len() == b * s + 1
            && snap.union_of(&snap.set_b_prime()).len() == b_prime * s + 1;
        if !sizes_ok {
            return Err(Error::invariant(dump(snap, "set cardinalities disagree with the useful structure")));
        }
        Ok(())
    }
}

fn dump(snap: &ClassDigraphSnapshot, what: &str) -> String {
    format!(
        "{what}; k={} V-={} V+={} A={:?} A'={:?} B={:?} B'={:?} classes={:?}",
        snap.k(),
        snap.minus(),
        snap.plus(),
        snap.set_a(),
        snap.set_a_prime(),
        snap.set_b(),
        snap.set_b_prime(),
        snap.classes()
    )
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    if let Err(at) = v.binary_search(&x) {
        v.insert(at, x);
    }
}

fn remove_sorted(v: &mut Vec<usize>, x: usize) {
    if let Ok(at) = v.binary_search(&x) {
        v.remove(at);
    }
}

/// Equitable acyclic `k`-coloring with default options.
pub fn equitable_acyclic_coloring(d: &Digraph, k: usize) -> Result<Coloring> {
    equitable_acyclic_coloring_with(d, k, &EngineOptions::default()).map(|(c, _)| c)
}

pub fn equitable_acyclic_coloring_with(d: &Digraph, k: usize, opts: &EngineOptions) -> Result<(Coloring, EngineStats)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let delta = d.max_degree();
    let within_bound = delta < 2 * k;
    if opts.strict && !within_bound {
        return Err(Error::Precondition(format!(
            "maximum total degree {delta} exceeds 2k-1 = {}",
            2 * k - 1
        )));
    }
    let result = run_engine(d, k, opts, within_bound);
    match result {
        Err(Error::InvariantViolation(msg) | Error::StalePath(msg)) if !within_bound => Err(Error::NoSolution(format!(
            "no good coloring found (degree {delta} above 2k-1): {msg}"
        ))),
        other => other,
    }
}

fn run_engine(d: &Digraph, k: usize, opts: &EngineOptions, within_bound: bool) -> Result<(Coloring, EngineStats)> {
    let (g, pad) = pad_to_divisible(d, k)?;
    let n = g.n();
    let mut stats = EngineStats {
        pad_vertices: pad,
        ..EngineStats::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut originals: Vec<usize> = (0..d.n()).collect();
    if opts.seed != 0 {
        originals.shuffle(&mut rng);
    }
    // pad vertices first so they start in distinct classes
    let placement: Vec<usize> = (d.n()..n).chain(originals.iter().copied()).collect();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut class_of = vec![0; n];
    for (i, &v) in placement.iter().enumerate() {
        classes[i % k].push(v);
        class_of[v] = i % k;
    }
    for c in &mut classes {
        c.sort_unstable();
    }

    let mut rank = vec![0usize; n];
    for (i, &v) in placement.iter().enumerate() {
        rank[v] = i;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), rank[v]));

    let mut working = Digraph::new(n);
    for &u in &order {
        let outs: Vec<usize> = g.out_neighbors(u).collect();
        let ins: Vec<usize> = g.in_neighbors(u).collect();
        for v in outs {
            working.add_edge(u, v)?;
        }
        for v in ins {
            working.add_edge(v, u)?;
        }
        let own = class_of[u];
        if working.is_acyclic_slice(&classes[own]) {
            continue;
        }
        stats.conflicts += 1;
        let views: Vec<&[usize]> = classes.iter().map(Vec::as_slice).collect();
        let target = receiving_class(&working, &views, u, own)
            .ok_or_else(|| Error::invariant(format!("no class can receive vertex {u}")))?;
        remove_sorted(&mut classes[own], u);
        insert_sorted(&mut classes[target], u);
        let mut r = Repairer {
            g: &working,
            check: opts.check_invariants && within_bound,
            prefer_b: false,
            stats: &mut stats,
            depth_limit: k,
        };
        classes = r.repair(classes, own, target, 0)?;
        let s = n / k;
        if classes.iter().any(|c| c.len() != s || !working.is_acyclic_slice(c)) {
            return Err(Error::invariant(format!("repair after inserting {u} left a bad coloring")));
        }
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                class_of[v] = c;
            }
        }
    }

    let kept: Vec<VertexSet> = classes
        .into_iter()
        .map(|c| VertexSet::from_unsorted(c.into_iter().filter(|&v| v < d.n()).collect()))
        .collect();
    let out = Coloring::classify(d, kept);
    if !out.is_good() {
        return Err(Error::invariant("final coloring failed certification"));
    }
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding_examples() {
        assert_eq!(pad_to_divisible(&Digraph::new(3), 2).unwrap().1, 1);
        assert_eq!(pad_to_divisible(&Digraph::new(6), 3).unwrap().1, 0);
        let (g, p) = pad_to_divisible(&Digraph::new(5), 4).unwrap();
        assert_eq!((g.n(), p), (8, 3));
        assert!(g.is_heavy(5, 7));
        assert!(pad_to_divisible(&Digraph::new(5), 0).is_err());
    }

    #[test]
    fn small_engine_examples() {
        let c3 = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let f = equitable_acyclic_coloring(&c3, 2).unwrap();
        assert!(f.is_good());
        let mut sizes: Vec<usize> = f.classes().iter().map(VertexSet::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);

        let f = equitable_acyclic_coloring(&Digraph::new(6), 3).unwrap();
        assert!(f.classes().iter().all(|c| c.len() == 2));

        let f = equitable_acyclic_coloring(&Digraph::complete(4), 4).unwrap();
        assert!(f.classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn strict_mode_rejects_dense_input() {
        let k3 = Digraph::complete(3);
        assert!(matches!(equitable_acyclic_coloring(&k3, 2), Err(Error::Precondition(_))));
        let loose = EngineOptions {
            strict: false,
            ..EngineOptions::default()
        };
        assert!(matches!(
            equitable_acyclic_coloring_with(&k3, 2, &loose),
            Err(Error::NoSolution(_))
        ));
    }

    #[test]
    fn insertion_moves_vertex_out_of_two_cycle() {
        // 0 and 1 share a class; adding 1 -> 0 closes a 2-cycle
        let d = Digraph::from_edges(4, [(0, 1), (1, 0)]).unwrap();
        let f = Coloring::from_parts(
            vec![VertexSet::from_unsorted(vec![0, 1]), VertexSet::from_unsorted(vec![2, 3])],
            ColoringStatus::Good,
        );
        let g = insert_vertex_edges(&d, &f, 1).unwrap();
        assert_eq!(g.status(), ColoringStatus::Useful);
        assert_eq!(g.classes()[1].as_slice(), &[1, 2, 3]);

        let iso = Digraph::new(4);
        assert_eq!(insert_vertex_edges(&iso, &f, 0).unwrap().classes(), f.classes());
    }

    #[test]
    fn single_step_switch() {
        let d = Digraph::new(6);
        let f = Coloring::classify(
            &d,
            vec![
                VertexSet::from_unsorted(vec![0]),
                VertexSet::from_unsorted(vec![1, 2]),
                VertexSet::from_unsorted(vec![3, 4, 5]),
            ],
        );
        let g = switch_witness_path(&d, &f, &[2, 0]).unwrap();
        assert_eq!(g.classes()[0].as_slice(), &[0, 3]);
        let g = switch_witness_path(&d, &f, &[2, 1, 0]).unwrap();
        assert_eq!(g.classes()[0].as_slice(), &[0, 1]);
        assert_eq!(g.classes()[1].as_slice(), &[2, 3]);
    }

    #[test]
    fn seeds_are_deterministic() {
        let d = Digraph::from_edges(8, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 3), (5, 6), (6, 7), (7, 5)]).unwrap();
        let opts = EngineOptions {
            seed: 7,
            ..EngineOptions::default()
        };
        let a = equitable_acyclic_coloring_with(&d, 3, &opts).unwrap();
        let b = equitable_acyclic_coloring_with(&d, 3, &opts).unwrap();
        assert_eq!(a, b);
    }

    /// A useful coloring whose `V⁺` cannot reach `V⁻`: every vertex of the
    /// last `k − a` classes is blocked in each of the first `a`.
    fn blocked_state(k: usize, s: usize, a: usize, rng: &mut ChaCha8Rng) -> Option<(Digraph, Vec<Vec<usize>>)> {
        use rand::Rng;
        let n = s * k;
        let cap = 2 * k - 1;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut classes = Vec::new();
        let mut at = 0;
        for c in 0..k {
            let size = s - usize::from(c == 0) + usize::from(c == a);
            let mut class = perm[at..at + size].to_vec();
            class.sort_unstable();
            classes.push(class);
            at += size;
        }
        let mut d = Digraph::new(n);
        for c in &classes {
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    if rng.gen_bool(0.4) {
                        d.add_edge(c[i], c[j]).unwrap();
                    }
                }
            }
        }
        for b in a..k {
            for y in classes[b].clone() {
                for w in classes[..a].to_vec() {
                    let blocked = (0..20).any(|_| {
                        let (i, j) = (rng.gen_range(0..w.len()), rng.gen_range(0..w.len()));
                        let (p, q) = if rng.gen_bool(0.5) { (i, i) } else { (i, j) };
                        if p > q || (p < q && !d.has_edge(w[p], w[q])) {
                            return false;
                        }
                        let (first, last) = (w[p], w[q]);
                        if d.has_edge(y, first) || d.has_edge(last, y) {
                            return false;
                        }
                        let extra = if first == last { 2 } else { 1 };
                        if d.degree(y) + 2 > cap || d.degree(first) + extra > cap || d.degree(last) + extra > cap {
                            return false;
                        }
                        d.add_edge(y, first).unwrap();
                        d.add_edge(last, y).unwrap();
                        true
                    });
                    if !blocked {
                        return None;
                    }
                }
            }
        }
        for _ in 0..n * n {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let same = classes.iter().any(|c| c.contains(&u) && c.contains(&v));
            if !same && !d.has_edge(u, v) && d.degree(u) < cap && d.degree(v) < cap {
                d.add_edge(u, v).unwrap();
            }
        }
        Some((d, classes))
    }

    #[test]
    fn second_configuration_repairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut used_b = 0;
        for _ in 0..100_000 {
            use rand::Rng;
            let k = rng.gen_range(3..=8);
            let s = rng.gen_range(2..=4);
            let a = rng.gen_range(1..k);
            let Some((d, classes)) = blocked_state(k, s, a, &mut rng) else { continue };
            let f = Coloring::classify(&d, classes.iter().cloned().map(VertexSet::from_unsorted).collect());
            if f.status() != ColoringStatus::Useful {
                continue;
            }
            let mut stats = EngineStats::default();
            let mut r = Repairer {
                g: &d,
                check: true,
                prefer_b: true,
                stats: &mut stats,
                depth_limit: k,
            };
            let fixed = r
                .repair(classes, f.small_index().unwrap(), f.large_index().unwrap(), 0)
                .unwrap();
            let out = Coloring::classify(&d, fixed.into_iter().map(VertexSet::from_unsorted).collect());
            assert!(out.is_good());
            used_b += stats.config_b;
        }
        assert!(used_b > 0);
    }
}
