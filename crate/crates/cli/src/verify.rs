//! Independent re-certification of artifacts. Only the file parsers and the
//! raw adjacency accessors of the library are used here.

use std::fs;
use std::path::Path;

use eqtile::graph::{Digraph, StandardMultigraph};
use eqtile::io::{self, TileTag};
use eqtile::Error;

#[derive(Debug, PartialEq, Eq)]
enum Kind {
    Coloring,
    Factor,
    Tiling,
}

fn detect(text: &str) -> Kind {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().unwrap_or("");
    if header.split_whitespace().nth(1).is_some_and(|t| t.parse::<usize>().is_err()) {
        return Kind::Coloring;
    }
    let tagged = lines
        .next()
        .and_then(|l| l.split_whitespace().last())
        .is_some_and(|t| t.parse::<usize>().is_err());
    if tagged {
        Kind::Tiling
    } else {
        Kind::Factor
    }
}

/// `Ok(Ok(summary))` if valid, `Ok(Err(reason))` if the artifact parses but
/// fails a check.
pub fn verify_files(graph: &Path, artifact: &Path) -> Result<Result<String, String>, Error> {
    let text = fs::read_to_string(artifact)?;
    match detect(&text) {
        Kind::Coloring => {
            let d = io::read_digraph(graph)?;
            let f = io::parse_coloring(&text)?;
            let classes: Vec<Vec<usize>> = f.classes().iter().map(|c| c.as_slice().to_vec()).collect();
            Ok(check_coloring(&d, &classes, f.status().as_str()))
        }
        Kind::Factor => {
            let d = io::read_digraph(graph)?;
            let r = io::parse_factor(&text)?;
            Ok(check_factor(&d, r.s, &r.tiles))
        }
        Kind::Tiling => {
            let m = io::read_multigraph(graph)?;
            let r = io::parse_tiling(&text)?;
            Ok(check_tiling(&m, r.s, &r.tiles))
        }
    }
}

fn check_partition(n: usize, parts: &[Vec<usize>]) -> Result<(), String> {
    let mut seen = vec![false; n];
    for p in parts {
        for &v in p {
            if v >= n {
                return Err(format!("vertex {v} out of range"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} appears twice"));
            }
        }
    }
    match seen.iter().position(|&b| !b) {
        Some(v) => Err(format!("vertex {v} is missing")),
        None => Ok(()),
    }
}

/// Repeatedly strips vertices with no in-edge from inside the set.
fn acyclic(d: &Digraph, set: &[usize]) -> bool {
    let mut rest = set.to_vec();
    while !rest.is_empty() {
        let Some(i) = rest.iter().position(|&v| rest.iter().all(|&u| !d.has_edge(u, v))) else {
            return false;
        };
        rest.swap_remove(i);
    }
    true
}

fn check_coloring(d: &Digraph, classes: &[Vec<usize>], status: &str) -> Result<String, String> {
    check_partition(d.n(), classes)?;
    if status != "good" {
        return Err(format!("declared status `{status}`, not good"));
    }
    let min = classes.iter().map(Vec::len).min().unwrap_or(0);
    let max = classes.iter().map(Vec::len).max().unwrap_or(0);
    if max > min + 1 {
        return Err(format!("class sizes range from {min} to {max}"));
    }
    if let Some(i) = classes.iter().position(|c| !acyclic(d, c)) {
        return Err(format!("class {i} contains a cycle"));
    }
    Ok(format!("good {}-coloring of {} vertices", classes.len(), d.n()))
}

fn check_factor(d: &Digraph, s: usize, tiles: &[Vec<usize>]) -> Result<String, String> {
    check_partition(d.n(), tiles)?;
    for t in tiles {
        if t.len() != s {
            return Err(format!("tile {t:?} has {} vertices", t.len()));
        }
        for i in 0..s {
            for j in i + 1..s {
                if !d.has_edge(t[i], t[j]) {
                    return Err(format!("tile {t:?} is missing the edge {} -> {}", t[i], t[j]));
                }
            }
        }
    }
    Ok(format!("transitive {s}-factor with {} tiles", tiles.len()))
}

fn check_tiling(m: &StandardMultigraph, s: usize, tiles: &[(Vec<usize>, TileTag)]) -> Result<String, String> {
    let sets: Vec<Vec<usize>> = tiles.iter().map(|(t, _)| t.clone()).collect();
    check_partition(m.n(), &sets)?;
    for (t, tag) in tiles {
        if t.len() != s {
            return Err(format!("tile {t:?} has {} vertices", t.len()));
        }
        let mut light_deg = vec![0usize; s];
        let mut light_pairs = Vec::new();
        for i in 0..s {
            for j in i + 1..s {
                match m.multiplicity(t[i], t[j]) {
                    0 => return Err(format!("tile {t:?} is not a clique")),
                    1 => {
                        light_deg[i] += 1;
                        light_deg[j] += 1;
                        light_pairs.push((i, j));
                    }
                    _ => {}
                }
            }
        }
        let forest = is_forest(s, &light_pairs);
        let fit = forest && 2 * light_pairs.len() + s <= 2 * s;
        let deg2 = light_deg.iter().filter(|&&x| x == 2).count();
        let near = light_deg.iter().all(|&x| x <= 1) || (light_deg.iter().all(|&x| x <= 2) && deg2 <= 1);
        let ok = match tag {
            TileTag::Fit => fit && !near,
            TileTag::Near => near && !fit,
            TileTag::Both => fit && near,
        };
        if !ok {
            return Err(format!(
                "tile {t:?} tagged {} but fit = {fit}, near matching = {near}",
                tag.as_str()
            ));
        }
    }
    Ok(format!("perfect {s}-clique tiling with {} tiles", tiles.len()))
}

fn is_forest(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}
