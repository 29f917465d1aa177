//! Plain-text formats for graphs, colorings, factors and tilings.
//!
//! All formats are line based, ASCII decimal, 0-indexed. Lines starting with
//! `#` are comments. Outside coloring bodies blank lines are skipped; inside
//! a coloring body a blank line is an empty class.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::coloring::{Coloring, ColoringStatus};
use crate::error::{Error, Result};
use crate::graph::{Digraph, StandardMultigraph, VertexSet};

/// Which acceptability conditions a tile satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TileTag {
    Fit,
    Near,
    Both,
}

impl TileTag {
    pub fn from_flags(fit: bool, near: bool) -> Option<TileTag> {
        match (fit, near) {
            (true, true) => Some(TileTag::Both),
            (true, false) => Some(TileTag::Fit),
            (false, true) => Some(TileTag::Near),
            (false, false) => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TileTag::Fit => "fit",
            TileTag::Near => "near",
            TileTag::Both => "both",
        }
    }
}

impl FromStr for TileTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fit" => Ok(TileTag::Fit),
            "near" => Ok(TileTag::Near),
            "both" => Ok(TileTag::Both),
            other => Err(Error::InvalidParameter(format!("unknown tile tag `{other}`"))),
        }
    }
}

/// A factor as stored on disk: each tile in its certified order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorRecord {
    pub s: usize,
    pub tiles: Vec<Vec<usize>>,
}

/// A tiling as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingRecord {
    pub s: usize,
    pub tiles: Vec<(Vec<usize>, TileTag)>,
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
}

fn parse_usizes(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|_| Error::parse(line, format!("expected a non-negative integer, got `{tok}`"))))
        .collect()
}

fn parse_fields<const N: usize>(line: usize, text: &str) -> Result<[usize; N]> {
    let values = parse_usizes(line, text)?;
    values
        .try_into()
        .map_err(|v: Vec<usize>| Error::parse(line, format!("expected {N} fields, got {}", v.len())))
}

/// Header and the remaining non-blank lines.
fn header_and_records(text: &str) -> Result<((usize, &str), Vec<(usize, &str)>)> {
    let mut lines = content_lines(text).filter(|(_, l)| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    Ok((header, lines.collect()))
}

fn check_vertex(line: usize, v: usize, n: usize) -> Result<()> {
    if v >= n {
        return Err(Error::parse(line, format!("vertex {v} out of range for n = {n}")));
    }
    Ok(())
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let ((hl, header), records) = header_and_records(text)?;
    let [n, m] = parse_fields::<2>(hl, header)?;
    if records.len() != m {
        return Err(Error::parse(hl, format!("header declares {m} edges, found {}", records.len())));
    }
    let mut d = Digraph::new(n);
    for (line, text) in records {
        let [u, v] = parse_fields::<2>(line, text)?;
        check_vertex(line, u, n)?;
        check_vertex(line, v, n)?;
        if u == v {
            return Err(Error::parse(line, format!("loop at vertex {u}")));
        }
        if !d.add_edge(u, v)? {
            return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
        }
    }
    Ok(d)
}

pub fn format_digraph(d: &Digraph, comment: Option<&str>) -> String {
    let mut out = String::new();
    push_comment(&mut out, comment);
    let _ = writeln!(out, "{} {}", d.n(), d.edge_count());
    for (u, v) in d.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_multigraph(text: &str) -> Result<StandardMultigraph> {
    let ((hl, header), records) = header_and_records(text)?;
    let [n, m] = parse_fields::<2>(hl, header)?;
    if records.len() != m {
        return Err(Error::parse(hl, format!("header declares {m} edges, found {}", records.len())));
    }
    let mut g = StandardMultigraph::new(n);
    for (line, text) in records {
        let [u, v, c] = parse_fields::<3>(line, text)?;
        check_vertex(line, u, n)?;
        check_vertex(line, v, n)?;
        if u == v {
            return Err(Error::parse(line, format!("loop at vertex {u}")));
        }
        if !(1..=2).contains(&c) {
            return Err(Error::parse(line, format!("multiplicity {c} not in {{1,2}}")));
        }
        if g.multiplicity(u, v) != 0 {
            return Err(Error::parse(line, format!("duplicate pair {u} {v}")));
        }
        g.set_multiplicity(u, v, c as u8)?;
    }
    Ok(g)
}

pub fn format_multigraph(g: &StandardMultigraph, comment: Option<&str>) -> String {
    let mut out = String::new();
    push_comment(&mut out, comment);
    let _ = writeln!(out, "{} {}", g.n(), g.pair_count());
    for (u, v, c) in g.edges() {
        let _ = writeln!(out, "{u} {v} {c}");
    }
    out
}

/// Parses a coloring. The status is taken from the file as written; run
/// [`Coloring::classify`] against the graph to certify it.
pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut lines = content_lines(text).skip_while(|(_, l)| l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let mut fields = header.split_whitespace();
    let k = fields
        .next()
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| Error::parse(hl, "expected `k status`"))?;
    let status = fields
        .next()
        .ok_or_else(|| Error::parse(hl, "missing status"))?
        .parse::<ColoringStatus>()
        .map_err(|e| Error::parse(hl, e.to_string()))?;
    if fields.next().is_some() {
        return Err(Error::parse(hl, "trailing fields in header"));
    }
    let body: Vec<(usize, &str)> = lines.collect();
    // Trailing blank lines past the k-th class are padding, not classes.
    let extra = &body[k.min(body.len())..];
    if body.len() < k {
        return Err(Error::parse(hl, format!("header declares {k} classes, found {}", body.len())));
    }
    if let Some((line, _)) = extra.iter().find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::parse(*line, format!("more than {k} classes")));
    }
    let mut classes = Vec::with_capacity(k);
    for &(line, text) in &body[..k] {
        let mut vertices = parse_usizes(line, text)?;
        let len = vertices.len();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != len {
            return Err(Error::parse(line, "repeated vertex in class"));
        }
        classes.push(VertexSet::from_sorted(vertices)?);
    }
    Ok(Coloring::from_parts(classes, status))
}

pub fn format_coloring(f: &Coloring) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", f.k(), f.status());
    for c in f.classes() {
        push_list(&mut out, c.as_slice());
    }
    out
}

pub fn parse_factor(text: &str) -> Result<FactorRecord> {
    let ((hl, header), records) = header_and_records(text)?;
    let [k, s] = parse_fields::<2>(hl, header)?;
    if records.len() != k {
        return Err(Error::parse(hl, format!("header declares {k} tiles, found {}", records.len())));
    }
    let mut tiles = Vec::with_capacity(k);
    for (line, text) in records {
        let tile = parse_usizes(line, text)?;
        if tile.len() != s {
            return Err(Error::parse(line, format!("tile has {} vertices, expected {s}", tile.len())));
        }
        tiles.push(tile);
    }
    Ok(FactorRecord { s, tiles })
}

pub fn format_factor(factor: &FactorRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", factor.tiles.len(), factor.s);
    for t in &factor.tiles {
        push_list(&mut out, t);
    }
    out
}

pub fn parse_tiling(text: &str) -> Result<TilingRecord> {
    let ((hl, header), records) = header_and_records(text)?;
    let [count, s] = parse_fields::<2>(hl, header)?;
    if records.len() != count {
        return Err(Error::parse(hl, format!("header declares {count} tiles, found {}", records.len())));
    }
    let mut tiles = Vec::with_capacity(count);
    for (line, text) in records {
        let (body, tag) = text
            .trim_end()
            .rsplit_once(char::is_whitespace)
            .ok_or_else(|| Error::parse(line, "expected vertices followed by a tag"))?;
        let tag = tag.parse::<TileTag>().map_err(|e| Error::parse(line, e.to_string()))?;
        tiles.push((parse_usizes(line, body)?, tag));
    }
    Ok(TilingRecord { s, tiles })
}

pub fn format_tiling(tiling: &TilingRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", tiling.tiles.len(), tiling.s);
    for (t, tag) in &tiling.tiles {
        for v in t {
            let _ = write!(out, "{v} ");
        }
        let _ = writeln!(out, "{}", tag.as_str());
    }
    out
}

fn push_comment(out: &mut String, comment: Option<&str>) {
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
}

fn push_list(out: &mut String, vertices: &[usize]) {
    let mut first = true;
    for v in vertices {
        if !first {
            out.push(' ');
        }
        first = false;
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

pub fn read_digraph(path: impl AsRef<Path>) -> Result<Digraph> {
    parse_digraph(&fs::read_to_string(path)?)
}

pub fn read_multigraph(path: impl AsRef<Path>) -> Result<StandardMultigraph> {
    parse_multigraph(&fs::read_to_string(path)?)
}
