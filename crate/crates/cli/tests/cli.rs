use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn eqtile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqtile"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TRIANGLE: &str = "3 3\n0 1\n1 2\n2 0\n";
const K2_3: &str = "3 6\n0 1\n1 0\n1 2\n2 1\n0 2\n2 0\n";

#[test]
fn directed_triangle_gets_a_good_two_coloring() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tri.dg", TRIANGLE);
    let out = eqtile(&["color", "--k", "2", s(&g)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("2 good\n"));
    let f = eqtile::io::parse_coloring(&text).unwrap();
    let mut sizes: Vec<usize> = f.classes().iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [1, 2]);
}

#[test]
fn double_triangle_is_rejected_then_searched() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k2_3.dg", K2_3);
    let strict = eqtile(&["color", "--k", "2", s(&g)]);
    assert_eq!(code(&strict), 2);
    let loose = eqtile(&["color", "--best-effort", "--k", "2", s(&g)]);
    assert_eq!(code(&loose), 2);
    assert!(stderr(&loose).contains("no good coloring"));
    let oracle = eqtile(&["oracle", "coloring", "--k", "2", s(&g)]);
    assert_eq!(code(&oracle), 2);
    assert_eq!(stdout(&oracle).trim(), "none");
}

#[test]
fn io_and_parse_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.dg");
    assert_eq!(code(&eqtile(&["color", "--k", "2", s(&missing)])), 1);
    let bad = write(&dir, "bad.dg", "3 1\n0 x\n");
    let out = eqtile(&["color", "--k", "2", s(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn hs_extremal_generator_writes_header_and_graph() {
    let out = eqtile(&["generate", "hs-extremal", "--s", "3", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with('#'));
    let d = eqtile::io::parse_digraph(&text).unwrap();
    assert_eq!(d.n(), 6);
    assert_eq!(d.min_degree(), 6);
}

#[test]
fn universality_queries() {
    let out = eqtile(&["oracle", "universal", "--s", "3", "--light-edges", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "true");
    let out = eqtile(&["oracle", "universal", "--s", "3", "--light-edges", "3"]);
    assert_eq!(stdout(&out).trim(), "false");
    let out = eqtile(&["oracle", "universal", "--s", "4"]);
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn verify_accepts_engine_output_and_rejects_tampering() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.dg");
    let col = dir.path().join("c.txt");
    let gen = eqtile(&[
        "generate", "bounded", "--n", "40", "--max-degree", "9", "--seed", "5", "-o", s(&g),
    ]);
    assert_eq!(code(&gen), 0);
    assert_eq!(code(&eqtile(&["color", "--k", "5", s(&g), "-o", s(&col)])), 0);
    let ok = eqtile(&["verify", s(&g), s(&col)]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));

    // move one vertex between classes: sizes become unequal
    let text = fs::read_to_string(&col).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let mut first: Vec<&str> = lines[1].split_whitespace().collect();
    let moved = first.pop().unwrap().to_string();
    lines[1] = first.join(" ");
    lines[2] = format!("{} {moved}", lines[2]);
    let bad = write(&dir, "bad.txt", &(lines.join("\n") + "\n"));
    let out = eqtile(&["verify", s(&g), s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).starts_with("invalid"));
}

#[test]
fn factor_round_trip_and_verify() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("d.dg");
    let f = dir.path().join("f.txt");
    assert_eq!(
        code(&eqtile(&["generate", "dense", "--n", "12", "--min-degree", "17", "--seed", "2", "-o", s(&g)])),
        0
    );
    assert_eq!(code(&eqtile(&["factor", "--s", "3", s(&g), "-o", s(&f)])), 0);
    let text = fs::read_to_string(&f).unwrap();
    let record = eqtile::io::parse_factor(&text).unwrap();
    assert_eq!(eqtile::io::format_factor(&record), text);
    assert_eq!(code(&eqtile(&["verify", s(&g), s(&f)])), 0);

    // reversing a tile breaks its order
    let mut tiles = record.tiles.clone();
    tiles[0].reverse();
    let bad = write(
        &dir,
        "bad.txt",
        &eqtile::io::format_factor(&eqtile::io::FactorRecord { s: 3, tiles }),
    );
    assert_eq!(code(&eqtile(&["verify", s(&g), s(&bad)])), 2);
}

#[test]
fn sparse_factor_input_is_a_precondition_failure() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "empty.dg", "6 0\n");
    assert_eq!(code(&eqtile(&["factor", "--s", "3", s(&g)])), 2);
}

#[test]
fn planted_tiling_round_trip_and_verify() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("p.mg");
    let t = dir.path().join("t.txt");
    assert_eq!(
        code(&eqtile(&["generate", "planted", "--n", "45", "--s", "3", "--seed", "9", "-o", s(&g)])),
        0
    );
    let out = eqtile(&["tile", "--s", "3", "--seed", "4", s(&g), "-o", s(&t)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&t).unwrap();
    assert_eq!(eqtile::io::format_tiling(&eqtile::io::parse_tiling(&text).unwrap()), text);
    assert_eq!(code(&eqtile(&["verify", s(&g), s(&t)])), 0);

    let lying = text.replacen("both", "near", 1).replacen("fit\n", "both\n", 1);
    if lying != text {
        let bad = write(&dir, "bad.txt", &lying);
        assert_eq!(code(&eqtile(&["verify", s(&g), s(&bad)])), 2);
    }
}

#[test]
fn tile_rejects_bad_parameters() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k.mg", "4 0\n");
    assert_eq!(code(&eqtile(&["tile", "--s", "3", s(&g)])), 2);
    assert_eq!(code(&eqtile(&["tile", "--s", "2", "--beta", "0.5", s(&g)])), 2);
}

#[test]
fn generated_files_parse_back_identically() {
    for args in [
        vec!["generate", "wang", "--k", "3"],
        vec!["generate", "strong2", "--p", "1"],
        vec!["generate", "dense", "--n", "10", "--min-degree", "12"],
    ] {
        let text = stdout(&eqtile(&args));
        let d = eqtile::io::parse_digraph(&text).unwrap();
        let again = eqtile::io::format_digraph(&d, None);
        assert_eq!(eqtile::io::parse_digraph(&again).unwrap(), d);
        let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert_eq!(again, body);
    }
}

#[test]
fn oracle_factor_and_tiling_queries() {
    let dir = TempDir::new().unwrap();
    let wang = dir.path().join("wang.dg");
    assert_eq!(code(&eqtile(&["generate", "wang", "--k", "1", "-o", s(&wang)])), 0);
    let out = eqtile(&["oracle", "factor", "--s", "3", "--tiles", "cyclic", s(&wang)]);
    assert_eq!(stdout(&out).trim(), "none");
    let k6 = write(&dir, "k6.mg", &eqtile::io::format_multigraph(&eqtile::graph::StandardMultigraph::complete(6), None));
    let out = eqtile(&["oracle", "tiling", "--s", "3", s(&k6)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("found"));
}
