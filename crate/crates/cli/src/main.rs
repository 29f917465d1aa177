use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eqtile::coloring::{equitable_acyclic_coloring_with, EngineOptions};
use eqtile::extremal::{self, random};
use eqtile::factor::transitive_factor_with;
use eqtile::graph::StandardMultigraph;
use eqtile::io;
use eqtile::oracle::{self, CliquePredicate, OracleBudget, TilePredicate};
use eqtile::tiler::{full_tiling, TilerParams};
use eqtile::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod verify;

#[derive(Parser)]
#[command(name = "eqtile", version, about = "Equitable acyclic colorings, transitive factors and clique tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Equitable acyclic k-coloring of a digraph.
    Color {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Run even when the maximum degree exceeds 2k-1.
        #[arg(long)]
        best_effort: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Transitive tournament factor with tiles of order s.
    Factor {
        input: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        best_effort: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Perfect tiling of a standard multigraph by acceptable s-cliques.
    Tile {
        input: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 20)]
        max_retries: usize,
        /// Run even when the minimum degree is below the threshold.
        #[arg(long)]
        best_effort: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Write a named instance in digraph or multigraph format.
    Generate {
        #[command(subcommand)]
        instance: Instance,
    },
    /// Exhaustive answers for small instances.
    Oracle {
        #[command(subcommand)]
        query: Query,
    },
    /// Re-check a coloring, factor or tiling against its graph. Exit 0 iff valid.
    Verify { graph: PathBuf, artifact: PathBuf },
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Instance {
    /// Complete digraph on sk vertices minus both directions inside the last k+1.
    HsExtremal {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Complete digraph on 3k vertices minus all edges from X to Y (k odd).
    Wang {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// The wang instance with k = 2p+1, edges at the last vertex of Y reversed.
    Strong2 {
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Random digraph with maximum total degree at most the given bound.
    Bounded {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Random digraph with minimum total degree at least the given bound.
    Dense {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        min_degree: usize,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Standard multigraph with a planted acceptable tiling.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TileKind {
    Transitive,
    Cyclic,
    Any,
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliqueKind {
    Full,
    Fit,
    Near,
    Acceptable,
    Universal,
}

#[derive(Subcommand)]
enum Query {
    /// Does the digraph have an equitable acyclic k-coloring?
    Coloring {
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Does the digraph have a factor whose tiles satisfy the predicate?
    Factor {
        input: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = TileKind::Transitive)]
        tiles: TileKind,
        /// Cyclic triangles in a mixed factor.
        #[arg(long, default_value_t = 0)]
        cyclic: usize,
        /// Transitive triangles in a mixed factor.
        #[arg(long, default_value_t = 0)]
        transitive: usize,
    },
    /// Is the full clique universal? Give a multigraph file, or s and a
    /// number of light pairs taken in lexicographic order.
    Universal {
        input: Option<PathBuf>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = 0)]
        light_edges: usize,
    },
    /// Does the multigraph have a perfect tiling by s-cliques of the given kind?
    Tiling {
        input: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = CliqueKind::Acceptable)]
        kind: CliqueKind,
    },
}

/// Exit codes: 0 success, 1 I/O or parse error, 2 rejected input or no
/// solution, 3 internal invariant violated.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Parse { .. } | Error::VertexOutOfRange { .. } => 1,
        Error::InvariantViolation(_) | Error::StalePath(_) => 3,
        _ => 2,
    }
}

fn emit(out: &Output, text: &str) -> Result<(), Error> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Color {
            input,
            k,
            best_effort,
            seed,
            out,
        } => {
            let d = io::read_digraph(&input)?;
            let opts = EngineOptions {
                strict: !best_effort,
                seed,
                ..EngineOptions::default()
            };
            let (f, _) = equitable_acyclic_coloring_with(&d, k, &opts)?;
            emit(&out, &io::format_coloring(&f))?;
            Ok(0)
        }
        Command::Factor {
            input,
            s,
            best_effort,
            seed,
            out,
        } => {
            let d = io::read_digraph(&input)?;
            let opts = EngineOptions {
                strict: !best_effort,
                seed,
                ..EngineOptions::default()
            };
            let factor = transitive_factor_with(&d, s, &opts)?;
            emit(&out, &io::format_factor(&factor.to_record()))?;
            Ok(0)
        }
        Command::Tile {
            input,
            s,
            epsilon,
            seed,
            beta,
            gamma,
            max_retries,
            best_effort,
            out,
        } => {
            let m = io::read_multigraph(&input)?;
            let defaults = TilerParams::new(s);
            let params = TilerParams {
                epsilon,
                seed,
                beta: beta.unwrap_or(defaults.beta),
                gamma: gamma.unwrap_or(defaults.gamma),
                max_retries,
                strict: !best_effort,
                ..defaults
            };
            let (tiling, stats) = full_tiling(&m, &params)?;
            eprintln!(
                "tiled in {} attempt(s); absorbing family of {}, {} leftover vertices absorbed",
                stats.attempts, stats.family_size, stats.almost_leftover
            );
            emit(&out, &io::format_tiling(&tiling.to_record(&m)?))?;
            Ok(0)
        }
        Command::Generate { instance } => generate(instance),
        Command::Oracle { query } => run_oracle(query),
        Command::Verify { graph, artifact } => match verify::verify_files(&graph, &artifact)? {
            Ok(summary) => {
                println!("valid: {summary}");
                Ok(0)
            }
            Err(reason) => {
                println!("invalid: {reason}");
                Ok(2)
            }
        },
    }
}

fn generate(instance: Instance) -> Result<u8, Error> {
    let (text, out) = match instance {
        Instance::HsExtremal { s, k, out } => {
            let d = extremal::hs_extremal(s, k)?;
            let header = format!("hs-extremal s={s} k={k}\nmin degree {}", d.min_degree());
            (io::format_digraph(&d, Some(&header)), out)
        }
        Instance::Wang { k, out } => {
            let d = extremal::wang_extremal(k)?;
            let header = format!("wang k={k}\nmin degree {}", d.min_degree());
            (io::format_digraph(&d, Some(&header)), out)
        }
        Instance::Strong2 { p, out } => {
            let d = extremal::strong2_extremal(p)?;
            let header = format!("strong2 p={p}\nmin degree {}", d.min_degree());
            (io::format_digraph(&d, Some(&header)), out)
        }
        Instance::Bounded {
            n,
            max_degree,
            density,
            seed,
            out,
        } => {
            let d = random::bounded_digraph(n, max_degree, density, &mut ChaCha8Rng::seed_from_u64(seed));
            let header = format!("bounded n={n} max_degree={max_degree} density={density} seed={seed}");
            (io::format_digraph(&d, Some(&header)), out)
        }
        Instance::Dense {
            n,
            min_degree,
            density,
            seed,
            out,
        } => {
            let d = random::dense_digraph(n, min_degree, density, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let header = format!("dense n={n} min_degree={min_degree} density={density} seed={seed}");
            (io::format_digraph(&d, Some(&header)), out)
        }
        Instance::Planted {
            n,
            s,
            epsilon,
            seed,
            out,
        } => {
            let (m, _) = random::planted_multigraph(n, s, epsilon, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let header = format!("planted n={n} s={s} epsilon={epsilon} seed={seed}");
            (io::format_multigraph(&m, Some(&header)), out)
        }
    };
    emit(&out, &text)?;
    Ok(0)
}

fn answer(found: bool, detail: &str) -> u8 {
    if found {
        println!("found");
        print!("{detail}");
        0
    } else {
        println!("none");
        2
    }
}

fn run_oracle(query: Query) -> Result<u8, Error> {
    let budget = OracleBudget::default();
    match query {
        Query::Coloring { input, k } => {
            let d = io::read_digraph(&input)?;
            let found = oracle::oracle_equitable_acyclic(&d, k, &budget)?;
            let text = found.as_ref().map(io::format_coloring).unwrap_or_default();
            Ok(answer(found.is_some(), &text))
        }
        Query::Factor {
            input,
            s,
            tiles,
            cyclic,
            transitive,
        } => {
            let d = io::read_digraph(&input)?;
            let predicate = match tiles {
                TileKind::Transitive => TilePredicate::Transitive,
                TileKind::Cyclic => TilePredicate::CyclicTriangle,
                TileKind::Any => TilePredicate::AnyTournament,
                TileKind::Mixed => TilePredicate::Mixed { cyclic, transitive },
            };
            let found = oracle::oracle_factor(&d, s, predicate, &budget)?;
            Ok(answer(found.is_some(), &list_tiles(found.as_deref())))
        }
        Query::Universal { input, s, light_edges } => {
            let k = match (input, s) {
                (Some(path), _) => io::read_multigraph(path)?,
                (None, Some(s)) => clique_with_light_pairs(s, light_edges)?,
                (None, None) => return Err(Error::InvalidParameter("give a multigraph file or --s".into())),
            };
            let universal = oracle::is_universal_clique(&k)?;
            println!("{universal}");
            Ok(0)
        }
        Query::Tiling { input, s, kind } => {
            let m = io::read_multigraph(&input)?;
            let predicate = match kind {
                CliqueKind::Full => CliquePredicate::Full,
                CliqueKind::Fit => CliquePredicate::Fit,
                CliqueKind::Near => CliquePredicate::NearMatching,
                CliqueKind::Acceptable => CliquePredicate::Acceptable,
                CliqueKind::Universal => CliquePredicate::Universal,
            };
            let found = oracle::oracle_multigraph_tiling(&m, s, predicate, &budget)?;
            Ok(answer(found.is_some(), &list_tiles(found.as_deref())))
        }
    }
}

fn list_tiles(tiles: Option<&[Vec<usize>]>) -> String {
    let mut out = String::new();
    for t in tiles.unwrap_or_default() {
        let line: Vec<String> = t.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// `K²ₛ` with the first `light` pairs, in lexicographic order, made light.
fn clique_with_light_pairs(s: usize, light: usize) -> Result<StandardMultigraph, Error> {
    let mut k = StandardMultigraph::complete(s);
    let pairs: Vec<(usize, usize)> = (0..s).flat_map(|u| (u + 1..s).map(move |v| (u, v))).collect();
    if light > pairs.len() {
        return Err(Error::InvalidParameter(format!("{s} vertices have only {} pairs", pairs.len())));
    }
    for &(u, v) in &pairs[..light] {
        k.set_multiplicity(u, v, 1)?;
    }
    Ok(k)
}

