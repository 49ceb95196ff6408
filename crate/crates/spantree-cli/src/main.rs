//! Batch command-line front-end: spanning-tree counts, enumerator
//! factorization, distance-hereditary recognition, graph composition,
//! family generators, Ehrenborg conjecture checks, and the self-test suite.
//!
//! Graphs are read from a file or standard input in the canonical text
//! format (`n m` header, then one `u v` line per edge); `--json` switches
//! to the structured form with explicit vertex ids. Exit codes: 1 for bad
//! input, 2 when an exactness envelope is exceeded, 3 on an internal
//! invariant failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use spantree::ehrenborg::{self, SearchParams};
use spantree::enumerator;
use spantree::families;
use spantree::graph::{Graph, GraphData, VertexId};
use spantree::linalg;
use spantree::poly::Point;
use spantree::recognition::{self, CographOutcome, DhOutcome};
use spantree::selftest;
use spantree::Error;

#[derive(Parser)]
#[command(name = "spantree", version, about = "Exact spanning-tree enumerators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of spanning trees.
    Count(GraphInput),
    /// Print the vertex-degree spanning enumerator and its all-ones value.
    Enumerate(GraphInput),
    /// Distance-hereditary / cograph / threshold verdicts with certificates.
    Recognize(GraphInput),
    /// Compose two marked graphs and print the composed graph and enumerator.
    Compose {
        /// First graph file (`-` for standard input).
        file1: String,
        /// Marked vertex in the first graph (0-based id).
        v1: u32,
        /// Second graph file.
        file2: String,
        /// Marked vertex in the second graph.
        v2: u32,
        /// Read graphs in the structured JSON form.
        #[arg(long)]
        json: bool,
    },
    /// Emit a generated family graph in the canonical text format.
    Family {
        #[command(subcommand)]
        family: FamilyKind,
    },
    /// Ehrenborg conjecture checks and randomized search.
    Ehrenborg {
        #[command(subcommand)]
        action: EhrenborgAction,
    },
    /// Run the acceptance checks; exits 0 only if every check passes.
    Selftest {
        /// Run a single named check instead of all of them.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Graph file, `-` or absent for standard input.
    file: Option<String>,
    /// Read the structured JSON form instead of the text format.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum FamilyKind {
    Cycle { n: u32 },
    Path { n: u32 },
    Complete { n: u32 },
    CompleteBipartite { a: u32, b: u32 },
    CompleteMultipartite { sizes: Vec<u32> },
    Superprism { n: u32 },
    /// Ferrers-Young graph of a partition (weakly decreasing parts).
    Ferrers { parts: Vec<u32> },
    /// Threshold graph from a creation word over {i, d}, e.g. `iddi`.
    Threshold { word: String },
    /// Inversion graph of a permutation in one-line notation.
    Inversion { one_line: Vec<u32> },
}

#[derive(Subcommand)]
enum EhrenborgAction {
    /// Check the conjecture on one bipartite graph, numerically or at a
    /// rational point.
    Check {
        file: Option<String>,
        #[arg(long)]
        json: bool,
        /// Nonnegative rational point `id=num[/den],...`; switches to the
        /// polynomial form.
        #[arg(long)]
        point: Option<String>,
    },
    /// Randomized numeric sweep over connected bipartite graphs.
    Search {
        #[arg(long, default_value_t = 4)]
        n_min: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        /// Cross-edge probability as a fraction `num/den`.
        #[arg(long, default_value = "1/2")]
        density: String,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print only the top K records by ratio.
        #[arg(long)]
        top: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::EnvelopeExceeded(_) => 2,
                _ => 1,
            })
        }
        Err(_) => {
            eprintln!("error: internal invariant failure");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Count(input) => {
            let g = read_graph(&input)?;
            println!("{}", linalg::tree_count(&g));
        }
        Command::Enumerate(input) => {
            let g = read_graph(&input)?;
            let (e, factored) = enumerator::graph_enumerator(&g)?;
            let tau = e.evaluate(&Point::all_ones(e.vars()))?;
            println!("tau {}", tau.to_integer());
            println!("form {}", if factored { "factored" } else { "expanded" });
            print!("{}", e.to_text());
        }
        Command::Recognize(input) => {
            let g = read_graph(&input)?;
            print!("{}", recognize_report(&g)?);
        }
        Command::Compose { file1, v1, file2, v2, json } => {
            let g1 = read_graph_from(&file1, json)?;
            let g2 = read_graph_from(&file2, json)?;
            print!("{}", compose_report(&g1, VertexId::new(v1), &g2, VertexId::new(v2))?);
        }
        Command::Family { family } => {
            let g = build_family(family)?;
            print!("{}", g.to_text());
        }
        Command::Ehrenborg { action } => run_ehrenborg(action)?,
        Command::Selftest { only } => {
            let outcomes = match only {
                Some(name) => vec![selftest::run_named(&name).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "unknown check `{name}`; known: {}",
                        selftest::CHECK_NAMES.join(", ")
                    ))
                })?],
                None => selftest::run_all(),
            };
            let mut failed = false;
            for o in &outcomes {
                println!("{}", o.line());
                failed |= !o.passed;
            }
            if failed {
                return Err(Error::Unsupported("self-test failed".into()));
            }
        }
    }
    Ok(())
}

fn read_graph(input: &GraphInput) -> Result<Graph, Error> {
    read_graph_from(input.file.as_deref().unwrap_or("-"), input.json)
}

fn read_graph_from(path: &str, json: bool) -> Result<Graph, Error> {
    let raw = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidInput(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("reading {path}: {e}")))?
    };
    if json {
        let data: GraphData = serde_json::from_str(&raw)
            .map_err(|e| Error::InvalidInput(format!("parsing JSON graph: {e}")))?;
        Graph::from_structured(&data)
    } else {
        Graph::parse_text(&raw)
    }
}

fn recognize_report(g: &Graph) -> Result<String, Error> {
    let mut out = String::new();
    writeln!(out, "n {} m {}", g.vertex_count(), g.edge_count()).unwrap();
    match recognition::recognize_dh(g)? {
        DhOutcome::DistanceHereditary(cert) => {
            writeln!(out, "distance-hereditary yes").unwrap();
            out.push_str(&cert.to_text());
        }
        DhOutcome::NotDistanceHereditary { .. } => {
            writeln!(out, "distance-hereditary no").unwrap();
            if g.vertex_count() <= 12 {
                if let Some(w) = recognition::find_forbidden(g)? {
                    writeln!(out, "witness {w}").unwrap();
                }
            }
        }
    }
    match recognition::is_cograph(g) {
        CographOutcome::Cograph(_) => writeln!(out, "cograph yes").unwrap(),
        CographOutcome::NotCograph { p4 } => {
            writeln!(out, "cograph no").unwrap();
            writeln!(out, "p4 {} {} {} {}", p4[0], p4[1], p4[2], p4[3]).unwrap();
        }
    }
    writeln!(out, "threshold {}", if recognition::is_threshold(g) { "yes" } else { "no" })
        .unwrap();
    Ok(out)
}

fn compose_report(g1: &Graph, v1: VertexId, g2: &Graph, v2: VertexId) -> Result<String, Error> {
    let (e1, _) = enumerator::graph_enumerator(g1)?;
    let (e2, _) = enumerator::graph_enumerator(g2)?;
    let (h, _, e) = enumerator::compose_graph_enumerators(g1, v1, &e1, g2, v2, &e2)?;
    // renumber contiguously so the printed graph and enumerator agree
    let relabel: BTreeMap<VertexId, VertexId> = h
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, VertexId::new(i as u32)))
        .collect();
    let data = h.to_structured();
    let vertices: Vec<u32> = data
        .vertices
        .iter()
        .map(|&x| relabel[&VertexId::new(x)].index())
        .collect();
    let edges: Vec<(u32, u32)> = data
        .edges
        .iter()
        .map(|&(a, b)| {
            (relabel[&VertexId::new(a)].index(), relabel[&VertexId::new(b)].index())
        })
        .collect();
    let renumbered = Graph::from_vertices_and_edges(&vertices, &edges)?;
    let e = e.rename(&relabel)?;
    let mut out = renumbered.to_text();
    let tau = e.evaluate(&Point::all_ones(renumbered.vertices()))?;
    writeln!(out, "tau {}", tau.to_integer()).unwrap();
    out.push_str(&e.to_text());
    Ok(out)
}

fn build_family(kind: FamilyKind) -> Result<Graph, Error> {
    match kind {
        FamilyKind::Cycle { n } => families::cycle(n),
        FamilyKind::Path { n } => families::path(n),
        FamilyKind::Complete { n } => families::complete(n),
        FamilyKind::CompleteBipartite { a, b } => families::complete_bipartite(a, b),
        FamilyKind::CompleteMultipartite { sizes } => families::complete_multipartite(&sizes),
        FamilyKind::Superprism { n } => families::superprism(n),
        FamilyKind::Ferrers { parts } => {
            let d = families::FerrersDiagram::new(parts)?;
            Ok(families::ferrers_young(&d).0)
        }
        FamilyKind::Threshold { word } => {
            let creation: Result<Vec<_>, Error> = word
                .chars()
                .map(|c| match c {
                    'i' => Ok(families::ThresholdStep::Isolated),
                    'd' => Ok(families::ThresholdStep::Dominating),
                    other => Err(Error::InvalidInput(format!(
                        "threshold word must use `i` and `d`, found `{other}`"
                    ))),
                })
                .collect();
            families::threshold_graph(&creation?)
        }
        FamilyKind::Inversion { one_line } => {
            let w = families::Permutation::from_one_line(&one_line)?;
            Ok(families::inversion_graph(&w))
        }
    }
}

fn run_ehrenborg(action: EhrenborgAction) -> Result<(), Error> {
    match action {
        EhrenborgAction::Check { file, json, point } => {
            let g = read_graph_from(file.as_deref().unwrap_or("-"), json)?;
            let cert = g
                .bipartition()
                .ok_or_else(|| Error::InvalidInput("graph is not bipartite".into()))?;
            let report = match &point {
                None => ehrenborg::check_numeric(&g, &cert)?,
                Some(spec) => {
                    let p = parse_point(spec)?;
                    ehrenborg::check_polynomial(&g, &cert, &p)?
                }
            };
            println!("form {}", if point.is_some() { "polynomial" } else { "numeric" });
            println!(
                "{:016x} {} {} {} {} {} {}",
                g.content_hash(),
                g.vertex_count(),
                g.edge_count(),
                report.lhs,
                report.rhs,
                report.ratio.map_or("-".to_string(), |r| r.to_string()),
                report.holds
            );
        }
        EhrenborgAction::Search { n_min, n_max, density, trials, seed, top } => {
            let (num, den) = parse_fraction(&density)?;
            let params = SearchParams {
                n_min,
                n_max,
                density_num: num,
                density_den: den,
                trials,
                seed,
            };
            let records = ehrenborg::search_counterexample(&params)?;
            println!("seed {seed}");
            let take = top.unwrap_or(records.len());
            let mut violated = false;
            for r in records.iter().take(take) {
                println!(
                    "{:016x} {} {} {} {} {} {}",
                    r.graph_hash,
                    r.n,
                    r.m,
                    r.report.lhs,
                    r.report.rhs,
                    r.report.ratio.clone().map_or("-".to_string(), |x| x.to_string()),
                    r.report.holds
                );
                violated |= !r.report.holds;
            }
            if violated {
                println!("COUNTEREXAMPLE FOUND");
                return Err(Error::Unsupported("conjecture violated".into()));
            }
        }
    }
    Ok(())
}

fn parse_fraction(s: &str) -> Result<(u32, u32), Error> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: u32 = num
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad fraction `{s}`")))?;
    let den: u32 = den
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad fraction `{s}`")))?;
    if den == 0 {
        return Err(Error::InvalidInput("fraction denominator is zero".into()));
    }
    Ok((num, den))
}

fn parse_point(spec: &str) -> Result<Point, Error> {
    let mut p = Point::new();
    for item in spec.split(',') {
        let (id, value) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("bad point entry `{item}`")))?;
        let id: u32 = id
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad vertex id `{id}`")))?;
        let (num, den) = parse_fraction(value.trim())?;
        p.set(
            VertexId::new(id),
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        );
    }
    if p.values().next().is_none() {
        return Err(Error::InvalidInput("empty point".into()));
    }
    Ok(p)
}
