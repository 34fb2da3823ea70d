//! `crossplane`: command-line front end.
//!
//! Exit codes: 0 on success, 1 when a drawing fails verification, 2 on usage,
//! parse or input errors.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use crossplane::composer::decompose_for_drawing;
use crossplane::decomp::spqr;
use crossplane::graph::{biconnected_components, EdgeId, Graph, VertexPair};
use crossplane::io::{drawing_from_json, drawing_to_json, parse_edge_list, parse_pairs, render_svg, DocumentError, SvgOptions};
use crossplane::pipeline::{approx_crossing_number, draw, lower_bound, verify, ApproxConfig, DrawResult, PipelineError};
use crossplane::planarizer::{planarize, CutStrategy, PlanarizeConfig};
use serde_json::json;

/// Environment variable that overrides `--seed`.
const SEED_VAR: &str = "CROSSPLANE_SEED";

#[derive(Parser, Debug)]
#[command(name = "crossplane", version, about = "Crossing-number approximation via planarizing sets and edge insertion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct PlanarizeArgs {
    /// Balanced-cut strategy: bfs-levels, fm-local or spectral-lite.
    #[arg(long, default_value = "bfs-levels")]
    strategy: CutStrategy,
    /// Balance ratio of the cuts, strictly between 0 and 1.
    #[arg(long, default_value_t = 2.0 / 3.0)]
    alpha: f64,
    /// Pieces needing at most this many removals are finished greedily.
    #[arg(long, default_value_t = 8)]
    threshold: usize,
    /// Random seed (overridden by CROSSPLANE_SEED).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the pass that offers removed edges back.
    #[arg(long)]
    no_readd: bool,
}

impl PlanarizeArgs {
    fn config(&self) -> Result<PlanarizeConfig> {
        let seed = match std::env::var(SEED_VAR) {
            Ok(s) => s.trim().parse().with_context(|| format!("{SEED_VAR}={s} is not an unsigned integer"))?,
            Err(_) => self.seed,
        };
        Ok(PlanarizeConfig { strategy: self.strategy, alpha: self.alpha, threshold: self.threshold, seed, readd: !self.no_readd })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a planarizing edge set E'.
    Planarize {
        input: PathBuf,
        #[command(flatten)]
        opts: PlanarizeArgs,
        /// Write E' as an edge list here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the JSON log here instead of stderr.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Draw a graph, inserting a given (or computed) planarizing set.
    Draw {
        input: PathBuf,
        /// Edge list of E* (pairs of input vertex ids); planarized if absent.
        #[arg(long)]
        estar: Option<PathBuf>,
        #[command(flatten)]
        opts: PlanarizeArgs,
        /// Write the drawing document here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the diagnostics as JSON here.
        #[arg(long)]
        diagnostics: Option<PathBuf>,
    },
    /// Planarize, draw, and report the crossing count with a lower bound.
    Approx {
        input: PathBuf,
        #[command(flatten)]
        opts: PlanarizeArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        diagnostics: Option<PathBuf>,
    },
    /// Check a drawing document against a graph.
    Verify { input: PathBuf, drawing: PathBuf },
    /// Print the SPQR tree of each 2-connected component.
    Spqr { input: PathBuf },
    /// Statistics of a drawing and the piece decomposition of its graph.
    Stats { input: PathBuf, drawing: PathBuf },
    /// Render a drawing document as SVG.
    Svg {
        drawing: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        #[arg(long, default_value_t = 800.0)]
        height: f64,
        /// Omit vertex labels.
        #[arg(long)]
        no_labels: bool,
    },
}

/// A run that completed but whose drawing failed verification.
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

/// Writes to stdout; a reader that went away early is not an error.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// An input graph with the original id of each (dense) vertex.
struct Input {
    graph: Graph,
    ids: Vec<u64>,
}

impl Input {
    fn dense(&self, raw: u64) -> Option<usize> {
        self.ids.binary_search(&raw).ok()
    }
}

fn read_graph(path: &Path) -> Result<Input> {
    let text = read_text(path)?;
    let graph = parse_edge_list(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    let (ids, _) = parse_pairs(&text)?;
    Ok(Input { graph, ids: ids.into_iter().collect() })
}

/// Matches each listed pair (original ids) to a distinct edge of the graph
/// with those ends, lowest id first.
fn read_star(input: &Input, path: &Path) -> Result<BTreeSet<EdgeId>> {
    let (_, pairs) = parse_pairs(&read_text(path)?).with_context(|| format!("cannot parse {}", path.display()))?;
    let mut star = BTreeSet::new();
    for (u, v) in pairs {
        let missing = || anyhow!("E* lists {u} {v}, which is not an unused edge of the graph");
        let (a, b) = (input.dense(u).ok_or_else(missing)?, input.dense(v).ok_or_else(missing)?);
        let e = input.graph.edges_between(a, b).into_iter().find(|e| !star.contains(e)).ok_or_else(missing)?;
        star.insert(e);
    }
    Ok(star)
}

/// `E'` as an edge list in original ids.
fn star_list(input: &Input, star: &BTreeSet<EdgeId>) -> String {
    let mut out = format!("# {} edges\n", star.len());
    for e in star {
        let e = input.graph.edge(*e).expect("edge of the graph");
        out.push_str(&format!("{} {}\n", input.ids[e.u], input.ids[e.v]));
    }
    out
}

/// Reads a drawing document; malformed JSON is an input error, a document
/// that cannot form a rotation system is a verification failure.
fn read_drawing(path: &Path) -> Result<crossplane::drawing::Drawing> {
    match drawing_from_json(&read_text(path)?) {
        Ok(d) => Ok(d),
        Err(DocumentError::Inconsistent(msg)) => Err(VerificationFailed(msg).into()),
        Err(e) => Err(anyhow::Error::from(e).context(format!("cannot load {}", path.display()))),
    }
}

/// A pipeline result that failed its own certification exits with code 1.
fn checked(r: Result<DrawResult, PipelineError>) -> Result<DrawResult> {
    match r {
        Err(PipelineError::Verification(f)) => Err(VerificationFailed(f.to_string()).into()),
        other => Ok(other?),
    }
}

fn report(g: &Graph, r: &DrawResult, output: Option<&PathBuf>, diagnostics: Option<&PathBuf>) -> Result<()> {
    let lb = r.diagnostics.lower_bound.clone().unwrap_or_else(|| lower_bound(g));
    emit(&format!("crossings: {}\ne_star: {}\nlower bound: {}\n", r.crossings, r.e_star.len(), lb.value))?;
    if let Some(path) = output {
        write_text(path, &drawing_to_json(&r.drawing))?;
    }
    if let Some(path) = diagnostics {
        write_text(path, &serde_json::to_string_pretty(&r.diagnostics)?)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Planarize { input, opts, output, log } => {
            let input = read_graph(&input)?;
            let g = &input.graph;
            let config = opts.config()?;
            let res = planarize(g, &config)?;
            let list = star_list(&input, &res.removed);
            match output {
                Some(path) => write_text(&path, &list)?,
                None => emit(&list)?,
            }
            let doc = json!({
                "config": config,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "removed": res.removed.len(),
                "readded": res.readded,
                "iterations": res.log,
            });
            let text = serde_json::to_string_pretty(&doc)?;
            match log {
                Some(path) => write_text(&path, &text)?,
                None => eprintln!("{text}"),
            }
        }
        Command::Draw { input, estar, opts, output, diagnostics } => {
            let input = read_graph(&input)?;
            let g = &input.graph;
            let star = match estar {
                Some(path) => read_star(&input, &path)?,
                None => planarize(g, &opts.config()?)?.removed,
            };
            let r = checked(draw(g, &star))?;
            report(g, &r, output.as_ref(), diagnostics.as_ref())?;
        }
        Command::Approx { input, opts, output, diagnostics } => {
            let input = read_graph(&input)?;
            let g = &input.graph;
            let r = checked(approx_crossing_number(g, &ApproxConfig { planarize: opts.config()? }))?;
            report(g, &r, output.as_ref(), diagnostics.as_ref())?;
        }
        Command::Verify { input, drawing } => {
            let input = read_graph(&input)?;
            let g = &input.graph;
            let d = read_drawing(&drawing)?;
            let rep = verify(g, &d);
            if let Some(f) = rep.failure {
                return Err(VerificationFailed(f.to_string()).into());
            }
            emit(&format!("ok: {} crossings; checks {}\n", d.crossing_count(), rep.passed.join(", ")))?;
        }
        Command::Spqr { input } => {
            let input = read_graph(&input)?;
            let g = &input.graph;
            let mut out = Vec::new();
            for comp in biconnected_components(g).into_iter().filter(|c| c.graph.vertex_count() >= 3) {
                let tree = spqr(&comp.graph)?;
                let seps: Vec<VertexPair> = tree.two_separators().into_iter().collect();
                out.push(json!({
                    "vertices": comp.graph.vertices().collect::<Vec<_>>(),
                    "nodes": tree.nodes.iter().map(|n| json!({
                        "kind": n.kind,
                        "vertices": n.skeleton.vertices().collect::<Vec<_>>(),
                        "edges": n.actual_edges().map(|e| e.id).collect::<Vec<_>>(),
                        "virtual_edges": n.virtual_edges,
                    })).collect::<Vec<_>>(),
                    "tree_edges": tree.edges,
                    "two_separators": seps,
                }));
            }
            emit(&(serde_json::to_string_pretty(&out)? + "\n"))?;
        }
        Command::Stats { input, drawing } => {
            let input = read_graph(&input)?;
            let g = &input.graph;
            let d = read_drawing(&drawing)?;
            let rep = verify(g, &d);
            let mut pieces = Vec::new();
            for comp in biconnected_components(g).into_iter().filter(|c| c.graph.vertex_count() >= 3 && c.graph.is_simple()) {
                let local: BTreeSet<EdgeId> = d.e_star.iter().copied().filter(|e| comp.graph.contains_edge(*e)).collect();
                pieces.push(match decompose_for_drawing(&comp.graph, &local) {
                    Ok(ps) => json!(ps),
                    Err(e) => json!({ "vertices": comp.graph.vertex_count(), "error": e.to_string() }),
                });
            }
            let pairs: BTreeMap<String, usize> = d.pair_counts().into_iter().map(|((a, b), k)| (format!("{a}-{b}"), k)).collect();
            let doc = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "max_degree": g.max_degree(),
                "crossings": d.crossing_count(),
                "e_star": d.e_star.len(),
                "good": rep.ok() && d.is_good(),
                "lower_bound": lower_bound(g),
                "crossing_pairs": pairs,
                "verify": rep,
                "piece_sets": pieces,
            });
            emit(&(serde_json::to_string_pretty(&doc)? + "\n"))?;
        }
        Command::Svg { drawing, output, width, height, no_labels } => {
            let d = read_drawing(&drawing)?;
            let opts = SvgOptions { width, height, show_labels: !no_labels, ..SvgOptions::default() };
            write_text(&output, &render_svg(&d, &opts))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<VerificationFailed>().is_some() => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
