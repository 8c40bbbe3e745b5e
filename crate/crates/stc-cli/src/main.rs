//! `stc`: command-line front end.
//!
//! Exit codes: 0 success or YES, 1 NO (or a tree over the requested bound),
//! 2 usage or parse error, 3 any other failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use stc_core::cactus::{build_cactus, enumerate_min_cuts};
use stc_core::gadgets::{
    build_bottleneck, build_flower, build_weight_gadget, canonical_bottleneck_tree, canonical_flower_tree,
    expand_double_weights, UniformEdges,
};
use stc_core::generate::generate_k_connected;
use stc_core::hub::{decide_stc_equals_k, reconstruct_witness_tree};
use stc_core::io::{
    apply_labels, parse_assignment, parse_graph, parse_labels, parse_sat, parse_tree, write_assignment, write_graph,
    write_graph_with, write_labels, write_sat, write_tree, FormatError, ParseError,
};
use stc_core::oracle::{stc_exact_with, SearchLimits, DEFAULT_NODE_BUDGET};
use stc_core::reduction::{
    assignment_to_tree, audit_structural_lemmas, random_m2p1n, recover_artifact, reduce_degree3, reduce_degree4,
    tree_to_assignment, ReductionArtifact,
};
use stc_core::{edge_congestions, DoubleWeightedGraph};

#[derive(Parser)]
#[command(name = "stc", version, about = "Spanning-tree congestion tools")]
struct Cli {
    /// Worker threads for the exact search.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact congestion by branch and bound; prints `stc <value>` and a witness tree.
    Exact { graph: PathBuf },
    /// Decides whether congestion equals edge connectivity.
    Decide {
        graph: PathBuf,
        /// Write a congestion-K spanning tree here on YES.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Prints the cactus of all minimum cuts.
    Cactus { graph: PathBuf },
    /// Degree-3 reduction of an (M2P1N)-SAT file.
    Reduce3(ReduceArgs),
    /// Degree-4 reduction of an (M2P1N)-SAT file.
    Reduce4(ReduceArgs),
    /// Replaces double weights by bottleneck gadgets.
    Expand {
        graph: PathBuf,
        #[arg(long)]
        k: u64,
        /// Subdivide uniform edges instead of making them parallel.
        #[arg(long)]
        subdivide: bool,
    },
    /// Emits a gadget graph with role labels.
    #[command(subcommand)]
    Gadget(Gadget),
    /// Prints the congestion of a spanning tree.
    VerifyTree {
        graph: PathBuf,
        tree: PathBuf,
        /// Exit 1 when the congestion exceeds this bound.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Reads an assignment off a reduction tree.
    ToAssignment {
        graph: PathBuf,
        tree: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Also print the structural audit as comment lines.
        #[arg(long)]
        audit: bool,
    },
    /// Builds a reduction tree from a satisfying assignment.
    FromAssignment {
        graph: PathBuf,
        assignment: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Random multigraph with edge connectivity exactly K.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random valid (M2P1N)-SAT instance.
    GenSat {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ReduceArgs {
    sat: PathBuf,
    /// Write role labels to this sidecar instead of inline.
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Gadget {
    Flower {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: u64,
        /// Also write the canonical spanning tree.
        #[arg(long)]
        tree: Option<PathBuf>,
    },
    Bottleneck {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        tree: Option<PathBuf>,
    },
    Dw {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path) -> Result<DoubleWeightedGraph> {
    parse_graph(&read(path)?).with_context(|| path.display().to_string())
}

fn load_artifact(graph: &Path, labels: Option<&Path>) -> Result<ReductionArtifact> {
    let mut g = load_graph(graph)?;
    if let Some(p) = labels {
        let l = parse_labels(&read(p)?, g.vertex_count()).with_context(|| p.display().to_string())?;
        apply_labels(&mut g, l);
    }
    Ok(recover_artifact(&g)?)
}

fn limits(jobs: usize) -> Result<SearchLimits> {
    let node_budget = match std::env::var("STC_MAX_TREES") {
        Ok(v) => v.trim().parse().with_context(|| format!("STC_MAX_TREES={v:?} is not a count"))?,
        Err(_) => DEFAULT_NODE_BUDGET,
    };
    Ok(SearchLimits { node_budget, jobs: jobs.max(1) })
}

fn reduce(args: &ReduceArgs, degree4: bool) -> Result<String> {
    let path = &args.sat;
    let inst = parse_sat(&read(path)?).with_context(|| path.display().to_string())?;
    let art = if degree4 { reduce_degree4(&inst)? } else { reduce_degree3(&inst)? };
    let mut out = format!("# k {}\n", art.k);
    match &args.labels {
        Some(p) => {
            write(p, &write_labels(&art.graph))?;
            out.push_str(&write_graph_with(&art.graph, false));
        }
        None => out.push_str(&write_graph(&art.graph)),
    }
    Ok(out)
}

/// Output text plus exit code.
fn run(cli: Cli) -> Result<(String, u8)> {
    let ok = |s: String| Ok((s, 0));
    match cli.command {
        Command::Exact { graph } => {
            let g = load_graph(&graph)?;
            let r = stc_exact_with(&g, limits(cli.jobs)?)?;
            ok(format!("stc {}\n{}", r.value, write_tree(&g, &r.witness)))
        }
        Command::Decide { graph, witness } => {
            let g = load_graph(&graph)?;
            let d = decide_stc_equals_k(&g)?;
            if let (true, Some(p)) = (d.is_yes(), witness) {
                let t = reconstruct_witness_tree(&g, &d)?;
                write(&p, &write_tree(&g, &t))?;
            }
            Ok((format!("{d}\n"), if d.is_yes() { 0 } else { 1 }))
        }
        Command::Cactus { graph } => {
            let g = load_graph(&graph)?;
            let family = enumerate_min_cuts(&g)?;
            let c = build_cactus(&g, &family)?;
            ok(format!("k {} cuts {}\n{}", c.k(), family.len(), c.dump()))
        }
        Command::Reduce3(args) => ok(reduce(&args, false)?),
        Command::Reduce4(args) => ok(reduce(&args, true)?),
        Command::Expand { graph, k, subdivide } => {
            let g = load_graph(&graph)?;
            let mode = if subdivide { UniformEdges::Subdivide } else { UniformEdges::Parallel };
            ok(write_graph(&expand_double_weights(&g, k, mode)?))
        }
        Command::Gadget(gadget) => {
            let (g, tree) = match gadget {
                Gadget::Flower { l, k, tree } => {
                    let f = build_flower(l, k)?;
                    let t = canonical_flower_tree(&f);
                    (f.graph, tree.map(|p| (p, t)))
                }
                Gadget::Bottleneck { w, tree } => {
                    let b = build_bottleneck(w)?;
                    let t = canonical_bottleneck_tree(&b);
                    (b.graph, tree.map(|p| (p, t)))
                }
                Gadget::Dw { a, b } => (build_weight_gadget(a, b)?.graph, None),
            };
            if let Some((p, t)) = tree {
                write(&p, &write_tree(&g, &t))?;
            }
            ok(write_graph(&g))
        }
        Command::VerifyTree { graph, tree, k } => {
            let g = load_graph(&graph)?;
            let t = parse_tree(&read(&tree)?, &g).with_context(|| tree.display().to_string())?;
            let c = edge_congestions(&g, &t).into_iter().map(|(_, c)| c).max().unwrap_or(0);
            let mut out = format!("congestion {c}\n");
            let code = match k {
                Some(k) if c > k => {
                    out.push_str(&format!("exceeds {k}\n"));
                    1
                }
                Some(k) => {
                    out.push_str(&format!("within {k}\n"));
                    0
                }
                None => 0,
            };
            Ok((out, code))
        }
        Command::ToAssignment { graph, tree, labels, audit } => {
            let art = load_artifact(&graph, labels.as_deref())?;
            let t = parse_tree(&read(&tree)?, &art.graph).with_context(|| tree.display().to_string())?;
            let values = tree_to_assignment(&art, &t)?;
            let mut out = write_assignment(&values);
            if audit {
                let report = audit_structural_lemmas(&art, &t)?;
                for line in report.to_string().lines() {
                    out.push_str(&format!("# {line}\n"));
                }
            }
            ok(out)
        }
        Command::FromAssignment { graph, assignment, labels } => {
            let art = load_artifact(&graph, labels.as_deref())?;
            let values = parse_assignment(&read(&assignment)?).with_context(|| assignment.display().to_string())?;
            ok(write_tree(&art.graph, &assignment_to_tree(&art, &values)?))
        }
        Command::Gen { n, k, seed } => ok(write_graph(&generate_k_connected(n, k, seed)?)),
        Command::GenSat { n, seed } => {
            if n == 0 {
                bail!("--n must be positive");
            }
            ok(write_sat(&random_m2p1n(n, seed)?))
        }
    }
}

fn is_input_error(e: &anyhow::Error) -> bool {
    e.chain().any(|c| c.is::<ParseError>() || c.is::<FormatError>())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_input_error(&e) { 2 } else { 3 })
        }
    }
}
