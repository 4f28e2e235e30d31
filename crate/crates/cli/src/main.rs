//! `linetree`: spanning-tree counts and formula checks for graph files.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage, 3 unreadable or
//! malformed input, 4 input outside an operation's domain.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use linetree::graph::edge_set;
use linetree::harness::checks::{
    clique_instance, file_instance, fuzz, verify_binomial, verify_bipartite, verify_gen_result,
    verify_main, verify_partition_instance, verify_pendant, verify_regular,
    verify_subdivision_expansion, FuzzClass,
};
use linetree::harness::{emit_graph, read_graph_file};
use linetree::transforms::{clique_insert, line_graph, pendant_split, subdivide};
use linetree::treecount::count_matrix_tree;
use linetree::{EdgeSet, Error, Exec, MultiGraph};

#[derive(Parser)]
#[command(
    name = "linetree",
    version,
    about = "Exact spanning-tree counts for derived graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of spanning trees.
    Count { file: PathBuf },
    /// Apply a construction and print the resulting graph file.
    Transform {
        #[command(subcommand)]
        kind: TransformKind,
    },
    /// Compare a closed form with a direct count and print a JSON report.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Check a batch of seeded random instances and print a JSON report.
    Fuzz {
        #[arg(long, value_parser = ["random", "regular", "pendant-regular", "semiregular"])]
        class: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[command(flatten)]
        exec: ExecArgs,
    },
}

#[derive(Subcommand)]
enum TransformKind {
    /// Line graph.
    Line { file: PathBuf },
    /// Replace every edge by a path of length R + 1.
    Subdivide {
        #[arg(long)]
        r: usize,
        file: PathBuf,
    },
    /// Replace every vertex of degree s by K_s.
    CliqueInsert { file: PathBuf },
    /// Split the listed edges into pairs of pendant edges.
    PendantSplit {
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
        file: PathBuf,
    },
}

#[derive(Args)]
struct ExecArgs {
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

impl ExecArgs {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }
}

#[derive(Args)]
struct MatchingArgs {
    /// Matching edge ids; without it the file graph G is replaced by C(G).
    #[arg(long, value_delimiter = ',')]
    matching: Option<Vec<usize>>,
}

impl MatchingArgs {
    fn edges(&self) -> Option<EdgeSet> {
        self.matching.as_ref().map(|m| edge_set(m.iter().copied()))
    }
}

#[derive(Subcommand)]
enum VerifyKind {
    /// t(L(S_r(G))) by the subset sum and by its endpoint-map form.
    Main {
        #[arg(long)]
        r: usize,
        file: PathBuf,
    },
    /// Regular-graph line and subdivided-line formulas.
    Regular { file: PathBuf },
    /// Graphs whose degrees are 1 or k.
    Pendant {
        #[arg(long)]
        r: usize,
        file: PathBuf,
    },
    /// Bipartite graphs with degrees in {1, a} and {1, b}.
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        file: PathBuf,
    },
    /// Trees containing a matching whose complement is a union of cliques.
    GenResult {
        #[command(flatten)]
        matching: MatchingArgs,
        file: PathBuf,
    },
    /// Label every such tree and check each class.
    Partition {
        #[command(flatten)]
        matching: MatchingArgs,
        #[command(flatten)]
        exec: ExecArgs,
        file: PathBuf,
    },
    /// C(m-n+1, i) t(H) against the sum over i-edge deletions.
    Binomial {
        #[arg(long)]
        i: Option<usize>,
        file: PathBuf,
    },
    /// Pendant-split expansion of a partial subdivision.
    SubdivisionExpansion {
        #[arg(long)]
        r: usize,
        /// Subdivided edges; all edges by default.
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<usize>>,
        file: PathBuf,
    },
}

/// Failure classes, each with its own exit code.
enum Failure {
    Usage(String),
    Input(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Argument(_) => Failure::Usage(e.to_string()),
            Error::Parse { .. } => Failure::Input(e.to_string()),
            Error::Domain(_) | Error::Resource(_) | Error::NonIntegral(_) => {
                Failure::Domain(e.to_string())
            }
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(inner) => inner.into(),
            Err(other) => Failure::Input(format!("{other:#}")),
        }
    }
}

fn load(path: &Path) -> Result<MultiGraph, Failure> {
    Ok(read_graph_file(path)?)
}

fn json<T: serde::Serialize>(value: &T) -> anyhow::Result<String> {
    serde_json::to_string_pretty(value).context("serializing report")
}

/// Writes `text` and returns whether the run counts as a pass.
fn run(cli: Cli, out: &mut impl Write) -> Result<bool, Failure> {
    let emit = |out: &mut dyn Write, text: String| -> Result<(), Failure> {
        writeln!(out, "{text}").map_err(|e| Failure::Input(format!("writing output: {e}")))
    };
    match cli.command {
        Command::Count { file } => {
            let g = load(&file)?;
            emit(out, count_matrix_tree(&g).to_string())?;
            Ok(true)
        }
        Command::Transform { kind } => {
            let g = match &kind {
                TransformKind::Line { file } => line_graph(&load(file)?).graph,
                TransformKind::Subdivide { r, file } => subdivide(&load(file)?, *r).graph,
                TransformKind::CliqueInsert { file } => clique_insert(&load(file)?).graph,
                TransformKind::PendantSplit { edges, file } => {
                    pendant_split(&load(file)?, &edge_set(edges.iter().copied()))?
                }
            };
            write!(out, "{}", emit_graph(&g)).map_err(|e| Failure::Input(e.to_string()))?;
            Ok(true)
        }
        Command::Verify { kind } => {
            let report = match kind {
                VerifyKind::Main { r, file } => {
                    let g = load(&file)?;
                    verify_main(&g, r, file_instance(&g, &format!("main r={r}")))?
                }
                VerifyKind::Regular { file } => {
                    let g = load(&file)?;
                    verify_regular(&g, file_instance(&g, "regular"))?
                }
                VerifyKind::Pendant { r, file } => {
                    let g = load(&file)?;
                    verify_pendant(&g, r, file_instance(&g, &format!("pendant-regular r={r}")))?
                }
                VerifyKind::Bipartite { a, b, file } => {
                    let g = load(&file)?;
                    verify_bipartite(
                        &g,
                        a,
                        b,
                        file_instance(&g, &format!("semiregular a={a} b={b}")),
                    )?
                }
                VerifyKind::GenResult { matching, file } => {
                    let (q, m) = clique_instance(&load(&file)?, matching.edges());
                    verify_gen_result(&q, &m, file_instance(&q, "clique-contraction"))?
                }
                VerifyKind::Partition {
                    matching,
                    exec,
                    file,
                } => {
                    let (q, m) = clique_instance(&load(&file)?, matching.edges());
                    verify_partition_instance(&q, &m, file_instance(&q, "partition"), exec.exec())?
                }
                VerifyKind::Binomial { i, file } => {
                    let g = load(&file)?;
                    verify_binomial(&g, i, file_instance(&g, "binomial-deletion"))?
                }
                VerifyKind::SubdivisionExpansion { r, edges, file } => {
                    let g = load(&file)?;
                    let subset = edges.map(edge_set);
                    verify_subdivision_expansion(
                        &g,
                        r,
                        subset,
                        file_instance(&g, &format!("subdivision-expansion r={r}")),
                    )?
                }
            };
            emit(out, json(&report)?)?;
            Ok(report.pass)
        }
        Command::Fuzz {
            class,
            count,
            seed,
            max_n,
            exec,
        } => {
            let report = fuzz(FuzzClass::parse(&class)?, count, seed, max_n, exec.exec())?;
            emit(out, json(&report)?)?;
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
