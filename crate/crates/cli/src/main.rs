//! `circulant-lab`: construct cubic arc-transitive k-circulants, analyze
//! graph files, and scan directories for order-bound findings.
//!
//! Exit codes: 0 on success, 1 when a verification or bound check fails,
//! 2 on usage, parameter or parse errors.

mod analysis;
mod construct;
mod scan;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use circulant_core::aut::DEFAULT_NODE_CAP;
use circulant_core::construct::{construct_even, construct_odd, ConstructError, Construction};
use circulant_core::perm::DEFAULT_ENUMERATION_CAP;
use circulant_core::Format;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analysis::{analyze_graph, read_graphs, Limits};
use crate::scan::ScanOptions;

/// An error caused by the invocation rather than by a failed check.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Parser)]
#[command(name = "circulant-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Largest automorphism group that may be enumerated element by element.
    #[arg(long, env = "CIRCULANT_LAB_CAP", default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    /// Largest number of nodes the automorphism search may visit.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: u64,
    /// Keep the trivial k = n (identity witness) in reported spectra.
    #[arg(long)]
    include_trivial_k: bool,
}

impl LimitArgs {
    fn limits(self) -> Limits {
        Limits {
            cap: self.cap,
            node_cap: self.node_cap,
            include_trivial_k: self.include_trivial_k,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Format of the written graph.
    #[arg(long, default_value_t = Format::Edgelist)]
    format: Format,
    /// Write the graph here; without it the graph text is embedded in the report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the even-k family graph for parameters m and p, then verify it.
    ConstructEven {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Build the odd-k family graph of order 6k^2, then verify it.
    ConstructOdd {
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Symmetry profile and k-spectrum of every graph in a file.
    Analyze {
        path: PathBuf,
        /// Input format; detected from the content when omitted.
        #[arg(long)]
        format: Option<Format>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// k-spectrum report of every graph in a file.
    Spectrum {
        path: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Analyze every file in a directory, one JSON record per graph.
    Scan {
        dir: PathBuf,
        /// Report order-bound findings for arc-transitive graphs and fail on violations.
        #[arg(long)]
        bound_check: bool,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        /// Add wall-clock `elapsed_ms` to each record (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn bad_params(e: ConstructError) -> anyhow::Error {
    anyhow::Error::new(Usage(format!("bad parameters: {e}")))
}

fn run_construct(c: Construction, output: OutputArgs, limits: LimitArgs) -> Result<bool> {
    let (mut report, text) = construct::verify(&c, output.format, limits.limits())?;
    match &output.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?,
        None => report.graph = Some(text),
    }
    print_json(&mut std::io::stdout().lock(), &report)?;
    Ok(report.pass)
}

#[derive(Serialize)]
struct AnalyzeRecord<'a, T: Serialize> {
    source: &'a str,
    line: usize,
    #[serde(flatten)]
    body: T,
}

/// Runs `f` on every graph in the file; parse errors abort with a usage error.
fn for_each_graph<T: Serialize>(
    path: &Path,
    format: Option<Format>,
    mut f: impl FnMut(&circulant_core::Graph) -> Result<T>,
) -> Result<bool> {
    let graphs = read_graphs(path, format)?;
    if graphs.is_empty() {
        return Err(Usage(format!("{}: no graph found", path.display())).into());
    }
    let source = path.display().to_string();
    let mut out = std::io::stdout().lock();
    for (line, parsed) in graphs {
        let graph = parsed.map_err(|e| Usage(format!("{source}:{line}: {e}")))?;
        let body = f(&graph)?;
        print_json(
            &mut out,
            &AnalyzeRecord {
                source: &source,
                line,
                body,
            },
        )?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a scan::Summary,
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::ConstructEven { m, p, output, limits } => {
            run_construct(construct_even(m, p).map_err(bad_params)?, output, limits)
        }
        Command::ConstructOdd { k, output, limits } => {
            run_construct(construct_odd(k).map_err(bad_params)?, output, limits)
        }
        Command::Analyze { path, format, limits } => {
            for_each_graph(&path, format, |g| Ok(analyze_graph(g, limits.limits())?))
        }
        Command::Spectrum { path, format, limits } => {
            for_each_graph(&path, format, |g| Ok(analyze_graph(g, limits.limits())?.spectrum))
        }
        Command::Scan {
            dir,
            bound_check,
            jobs,
            timings,
            limits,
        } => {
            let files = scan::list_files(&dir)?;
            let opts = ScanOptions {
                limits: limits.limits(),
                bound_check,
                timings,
            };
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                builder = builder.num_threads(j.max(1));
            }
            let pool = builder.build()?;
            let (records, summary) = pool.install(|| scan::scan(&files, opts));
            let mut out = std::io::stdout().lock();
            for r in &records {
                print_json(&mut out, r)?;
            }
            print_json(&mut out, &SummaryLine { summary: &summary })?;
            Ok(summary.violations == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
