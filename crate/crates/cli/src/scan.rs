//! `scan`: analyze every graph in a directory and emit one JSON record per
//! graph followed by a summary line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use circulant_core::kcirc::BoundFinding;
use circulant_core::quotient::QuotientResult;
use circulant_core::*;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analyze_graph, read_graphs, Limits};
use crate::Usage;

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub limits: Limits,
    pub bound_check: bool,
    pub timings: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct ScanRecord {
    pub source: String,
    pub line: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cubic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tutte_t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_opt_order")]
    pub aut_order: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<BTreeMap<usize, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub findings: Option<Vec<BoundFinding>>,
    /// Quotient by the cyclic group of the witness for the smallest reported `k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

fn serialize_opt_order<S: serde::Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => aut::serialize_biguint(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Serialize)]
pub struct AtBound {
    pub source: String,
    pub line: usize,
    pub k: usize,
}

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub files: usize,
    pub graphs: usize,
    pub analyzed: usize,
    pub skipped: usize,
    pub errors: usize,
    pub violations: usize,
    pub at_bound: Vec<AtBound>,
}

fn scan_graph(source: &str, line: usize, graph: &Graph, opts: ScanOptions) -> ScanRecord {
    let mut record = ScanRecord {
        source: source.to_string(),
        line,
        n: Some(graph.n()),
        cubic: Some(graph.is_cubic()),
        connected: Some(graph.is_connected()),
        ..ScanRecord::default()
    };
    if !graph.is_cubic() {
        record.skip = Some("not cubic".into());
        return record;
    }
    if !graph.is_connected() {
        record.skip = Some("not connected".into());
        return record;
    }
    let analysis = match analyze_graph(graph, opts.limits) {
        Ok(a) => a,
        Err(e) => {
            record.skip = Some(e.reason());
            return record;
        }
    };
    let arc_transitive = analysis.profile.arc_transitive;
    record.arc_transitive = Some(arc_transitive);
    record.tutte_t = analysis.profile.tutte_t;
    record.aut_order = Some(analysis.profile.aut_order.clone());
    let report = analysis.spectrum;
    if let Some(w) = report.witnesses.values().next() {
        let group = PermGroup::new(graph.n(), vec![w.clone()]).expect("witness degree matches graph");
        record.quotient = quotient_graph(graph, &group).ok();
    }
    record.witnesses = Some(report.witnesses.iter().map(|(k, w)| (*k, w.to_string())).collect());
    if opts.bound_check && arc_transitive {
        record.findings = Some(report.findings.clone());
    }
    record.spectrum = Some(report.spectrum);
    record
}

fn scan_file(path: &Path, opts: ScanOptions) -> Vec<ScanRecord> {
    let source = path.display().to_string();
    let graphs = match read_graphs(path, None) {
        Ok(g) => g,
        Err(e) => {
            return vec![ScanRecord {
                source,
                line: 0,
                error: Some(format!("{e:#}")),
                ..ScanRecord::default()
            }]
        }
    };
    graphs
        .into_iter()
        .map(|(line, parsed)| {
            let start = Instant::now();
            let mut record = match parsed {
                Ok(graph) => scan_graph(&source, line, &graph, opts),
                Err(e) => ScanRecord {
                    source: source.clone(),
                    line,
                    error: Some(e.to_string()),
                    ..ScanRecord::default()
                },
            };
            if opts.timings {
                record.elapsed_ms = Some(start.elapsed().as_millis());
            }
            record
        })
        .collect()
}

/// Regular files directly inside `dir`, sorted by name.
pub fn list_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))
        .map_err(|e| anyhow::Error::new(Usage(format!("{e:#}"))))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Scans `files` in parallel and returns records in input order.
pub fn scan(files: &[PathBuf], opts: ScanOptions) -> (Vec<ScanRecord>, Summary) {
    let per_file: Vec<Vec<ScanRecord>> = files.par_iter().map(|p| scan_file(p, opts)).collect();
    let records: Vec<ScanRecord> = per_file.into_iter().flatten().collect();
    let mut summary = Summary {
        files: files.len(),
        ..Summary::default()
    };
    for r in &records {
        if r.error.is_some() {
            summary.errors += 1;
            continue;
        }
        summary.graphs += 1;
        if r.skip.is_some() {
            summary.skipped += 1;
            continue;
        }
        summary.analyzed += 1;
        for f in r.findings.iter().flatten() {
            if !f.pass {
                summary.violations += 1;
            }
            if f.at_bound {
                summary.at_bound.push(AtBound {
                    source: r.source.clone(),
                    line: r.line,
                    k: f.k,
                });
            }
        }
    }
    (records, summary)
}
