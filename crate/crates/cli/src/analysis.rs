//! Whole-graph analysis shared by `analyze`, `spectrum` and `scan`.

use std::path::Path;

use anyhow::{Context, Result};
use circulant_core::aut::AutError;
use circulant_core::graph::{parse_any, GraphIoError};
use circulant_core::kcirc::KcircError;
use circulant_core::perm::PermError;
use circulant_core::*;
use serde::Serialize;

use crate::Usage;

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest automorphism group that may be enumerated.
    pub cap: u64,
    /// Largest number of search nodes for the automorphism search.
    pub node_cap: u64,
    pub include_trivial_k: bool,
}

/// Symmetry profile plus spectrum of one graph.
#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub cubic: bool,
    pub connected: bool,
    pub profile: SymmetryProfile,
    pub spectrum: SpectrumReport,
}

#[derive(Debug)]
pub enum AnalysisError {
    Aut(AutError),
    Kcirc(KcircError),
}

impl AnalysisError {
    /// Short reason suitable for a scan record's `skip` field.
    pub fn reason(&self) -> String {
        match self {
            AnalysisError::Aut(AutError::Timeout(n)) => format!("search node cap {n} exceeded"),
            AnalysisError::Kcirc(KcircError::Perm(PermError::CapExceeded { order, cap })) => {
                format!("cap exceeded: |Aut| = {order} > {cap}")
            }
            AnalysisError::Aut(e) => e.to_string(),
            AnalysisError::Kcirc(e) => e.to_string(),
        }
    }
}

impl std::fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.reason())
    }
}

impl std::error::Error for AnalysisError {}

pub fn analyze_graph(graph: &Graph, limits: Limits) -> Result<Analysis, AnalysisError> {
    let (profile, aut) = symmetry_profile(graph, limits.node_cap).map_err(AnalysisError::Aut)?;
    let mut spectrum = k_spectrum(graph, &aut, limits.cap).map_err(AnalysisError::Kcirc)?;
    if !limits.include_trivial_k {
        spectrum = spectrum.without_trivial();
    }
    // the order bound only speaks about cubic arc-transitive graphs
    if !(graph.is_cubic() && profile.arc_transitive) {
        spectrum.findings.clear();
    }
    Ok(Analysis {
        cubic: graph.is_cubic(),
        connected: graph.is_connected(),
        profile,
        spectrum,
    })
}

/// Reads every graph in a file. A forced format parses the whole file as an
/// edge list, or each non-empty line as graph6.
pub fn read_graphs(path: &Path, format: Option<Format>) -> Result<Vec<(usize, Result<Graph, GraphIoError>)>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(|e| anyhow::Error::new(Usage(format!("{e:#}"))))?;
    Ok(match format {
        None => parse_any(&text),
        Some(Format::Edgelist) => vec![(1, parse_edgelist(&text))],
        Some(Format::Graph6) => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && l.trim() != ">>graph6<<")
            .map(|(i, l)| (i + 1, parse_graph6(l.trim())))
            .collect(),
    })
}
