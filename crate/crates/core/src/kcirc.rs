//! k-spectra: every `k` such that the automorphism group contains a cyclic
//! semiregular subgroup with `k` orbits, with one witness per `k`.
//!
//! The spectrum is computed by streaming every element of `Aut(G)` through
//! the stabilizer chain. A semiregular element `g` of order `d` contributes
//! `k = n / d`. The identity is semiregular, so `n` is always present.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;
use crate::perm::{PermError, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KcircError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("k = {k} does not divide n = {n}")]
    KDoesNotDivideN { k: usize, n: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    NotSemiregular,
    EvenOrbitCount,
    EvenDegreeVertex,
    NotAnAutomorphism,
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Precondition::NotSemiregular => "generator is not semiregular",
            Precondition::EvenOrbitCount => "generator has an even number of orbits",
            Precondition::EvenDegreeVertex => "graph has a vertex of even degree",
            Precondition::NotAnAutomorphism => "generator is not an automorphism",
        })
    }
}

/// One odd `k` of a spectrum checked against `n <= 6k^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundFinding {
    pub k: usize,
    pub bound: u128,
    pub pass: bool,
    /// `n == 6k^2`.
    pub at_bound: bool,
    /// `k` is squarefree and coprime to 6, where the bound is a theorem.
    pub theorem_backed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub n: usize,
    pub spectrum: Vec<usize>,
    pub witnesses: BTreeMap<usize, Permutation>,
    pub findings: Vec<BoundFinding>,
}

impl SpectrumReport {
    pub fn contains(&self, k: usize) -> bool {
        self.spectrum.binary_search(&k).is_ok()
    }

    /// A copy without the trivial `k = n` entry.
    pub fn without_trivial(&self) -> SpectrumReport {
        let mut out = self.clone();
        out.spectrum.retain(|&k| k != self.n);
        out.witnesses.remove(&self.n);
        out.findings.retain(|f| f.k != self.n);
        out
    }
}

struct Witnesses<'a>(&'a BTreeMap<usize, Permutation>);

impl Serialize for Witnesses<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, w) in self.0 {
            map.serialize_entry(&k.to_string(), &w.to_string())?;
        }
        map.end()
    }
}

impl Serialize for SpectrumReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SpectrumReport", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("spectrum", &self.spectrum)?;
        st.serialize_field("witnesses", &Witnesses(&self.witnesses))?;
        st.serialize_field("findings", &self.findings)?;
        st.end()
    }
}

/// Spectrum of a graph given its full automorphism group.
pub fn k_spectrum(graph: &Graph, aut: &PermGroup, cap: u64) -> Result<SpectrumReport, KcircError> {
    let n = graph.n();
    let mut witnesses: BTreeMap<usize, Permutation> = BTreeMap::new();
    for g in aut.elements(cap)? {
        if !g.is_semiregular() {
            continue;
        }
        let len = g.cycles().first().map_or(1, Vec::len);
        let k = if n == 0 { 0 } else { n / len };
        witnesses.entry(k).or_insert(g);
    }
    let mut report = SpectrumReport {
        n,
        spectrum: witnesses.keys().copied().collect(),
        witnesses,
        findings: Vec::new(),
    };
    report.findings = check_order_bound(&report);
    Ok(report)
}

/// A semiregular automorphism with exactly `k` orbits, re-verified, or `None`.
pub fn certify_k_circulant(
    graph: &Graph,
    aut: &PermGroup,
    k: usize,
    cap: u64,
) -> Result<Option<Permutation>, KcircError> {
    let n = graph.n();
    if k == 0 || !n.is_multiple_of(k) {
        return Err(KcircError::KDoesNotDivideN { k, n });
    }
    if k == n {
        return Ok(Some(Permutation::identity(n)));
    }
    let want = n / k;
    for g in aut.elements(cap)? {
        if g.is_semiregular() && g.cycles()[0].len() == want && verify_witness(graph, &g, k) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Checks that `w` is an automorphism whose cycles all have length `n / k`.
pub fn verify_witness(graph: &Graph, w: &Permutation, k: usize) -> bool {
    let n = graph.n();
    if k == 0 || !n.is_multiple_of(k) || !graph.is_automorphism(w) {
        return false;
    }
    let cs = w.cycle_structure();
    cs.cycle_lengths.len() == k && cs.cycle_lengths.iter().all(|&l| l == n / k)
}

fn is_squarefree(k: usize) -> bool {
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Order-bound findings for every odd `k` in the report's spectrum.
pub fn check_order_bound(report: &SpectrumReport) -> Vec<BoundFinding> {
    report
        .spectrum
        .iter()
        .filter(|&&k| k % 2 == 1)
        .map(|&k| {
            let bound = 6 * (k as u128) * (k as u128);
            let n = report.n as u128;
            BoundFinding {
                k,
                bound,
                pass: n <= bound,
                at_bound: n == bound,
                theorem_backed: is_squarefree(k) && k.gcd(&6) == 1,
            }
        })
        .collect()
}

/// Whether the unique involution of `<c>` swaps the ends of some edge.
/// Requires odd degrees everywhere and `<c>` semiregular with an odd number
/// of orbits; under those hypotheses the answer is always `true`.
pub fn edge_reversing_involution_check(graph: &Graph, c: &Permutation) -> Result<bool, KcircError> {
    let n = graph.n();
    if c.degree() != n || !graph.is_automorphism(c) {
        return Err(KcircError::PreconditionViolated(Precondition::NotAnAutomorphism));
    }
    if !c.is_semiregular() {
        return Err(KcircError::PreconditionViolated(Precondition::NotSemiregular));
    }
    if (0..n).any(|v| graph.degree(v).is_multiple_of(2)) {
        return Err(KcircError::PreconditionViolated(Precondition::EvenDegreeVertex));
    }
    let len = c.cycles().first().map_or(1, Vec::len);
    let orbits = if n == 0 { 0 } else { n / len };
    if orbits % 2 == 0 {
        return Err(KcircError::PreconditionViolated(Precondition::EvenOrbitCount));
    }
    if len % 2 == 1 {
        return Ok(false);
    }
    let inv = c.pow(len as u64 / 2);
    Ok(graph.edges().iter().any(|&(u, v)| inv.apply(u) == v))
}
