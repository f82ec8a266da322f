//! Simple undirected graphs and the two text formats the scanner reads.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 0-indexed
//! vertices. graph6: the standard printable encoding of the upper triangle,
//! one graph per line, with an optional `>>graph6<<` header.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphIoError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: malformed edge {text:?}")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: loop at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header promises {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("graph6: invalid character {0:?}")]
    BadCharacter(char),
    #[error("graph6: expected {expected} data characters, found {found}")]
    TruncatedBits { expected: usize, found: usize },
    #[error("graph of order {n} is too large for {format}")]
    TooLargeForFormat { n: usize, format: Format },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Edgelist,
    Graph6,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Format::Edgelist => write!(f, "edgelist"),
            Format::Graph6 => write!(f, "graph6"),
        }
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(Format::Edgelist),
            "graph6" => Ok(Format::Graph6),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

/// Finite simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints. Line numbers in errors are 1-based edge indices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphIoError> {
        let mut g = Graph::empty(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge_checked(i + 1, u, v)?;
        }
        g.adj.iter_mut().for_each(|l| l.sort_unstable());
        Ok(g)
    }

    fn add_edge_checked(&mut self, line: usize, u: usize, v: usize) -> Result<(), GraphIoError> {
        let n = self.n();
        for vertex in [u, v] {
            if vertex >= n {
                return Err(GraphIoError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(GraphIoError::LoopEdge { line, vertex: u });
        }
        if self.adj[u].contains(&v) {
            return Err(GraphIoError::DuplicateEdge { line, u, v });
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|l| l.len() == 3)
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n() {
            let mut dist = vec![usize::MAX; self.n()];
            let mut parent = vec![usize::MAX; self.n()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// True iff `p` maps edges onto edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        if p.degree() != self.n() {
            return false;
        }
        self.adj.iter().enumerate().all(|(u, nbrs)| {
            let pu = p.apply(u);
            nbrs.len() == self.adj[pu].len() && nbrs.iter().all(|&v| self.has_edge(pu, p.apply(v)))
        })
    }

    /// The graph with vertex `v` renamed `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, nbrs) in self.adj.iter().enumerate() {
            adj[p.apply(u)] = nbrs.iter().map(|&v| p.apply(v)).collect();
            adj[p.apply(u)].sort_unstable();
        }
        Graph { adj }
    }

    pub fn serialize(&self, format: Format) -> Result<String, GraphIoError> {
        match format {
            Format::Edgelist => Ok(self.to_edgelist()),
            Format::Graph6 => self.to_graph6(),
        }
    }

    pub fn to_edgelist(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// graph6 encoding without trailing newline.
    pub fn to_graph6(&self) -> Result<String, GraphIoError> {
        let n = self.n();
        let mut bytes: Vec<u8> = Vec::new();
        if n <= 62 {
            bytes.push(n as u8 + 63);
        } else if n <= 258_047 {
            bytes.push(126);
            for shift in [12, 6, 0] {
                bytes.push(((n >> shift) & 63) as u8 + 63);
            }
        } else if (n as u64) < (1u64 << 36) {
            bytes.extend([126, 126]);
            for shift in [30, 24, 18, 12, 6, 0] {
                bytes.push(((n >> shift) & 63) as u8 + 63);
            }
        } else {
            return Err(GraphIoError::TooLargeForFormat {
                n,
                format: Format::Graph6,
            });
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    bytes.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            bytes.push((acc << (6 - filled)) + 63);
        }
        Ok(String::from_utf8(bytes).expect("graph6 is printable ASCII"))
    }
}

/// Parses the `n m` + `u v` lines format. Blank lines are ignored.
pub fn parse_edgelist(text: &str) -> Result<Graph, GraphIoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| GraphIoError::MalformedHeader(String::new()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parsed: Option<(usize, usize)> = match fields.as_slice() {
        [n, m] => n.parse().ok().zip(m.parse().ok()),
        _ => None,
    };
    let (n, m) = parsed.ok_or_else(|| GraphIoError::MalformedHeader(header.to_string()))?;
    let mut g = Graph::empty(n);
    let mut found = 0;
    for (line, text) in lines {
        let mut it = text.split_whitespace().map(usize::from_str);
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => (u, v),
            _ => {
                return Err(GraphIoError::MalformedEdge {
                    line,
                    text: text.to_string(),
                })
            }
        };
        g.add_edge_checked(line, u, v)?;
        found += 1;
    }
    if found != m {
        return Err(GraphIoError::EdgeCountMismatch { expected: m, found });
    }
    g.adj.iter_mut().for_each(|l| l.sort_unstable());
    Ok(g)
}

/// Decodes one graph6 line, tolerating a leading `>>graph6<<` header.
pub fn parse_graph6(line: &str) -> Result<Graph, GraphIoError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let mut data = Vec::with_capacity(line.len());
    for c in line.chars() {
        if !('?'..='~').contains(&c) {
            return Err(GraphIoError::BadCharacter(c));
        }
        data.push(c as u8 - 63);
    }
    let (n, body) = match data.as_slice() {
        [] => return Err(GraphIoError::TruncatedBits { expected: 1, found: 0 }),
        [63, 63, rest @ ..] => {
            if rest.len() < 6 {
                return Err(GraphIoError::TruncatedBits {
                    expected: 8,
                    found: data.len(),
                });
            }
            let n = rest[..6].iter().fold(0u64, |acc, &b| (acc << 6) | b as u64);
            (n as usize, &rest[6..])
        }
        [63, rest @ ..] => {
            if rest.len() < 3 {
                return Err(GraphIoError::TruncatedBits {
                    expected: 4,
                    found: data.len(),
                });
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | b as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => (*first as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(GraphIoError::TruncatedBits {
            expected,
            found: body.len(),
        });
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.adj[i].push(j);
                g.adj[j].push(i);
            }
            k += 1;
        }
    }
    g.adj.iter_mut().for_each(|l| l.sort_unstable());
    Ok(g)
}

/// Parses every graph in a file, detecting the format from its content: a
/// first non-empty line of two integers means edge list, anything else is
/// treated as graph6 with one graph per line. Returns `(line, graph)` pairs.
pub fn parse_any(text: &str) -> Vec<(usize, Result<Graph, GraphIoError>)> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    let is_edgelist = first.is_some_and(|l| {
        let f: Vec<&str> = l.split_whitespace().collect();
        f.len() == 2 && f.iter().all(|s| s.parse::<usize>().is_ok())
    });
    if is_edgelist {
        return vec![(1, parse_edgelist(text))];
    }
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && l != ">>graph6<<"
        })
        .map(|(i, l)| (i + 1, parse_graph6(l.trim())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn edgelist_examples() {
        let g = parse_edgelist("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
        assert_eq!(g, k4());
        let g = parse_edgelist("2 1\n0 1").unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert!(matches!(
            parse_edgelist("3 1\n0 3"),
            Err(GraphIoError::VertexOutOfRange { vertex: 3, .. })
        ));
    }

    #[test]
    fn edgelist_errors() {
        assert!(matches!(parse_edgelist("x y\n"), Err(GraphIoError::MalformedHeader(_))));
        assert!(matches!(parse_edgelist(""), Err(GraphIoError::MalformedHeader(_))));
        assert!(matches!(parse_edgelist("2 1\n1 1"), Err(GraphIoError::LoopEdge { .. })));
        assert!(matches!(
            parse_edgelist("2 2\n0 1\n1 0"),
            Err(GraphIoError::DuplicateEdge { line: 3, .. })
        ));
        assert!(matches!(
            parse_edgelist("3 2\n0 1"),
            Err(GraphIoError::EdgeCountMismatch { .. })
        ));
        assert!(matches!(
            parse_edgelist("3 1\n0 1 2"),
            Err(GraphIoError::MalformedEdge { .. })
        ));
    }

    #[test]
    fn graph6_examples() {
        assert_eq!(parse_graph6("C~").unwrap(), k4());
        let g = parse_graph6("A_").unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));
        let g = parse_graph6("A?").unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 0));
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), k4());
        assert_eq!(k4().to_graph6().unwrap(), "C~");
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(parse_graph6("C~ "), Err(GraphIoError::BadCharacter(' '))));
        assert!(matches!(parse_graph6("D~"), Err(GraphIoError::TruncatedBits { .. })));
        assert!(matches!(parse_graph6("C~~"), Err(GraphIoError::TruncatedBits { .. })));
    }

    #[test]
    fn graph6_long_form() {
        let n = 70;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let s = g.to_graph6().unwrap();
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn single_vertex_edgelist() {
        assert_eq!(Graph::empty(1).to_edgelist(), "1 0\n");
    }

    #[test]
    fn connectivity_and_cubicity() {
        let g = k4();
        assert!(g.is_connected() && g.is_cubic());
        let mut edges = g.edges();
        edges.extend(g.edges().iter().map(|&(u, v)| (u + 4, v + 4)));
        let two = Graph::from_edges(8, &edges).unwrap();
        assert!(!two.is_connected());
        assert!(two.is_cubic());
    }

    #[test]
    fn girth_small() {
        assert_eq!(k4().girth(), Some(3));
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5.girth(), Some(5));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
    }

    #[test]
    fn parse_any_detects_format() {
        let r = parse_any("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
        assert_eq!(r.len(), 1);
        let r = parse_any(">>graph6<<\nC~\nA_\n");
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].0, 2);
        assert_eq!(r[1].1.as_ref().unwrap().n(), 2);
    }
}
