//! Automorphism groups by partition backtracking, and the symmetry tests
//! built on them (vertex- and arc-transitivity, Tutte's arc type).
//!
//! The search follows the classic individualize-and-refine scheme. A
//! leftmost path of individualized vertices `b_0, b_1, ..` is fixed first;
//! then, from the deepest level up, every vertex `c` in the target cell of
//! `b_i` that is not yet known to lie in the orbit of `b_i` under the
//! stabilizer of `b_0..b_{i-1}` is tested for an automorphism mapping
//! `b_i -> c`. The automorphisms found this way generate the full group.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;
use crate::perm::{orbits_of, PermGroup, Permutation};

/// Default bound on search nodes before [`AutError::Timeout`].
pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("automorphism search exceeded {0} nodes")]
    Timeout(u64),
    #[error("a group generator is not an automorphism of the graph")]
    GroupNotAutomorphisms,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not arc-transitive")]
    NotArcTransitive,
    #[error("vertex stabiliser order {0} is not 3 * 2^t with 0 <= t <= 4")]
    StabiliserNotOfForm(String),
}

/// Ordered partition: `cell[v]` is the index of the cell containing `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Partition {
    cell: Vec<u32>,
    ncells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        Partition {
            cell: vec![0; n],
            ncells: usize::from(n > 0),
        }
    }

    fn is_discrete(&self) -> bool {
        self.ncells == self.cell.len()
    }

    fn sizes(&self) -> Vec<u32> {
        let mut s = vec![0; self.ncells];
        for &c in &self.cell {
            s[c as usize] += 1;
        }
        s
    }

    /// Splits `v` off its (non-singleton) cell, placing it first.
    fn individualize(&self, v: usize) -> Partition {
        let c = self.cell[v];
        let cell = self
            .cell
            .iter()
            .enumerate()
            .map(|(u, &cu)| if cu > c || (cu == c && u != v) { cu + 1 } else { cu })
            .collect();
        Partition {
            cell,
            ncells: self.ncells + 1,
        }
    }

    fn members(&self, c: u32) -> impl Iterator<Item = usize> + '_ {
        self.cell
            .iter()
            .enumerate()
            .filter(move |(_, &x)| x == c)
            .map(|(v, _)| v)
    }
}

struct Refiner<'g> {
    graph: &'g Graph,
    order: Vec<usize>,
    keys: Vec<u32>,
    offsets: Vec<usize>,
}

impl<'g> Refiner<'g> {
    fn new(graph: &'g Graph) -> Self {
        let mut offsets = Vec::with_capacity(graph.n() + 1);
        offsets.push(0);
        for v in 0..graph.n() {
            offsets.push(offsets[v] + graph.degree(v));
        }
        Refiner {
            graph,
            order: (0..graph.n()).collect(),
            keys: vec![0; offsets[graph.n()]],
            offsets,
        }
    }

    /// Refines to the coarsest equitable partition finer than `p`. New cells
    /// are numbered by sorting on (old cell, sorted neighbour cells), which
    /// depends only on the partition structure, so the map commutes with
    /// graph isomorphisms.
    fn refine(&mut self, p: &mut Partition) {
        let n = self.graph.n();
        loop {
            for v in 0..n {
                let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
                for (slot, &w) in self.keys[lo..hi].iter_mut().zip(self.graph.neighbors(v)) {
                    *slot = p.cell[w];
                }
                self.keys[lo..hi].sort_unstable();
            }
            let (keys, offsets, cell) = (&self.keys, &self.offsets, &p.cell);
            let key = |v: usize| (cell[v], &keys[offsets[v]..offsets[v + 1]]);
            self.order.sort_unstable_by(|&a, &b| key(a).cmp(&key(b)));
            let mut next = vec![0u32; n];
            let mut id = 0u32;
            for i in 1..n {
                if key(self.order[i]) != key(self.order[i - 1]) {
                    id += 1;
                }
                next[self.order[i]] = id;
            }
            let count = if n == 0 { 0 } else { id as usize + 1 };
            let stable = count == p.ncells;
            p.cell = next;
            p.ncells = count;
            if stable {
                return;
            }
        }
    }
}

struct PathLevel {
    /// Partition before individualizing `base`.
    partition: Partition,
    target: u32,
    base: usize,
    /// Cell sizes after individualizing `base` and refining.
    sizes_after: Vec<u32>,
}

struct Search<'g> {
    graph: &'g Graph,
    refiner: Refiner<'g>,
    path: Vec<PathLevel>,
    leaf: Partition,
    nodes: u64,
    node_cap: u64,
}

impl<'g> Search<'g> {
    fn new(graph: &'g Graph, node_cap: u64) -> Self {
        let mut refiner = Refiner::new(graph);
        let mut p = Partition::unit(graph.n());
        refiner.refine(&mut p);
        let mut path = Vec::new();
        while !p.is_discrete() {
            let target = choose_target(graph, &p);
            let base = p.members(target).next().expect("non-empty cell");
            let mut q = p.individualize(base);
            refiner.refine(&mut q);
            path.push(PathLevel {
                partition: p,
                target,
                base,
                sizes_after: q.sizes(),
            });
            p = q;
        }
        Search {
            graph,
            refiner,
            path,
            leaf: p,
            nodes: 0,
            node_cap,
        }
    }

    /// An automorphism fixing `b_0..b_{level-1}` and mapping `b_level` to `c`.
    fn find(&mut self, level: usize, c: usize) -> Result<Option<Permutation>, AutError> {
        let start = self.path[level].partition.clone();
        self.try_branch(level, &start, c)
    }

    fn try_branch(&mut self, level: usize, p: &Partition, w: usize) -> Result<Option<Permutation>, AutError> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(AutError::Timeout(self.node_cap));
        }
        let mut q = p.individualize(w);
        self.refiner.refine(&mut q);
        if q.sizes() != self.path[level].sizes_after {
            return Ok(None);
        }
        if level + 1 == self.path.len() {
            return Ok(self.leaf_map(&q));
        }
        let target = self.path[level + 1].target;
        let candidates: Vec<usize> = q.members(target).collect();
        for x in candidates {
            if let Some(g) = self.try_branch(level + 1, &q, x)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    fn leaf_map(&self, image: &Partition) -> Option<Permutation> {
        let n = self.graph.n();
        let mut at_cell = vec![0usize; n];
        for (v, &c) in image.cell.iter().enumerate() {
            at_cell[c as usize] = v;
        }
        let images: Vec<usize> = (0..n).map(|v| at_cell[self.leaf.cell[v] as usize]).collect();
        let p = Permutation::try_new(images).ok()?;
        self.graph.is_automorphism(&p).then_some(p)
    }
}

/// First non-singleton cell holding a neighbour of a singleton cell's
/// vertex, falling back to the first non-singleton cell.
fn choose_target(graph: &Graph, p: &Partition) -> u32 {
    let sizes = p.sizes();
    let mut first = None;
    let mut best = None;
    for v in 0..graph.n() {
        let c = p.cell[v];
        if sizes[c as usize] < 2 {
            continue;
        }
        first = Some(first.map_or(c, |f: u32| f.min(c)));
        let touches = graph.neighbors(v).iter().any(|&w| sizes[p.cell[w] as usize] == 1);
        if touches {
            best = Some(best.map_or(c, |b: u32| b.min(c)));
        }
    }
    best.or(first).expect("partition is not discrete")
}

/// Generators of the full automorphism group, plus the base used by the
/// search and the basic orbit lengths it found.
#[derive(Debug, Clone)]
pub struct AutSearchResult {
    pub generators: Vec<Permutation>,
    pub base: Vec<usize>,
    pub orbit_lengths: Vec<usize>,
    pub nodes: u64,
}

impl AutSearchResult {
    pub fn order(&self) -> BigUint {
        self.orbit_lengths.iter().fold(BigUint::from(1u32), |acc, &l| acc * l)
    }
}

pub fn search_automorphisms(graph: &Graph, node_cap: u64) -> Result<AutSearchResult, AutError> {
    let n = graph.n();
    let mut search = Search::new(graph, node_cap);
    let depth = search.path.len();
    let mut found: Vec<Vec<Permutation>> = vec![Vec::new(); depth];
    let mut orbit_lengths = vec![1usize; depth];

    for level in (0..depth).rev() {
        let base = search.path[level].base;
        let target = search.path[level].target;
        let candidates: Vec<usize> = search.path[level].partition.members(target).collect();
        let mut stabilizer: Vec<Permutation> = found[level..].iter().flatten().cloned().collect();
        let mut orbit_id = orbit_ids(n, &stabilizer);
        let mut failed: Vec<usize> = Vec::new();
        for c in candidates {
            if orbit_id[c] == orbit_id[base] || failed.iter().any(|&f| orbit_id[f] == orbit_id[c]) {
                continue;
            }
            match search.find(level, c)? {
                Some(g) => {
                    found[level].push(g.clone());
                    stabilizer.push(g);
                    orbit_id = orbit_ids(n, &stabilizer);
                }
                None => failed.push(c),
            }
        }
        orbit_lengths[level] = orbit_id.iter().filter(|&&o| o == orbit_id[base]).count();
    }

    Ok(AutSearchResult {
        generators: found.into_iter().flatten().collect(),
        base: search.path.iter().map(|l| l.base).collect(),
        orbit_lengths,
        nodes: search.nodes,
    })
}

fn orbit_ids(n: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut id = vec![0; n];
    for (i, orbit) in orbits_of(n, gens).iter().enumerate() {
        for &v in orbit {
            id[v] = i;
        }
    }
    id
}

/// The full automorphism group with the default node cap.
pub fn automorphism_group(graph: &Graph) -> Result<PermGroup, AutError> {
    automorphism_group_with_cap(graph, DEFAULT_NODE_CAP)
}

pub fn automorphism_group_with_cap(graph: &Graph, node_cap: u64) -> Result<PermGroup, AutError> {
    let result = search_automorphisms(graph, node_cap)?;
    Ok(PermGroup::new(graph.n(), result.generators).expect("generators have graph degree"))
}

/// Whether `group` (a group of automorphisms) is transitive on arcs.
pub fn is_arc_transitive(graph: &Graph, group: &PermGroup) -> Result<bool, AutError> {
    if group.degree() != graph.n() || !group.generators().iter().all(|g| graph.is_automorphism(g)) {
        return Err(AutError::GroupNotAutomorphisms);
    }
    let edges = graph.edge_count();
    if edges == 0 {
        return Ok(false);
    }
    let mut offsets = vec![0usize; graph.n() + 1];
    for v in 0..graph.n() {
        offsets[v + 1] = offsets[v] + graph.degree(v);
    }
    let arc_id = |u: usize, v: usize| offsets[u] + graph.neighbors(u).binary_search(&v).expect("arc exists");
    let (u0, v0) = graph.edges()[0];
    let mut seen = vec![false; 2 * edges];
    let mut queue = vec![(u0, v0)];
    seen[arc_id(u0, v0)] = true;
    let mut count = 1;
    while let Some((u, v)) = queue.pop() {
        for g in group.generators() {
            let (gu, gv) = (g.apply(u), g.apply(v));
            let id = arc_id(gu, gv);
            if !seen[id] {
                seen[id] = true;
                count += 1;
                queue.push((gu, gv));
            }
        }
    }
    Ok(count == 2 * edges)
}

/// Tutte's `t` for a cubic arc-transitive graph: `|Aut| = 3 * 2^t * n`.
pub fn tutte_type(graph: &Graph) -> Result<u32, AutError> {
    let group = automorphism_group(graph)?;
    tutte_type_with_group(graph, &group)
}

/// [`tutte_type`] given an already computed full automorphism group.
pub fn tutte_type_with_group(graph: &Graph, aut: &PermGroup) -> Result<u32, AutError> {
    if !graph.is_cubic() {
        return Err(AutError::NotCubic);
    }
    if !graph.is_connected() {
        return Err(AutError::NotConnected);
    }
    if !is_arc_transitive(graph, aut)? {
        return Err(AutError::NotArcTransitive);
    }
    let order = aut.order();
    let n = BigUint::from(graph.n());
    let stab = &order / &n;
    if &stab * &n != order {
        return Err(AutError::StabiliserNotOfForm(format!("{order}/{n}")));
    }
    (0..=4u32)
        .find(|&t| stab == BigUint::from(3u32 << t))
        .ok_or_else(|| AutError::StabiliserNotOfForm(stab.to_string()))
}

/// Order, transitivity and arc type of a graph's automorphism group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryProfile {
    pub n: usize,
    #[serde(serialize_with = "serialize_biguint")]
    pub aut_order: BigUint,
    pub vertex_transitive: bool,
    pub arc_transitive: bool,
    pub tutte_t: Option<u32>,
    #[serde(serialize_with = "serialize_opt_biguint")]
    pub stabiliser_order: Option<BigUint>,
}

/// Computes the profile and returns the automorphism group alongside it.
pub fn symmetry_profile(graph: &Graph, node_cap: u64) -> Result<(SymmetryProfile, PermGroup), AutError> {
    let aut = automorphism_group_with_cap(graph, node_cap)?;
    let aut_order = aut.order();
    let vertex_transitive = graph.n() > 0 && aut.is_transitive();
    let arc_transitive = is_arc_transitive(graph, &aut)?;
    let stabiliser_order = vertex_transitive.then(|| &aut_order / BigUint::from(graph.n()));
    let tutte_t = if arc_transitive && graph.is_cubic() && graph.is_connected() {
        Some(tutte_type_with_group(graph, &aut)?)
    } else {
        None
    };
    let profile = SymmetryProfile {
        n: graph.n(),
        aut_order,
        vertex_transitive,
        arc_transitive,
        tutte_t,
        stabiliser_order,
    };
    Ok((profile, aut))
}

/// Writes a big integer as a JSON number when it fits in `u64`, else as a string.
pub fn serialize_biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(x) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}

fn serialize_opt_biguint<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_biguint(v, s),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn k4_group() {
        let g = complete(4);
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(aut.order_u64(), Some(24));
        assert!(is_arc_transitive(&g, &aut).unwrap());
        assert_eq!(tutte_type(&g).unwrap(), 1);
    }

    #[test]
    fn path_p3() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(aut.order_u64(), Some(2));
        assert!(!is_arc_transitive(&g, &aut).unwrap());
        assert_eq!(tutte_type(&g), Err(AutError::NotCubic));
    }

    #[test]
    fn search_order_matches_chain() {
        for n in 1..7 {
            let g = complete(n);
            let r = search_automorphisms(&g, DEFAULT_NODE_CAP).unwrap();
            let group = PermGroup::new(n, r.generators.clone()).unwrap();
            assert_eq!(r.order(), group.order());
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(group.order_u64(), Some(fact));
        }
    }

    #[test]
    fn rigid_and_empty_graphs() {
        assert_eq!(automorphism_group(&Graph::empty(0)).unwrap().order_u64(), Some(1));
        assert_eq!(automorphism_group(&Graph::empty(3)).unwrap().order_u64(), Some(6));
        // asymmetric tree on 7 vertices
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).unwrap();
        assert_eq!(automorphism_group(&g).unwrap().order_u64(), Some(1));
    }

    #[test]
    fn rejects_foreign_group() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let bad = PermGroup::new(3, vec![Permutation::try_new(vec![1, 0, 2]).unwrap()]).unwrap();
        assert_eq!(is_arc_transitive(&g, &bad), Err(AutError::GroupNotAutomorphisms));
    }

    #[test]
    fn timeout_is_reported() {
        let g = complete(6);
        assert_eq!(automorphism_group_with_cap(&g, 2).unwrap_err(), AutError::Timeout(2));
    }

    #[test]
    fn disconnected_cubic_has_no_tutte_type() {
        let k4 = complete(4);
        let mut edges = k4.edges();
        edges.extend(k4.edges().iter().map(|&(u, v)| (u + 4, v + 4)));
        let g = Graph::from_edges(8, &edges).unwrap();
        assert_eq!(automorphism_group(&g).unwrap().order_u64(), Some(1152));
        assert_eq!(tutte_type(&g), Err(AutError::NotConnected));
    }

    #[test]
    fn profile_json_fields() {
        let (profile, _) = symmetry_profile(&complete(4), DEFAULT_NODE_CAP).unwrap();
        let v = serde_json::to_value(&profile).unwrap();
        assert_eq!(v["n"], 4);
        assert_eq!(v["aut_order"], 24);
        assert_eq!(v["vertex_transitive"], true);
        assert_eq!(v["arc_transitive"], true);
        assert_eq!(v["tutte_t"], 1);
    }
}
