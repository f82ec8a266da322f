//! Quotient graphs by the orbits of a group of automorphisms, the regular
//! cover predicate, and induced actions on orbit sets.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::perm::{PermError, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("group generators are not automorphisms of the graph")]
    NotAutomorphisms,
    #[error("permutation does not map orbits onto orbits")]
    DoesNotPreservePartition,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Clause),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The hypothesis of the induced-action harness that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    NotSubgroup,
    Normality,
    Transitivity,
    CNotInG,
    CNotSemiregular,
    Coprimality,
}

impl std::fmt::Display for Clause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Clause::NotSubgroup => "N is not contained in G",
            Clause::Normality => "N is not normal in G",
            Clause::Transitivity => "G is not transitive",
            Clause::CNotInG => "C is not contained in G",
            Clause::CNotSemiregular => "C is not semiregular",
            Clause::Coprimality => "|N| and |G_v| are not coprime",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientResult {
    #[serde(skip)]
    pub quotient: Graph,
    pub orbit_map: Vec<usize>,
    pub has_intra_orbit_edges: bool,
    pub is_regular_cover: bool,
}

impl QuotientResult {
    pub fn orbit_count(&self) -> usize {
        self.quotient.n()
    }
}

/// Orbits of `n` ordered by smallest vertex, as a vertex -> orbit index map.
fn orbit_map(group: &PermGroup) -> Vec<usize> {
    let mut map = vec![0; group.degree()];
    for (i, orbit) in group.orbits().iter().enumerate() {
        for &v in orbit {
            map[v] = i;
        }
    }
    map
}

/// `Gamma / N`: loop-free; intra-orbit edges only set a flag.
pub fn quotient_graph(graph: &Graph, n: &PermGroup) -> Result<QuotientResult, QuotientError> {
    if n.degree() != graph.n() || !n.generators().iter().all(|g| graph.is_automorphism(g)) {
        return Err(QuotientError::NotAutomorphisms);
    }
    let map = orbit_map(n);
    let count = map.iter().max().map_or(0, |&m| m + 1);
    let mut edges = Vec::new();
    let mut intra = false;
    for (u, v) in graph.edges() {
        let (a, b) = (map[u], map[v]);
        if a == b {
            intra = true;
        } else {
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let quotient = Graph::from_edges(count, &edges).expect("deduplicated loop-free edges");
    let is_regular_cover = local_bijection(graph, &map, &quotient);
    Ok(QuotientResult {
        quotient,
        orbit_map: map,
        has_intra_orbit_edges: intra,
        is_regular_cover,
    })
}

/// Definitional test: for every vertex `v`, projection restricted to the
/// neighbourhood of `v` is a bijection onto the neighbourhood of `pi(v)`.
pub fn local_bijection(graph: &Graph, map: &[usize], quotient: &Graph) -> bool {
    (0..graph.n()).all(|v| {
        let mut image: Vec<usize> = graph.neighbors(v).iter().map(|&w| map[w]).collect();
        image.sort_unstable();
        let before = image.len();
        image.dedup();
        image.len() == before && image.as_slice() == quotient.neighbors(map[v])
    })
}

/// Counting test, valid when the orbits come from a group of automorphisms:
/// equal orbit sizes, no intra-orbit edges, and each adjacent orbit pair
/// joined by exactly `|orbit|` edges (a perfect matching).
pub fn regular_cover_by_counting(graph: &Graph, map: &[usize], orbit_count: usize) -> bool {
    let mut size = vec![0usize; orbit_count];
    for &o in map {
        size[o] += 1;
    }
    if size.windows(2).any(|w| w[0] != w[1]) {
        return false;
    }
    let mut between = std::collections::BTreeMap::new();
    for (u, v) in graph.edges() {
        let (a, b) = (map[u], map[v]);
        if a == b {
            return false;
        }
        *between.entry((a.min(b), a.max(b))).or_insert(0usize) += 1;
    }
    between.iter().all(|(&(a, _), &e)| e == size[a])
}

/// The permutation `C` induces on the orbits of `N`.
pub fn induced_action(c: &Permutation, n: &PermGroup) -> Result<Permutation, QuotientError> {
    if c.degree() != n.degree() {
        return Err(PermError::DegreeMismatch {
            left: n.degree(),
            right: c.degree(),
        }
        .into());
    }
    let orbits = n.orbits();
    let map = orbit_map(n);
    let mut images = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let target = map[c.apply(orbit[0])];
        if orbit.iter().any(|&v| map[c.apply(v)] != target) {
            return Err(QuotientError::DoesNotPreservePartition);
        }
        images.push(target);
    }
    Permutation::try_new(images).map_err(|_| QuotientError::DoesNotPreservePartition)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InducedVerdict {
    pub k: usize,
    pub k_prime: usize,
    pub induced_semiregular: bool,
    pub pass: bool,
}

/// Checks the induced-action statement on one instance: with `G` transitive,
/// `N` normal in `G`, `<C>` a semiregular subgroup of `G` with `k` orbits and
/// `gcd(|N|, |G_v|) = 1`, the action of `C` on `N`-orbits is semiregular with
/// `k'` orbits and `k' | k`.
pub fn induced_action_harness(
    graph: &Graph,
    c: &Permutation,
    n: &PermGroup,
    g: &PermGroup,
) -> Result<InducedVerdict, QuotientError> {
    let deg = graph.n();
    for grp in [n, g] {
        if grp.degree() != deg || !grp.generators().iter().all(|x| graph.is_automorphism(x)) {
            return Err(QuotientError::NotAutomorphisms);
        }
    }
    for x in n.generators() {
        if !g.contains(x)? {
            return Err(QuotientError::HypothesisViolated(Clause::NotSubgroup));
        }
    }
    for x in g.generators() {
        for y in n.generators() {
            if !n.contains(&x.conjugate(y))? {
                return Err(QuotientError::HypothesisViolated(Clause::Normality));
            }
        }
    }
    if !g.is_transitive() {
        return Err(QuotientError::HypothesisViolated(Clause::Transitivity));
    }
    if !g.contains(c)? {
        return Err(QuotientError::HypothesisViolated(Clause::CNotInG));
    }
    if !c.is_semiregular() {
        return Err(QuotientError::HypothesisViolated(Clause::CNotSemiregular));
    }
    let stab = g.order() / BigUint::from(deg.max(1));
    if n.order().gcd(&stab) != BigUint::from(1u32) {
        return Err(QuotientError::HypothesisViolated(Clause::Coprimality));
    }

    let k = c.cycle_structure().cycle_lengths.len();
    let induced = induced_action(c, n)?;
    let cs = induced.cycle_structure();
    let k_prime = cs.cycle_lengths.len();
    let induced_semiregular = induced.is_semiregular();
    Ok(InducedVerdict {
        k,
        k_prime,
        induced_semiregular,
        pass: induced_semiregular && k_prime > 0 && k.is_multiple_of(k_prime),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Graph {
        let edges: Vec<_> = (0..8usize)
            .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
            .filter(|&(u, v)| u < v)
            .collect();
        Graph::from_edges(8, &edges).unwrap()
    }

    fn k33() -> Graph {
        let edges: Vec<_> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        Graph::from_edges(6, &edges).unwrap()
    }

    #[test]
    fn cube_mod_antipodal_is_k4_cover() {
        let g = cube();
        let antipodal = Permutation::try_new((0..8).map(|v| v ^ 7).collect()).unwrap();
        let n = PermGroup::new(8, vec![antipodal]).unwrap();
        let q = quotient_graph(&g, &n).unwrap();
        assert_eq!((q.quotient.n(), q.quotient.edge_count()), (4, 6));
        assert!(q.quotient.is_cubic());
        assert!(q.is_regular_cover && !q.has_intra_orbit_edges);
        assert!(regular_cover_by_counting(&g, &q.orbit_map, q.orbit_count()));
    }

    #[test]
    fn k33_mod_swap_is_triangle() {
        let g = k33();
        let swap = Permutation::from_cycles(6, &[&[0, 3], &[1, 4], &[2, 5]]).unwrap();
        let n = PermGroup::new(6, vec![swap]).unwrap();
        let q = quotient_graph(&g, &n).unwrap();
        assert_eq!((q.quotient.n(), q.quotient.edge_count()), (3, 3));
        assert!(q.has_intra_orbit_edges && !q.is_regular_cover);
        assert!(!regular_cover_by_counting(&g, &q.orbit_map, q.orbit_count()));
    }

    #[test]
    fn trivial_quotient() {
        let g = k33();
        let q = quotient_graph(&g, &PermGroup::trivial(6)).unwrap();
        assert_eq!(q.quotient, g);
        assert!(q.is_regular_cover);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let bad = PermGroup::new(6, vec![Permutation::from_cycles(6, &[&[0, 1, 3]]).unwrap()]).unwrap();
        assert_eq!(
            quotient_graph(&k33(), &bad).unwrap_err(),
            QuotientError::NotAutomorphisms
        );
    }

    #[test]
    fn induced_actions() {
        let c = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        assert_eq!(induced_action(&c, &PermGroup::trivial(4)).unwrap(), c);
        let n = PermGroup::new(4, vec![Permutation::from_cycles(4, &[&[0, 1]]).unwrap()]).unwrap();
        let bad = Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
        assert_eq!(
            induced_action(&bad, &n).unwrap_err(),
            QuotientError::DoesNotPreservePartition
        );
    }
}
