//! Cayley graphs `Cay(R, S)` with a deterministic vertex labeling.
//!
//! Vertices are numbered in BFS order from the identity, iterating `S` in
//! sorted order, so vertex 0 is always the identity and the output is the
//! same on every run. Edges join `g` and `g s` for `s` in `S`.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use thiserror::Error;

use crate::graph::Graph;
use crate::groups::GroupOps;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("connection set contains the identity")]
    IdentityInS,
    #[error("connection set is not closed under inverses")]
    NotInverseClosed,
    #[error("element {0} is outside the vertex group")]
    ElementOutsideR(String),
    #[error("map does not preserve the connection set")]
    PhiDoesNotPreserveS,
    #[error("induced vertex map is not a bijection")]
    NotABijection,
}

/// Bijection between vertex indices and group elements.
#[derive(Debug, Clone)]
pub struct CayleyLabeling<E> {
    vertex_of: HashMap<E, usize>,
    elements: Vec<E>,
}

impl<E: Clone + Eq + Hash> CayleyLabeling<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn vertex_of(&self, e: &E) -> Option<usize> {
        self.vertex_of.get(e).copied()
    }

    pub fn element_of(&self, v: usize) -> &E {
        &self.elements[v]
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    /// The vertex permutation `v -> label(f(element(v)))`.
    pub fn vertex_action<F>(&self, mut f: F) -> Result<Permutation, CayleyError>
    where
        F: FnMut(&E) -> E,
        E: std::fmt::Debug,
    {
        let images = self
            .elements
            .iter()
            .map(|e| {
                let img = f(e);
                self.vertex_of(&img)
                    .ok_or_else(|| CayleyError::ElementOutsideR(format!("{img:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::try_new(images).map_err(|_| CayleyError::NotABijection)
    }
}

/// Builds `Cay(<S>, S)`; the vertex set is the closure of `S` from the identity.
pub fn cayley_graph<G: GroupOps>(
    group: &G,
    connection_set: &[G::Element],
) -> Result<(Graph, CayleyLabeling<G::Element>), CayleyError> {
    let id = group.identity();
    let mut s: Vec<G::Element> = connection_set.to_vec();
    s.sort();
    s.dedup();
    if s.contains(&id) {
        return Err(CayleyError::IdentityInS);
    }
    if s.iter().any(|e| s.binary_search(&group.inverse(e)).is_err()) {
        return Err(CayleyError::NotInverseClosed);
    }

    let mut vertex_of = HashMap::new();
    let mut elements = vec![id.clone()];
    vertex_of.insert(id, 0usize);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let g = elements[v].clone();
        for t in &s {
            let h = group.multiply(&g, t);
            let w = match vertex_of.get(&h) {
                Some(&w) => w,
                None => {
                    let w = elements.len();
                    vertex_of.insert(h.clone(), w);
                    elements.push(h);
                    adj.push(Vec::new());
                    queue.push_back(w);
                    w
                }
            };
            adj[v].push(w);
        }
    }
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
        .collect();
    let graph = Graph::from_edges(elements.len(), &edges).expect("Cayley adjacency is simple and symmetric");
    Ok((graph, CayleyLabeling { vertex_of, elements }))
}

/// Left multiplication by `g`, an automorphism of every Cayley graph on the group.
pub fn left_translation<G: GroupOps>(
    group: &G,
    labeling: &CayleyLabeling<G::Element>,
    g: &G::Element,
) -> Result<Permutation, CayleyError> {
    if labeling.vertex_of(g).is_none() {
        return Err(CayleyError::ElementOutsideR(format!("{g:?}")));
    }
    labeling.vertex_action(|z| group.multiply(g, z))
}

/// The vertex map induced by a group automorphism `phi` that fixes `S` setwise.
pub fn automorphism_from_group_automorphism<E, F>(
    labeling: &CayleyLabeling<E>,
    connection_set: &[E],
    phi: F,
) -> Result<Permutation, CayleyError>
where
    E: Clone + Eq + Hash + Ord + std::fmt::Debug,
    F: Fn(&E) -> E,
{
    let mut s: Vec<E> = connection_set.to_vec();
    s.sort();
    let mut image: Vec<E> = s.iter().map(&phi).collect();
    image.sort();
    if image != s {
        return Err(CayleyError::PhiDoesNotPreserveS);
    }
    labeling.vertex_action(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{EvenGroup, EvenParams, OddGroup};

    #[test]
    fn odd_k1_is_k33_shaped() {
        let g = OddGroup::new(1).unwrap();
        let (graph, lab) = cayley_graph(&g, &g.connection_set().unwrap()).unwrap();
        assert_eq!(graph.n(), 6);
        assert!(graph.is_cubic() && graph.is_connected());
        assert_eq!(lab.vertex_of(&g.identity()), Some(0));
        assert_eq!(graph.girth(), Some(4));
    }

    #[test]
    fn even_1_7_order_and_girth() {
        let g = EvenGroup::new(EvenParams::new(1, 7).unwrap());
        let (graph, _) = cayley_graph(&g, &g.connection_set().unwrap()).unwrap();
        assert_eq!((graph.n(), graph.girth()), (14, Some(6)));
    }

    #[test]
    fn odd_k5_has_150_vertices() {
        let g = OddGroup::new(5).unwrap();
        let (graph, _) = cayley_graph(&g, &g.connection_set().unwrap()).unwrap();
        assert_eq!(graph.n(), 150);
        assert!(graph.is_cubic());
    }

    #[test]
    fn rejects_bad_connection_sets() {
        let g = OddGroup::new(5).unwrap();
        assert_eq!(
            cayley_graph(&g, &[g.identity(), g.y()]).unwrap_err(),
            CayleyError::IdentityInS
        );
        assert_eq!(cayley_graph(&g, &[g.x()]).unwrap_err(), CayleyError::NotInverseClosed);
    }

    #[test]
    fn translations() {
        let g = OddGroup::new(1).unwrap();
        let s = g.connection_set().unwrap();
        let (graph, lab) = cayley_graph(&g, &s).unwrap();
        let id = left_translation(&g, &lab, &g.identity()).unwrap();
        assert!(id.is_identity());
        for e in lab.elements().iter().skip(1) {
            let t = left_translation(&g, &lab, e).unwrap();
            assert!(graph.is_automorphism(&t));
            assert!((0..graph.n()).all(|v| t.apply(v) != v));
        }
        let ty = left_translation(&g, &lab, &g.y()).unwrap();
        assert_eq!(ty.order(), Some(2));
        assert!(ty.is_semiregular());
        let outside = left_translation(&g, &lab, &g.sigma());
        assert!(matches!(outside, Err(CayleyError::ElementOutsideR(_))));
    }

    #[test]
    fn induced_automorphisms() {
        let eg = EvenGroup::new(EvenParams::new(1, 7).unwrap());
        let s = eg.connection_set().unwrap();
        let (graph, lab) = cayley_graph(&eg, &s).unwrap();
        let y = automorphism_from_group_automorphism(&lab, &s, |e| eg.apply_y(e)).unwrap();
        assert_eq!(y.order(), Some(3));
        assert_eq!(y.apply(0), 0);
        assert!(graph.is_automorphism(&y));
        let id = automorphism_from_group_automorphism(&lab, &s, |e| *e).unwrap();
        assert!(id.is_identity());
        let bad = automorphism_from_group_automorphism(&lab, &s, |e| eg.multiply(e, &eg.w()));
        assert_eq!(bad.unwrap_err(), CayleyError::PhiDoesNotPreserveS);

        let og = OddGroup::new(5).unwrap();
        let s = og.connection_set().unwrap();
        let (graph, lab) = cayley_graph(&og, &s).unwrap();
        let sigma = automorphism_from_group_automorphism(&lab, &s, |e| og.apply_sigma(e)).unwrap();
        assert!(graph.is_automorphism(&sigma));
        let nbrs = graph.neighbors(0).to_vec();
        let imgs: Vec<usize> = nbrs.iter().map(|&v| sigma.apply(v)).collect();
        assert!(imgs.iter().all(|v| nbrs.contains(v)));
        assert!(nbrs.iter().zip(&imgs).all(|(a, b)| a != b));
    }
}
