//! The two Cayley-graph constructions, with the permutations that certify
//! them: left translations by `S`, the automorphism induced by the order-3
//! outer automorphism, and the generator of the semiregular cyclic subgroup.

use serde::Serialize;
use thiserror::Error;

use crate::cayley::{automorphism_from_group_automorphism, cayley_graph, left_translation, CayleyError};
use crate::graph::Graph;
use crate::groups::{EvenGroup, EvenParams, GroupError, GroupOps, OddGroup};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Params(#[from] GroupError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Even { m: u64, p: u64, alpha: u64 },
    Odd { k: u64 },
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub family: Family,
    pub graph: Graph,
    /// Number of orbits of the semiregular cyclic subgroup `C`.
    pub k: usize,
    pub c_order: u64,
    /// `C`'s generator as a group element, rendered in normal form.
    pub c_element: String,
    pub c_generator: Permutation,
    pub connection_set: Vec<String>,
    /// Left translations by the members of `S`; they generate `R`'s regular action.
    pub translations: Vec<Permutation>,
    /// Vertex map induced by `y` (even family) or `sigma` (odd family).
    pub outer: Permutation,
}

impl Construction {
    /// The regular translation group `R`.
    pub fn translation_group(&self) -> PermGroup {
        PermGroup::new(self.graph.n(), self.translations.clone()).expect("degree matches")
    }

    /// `<translations, outer>`, arc-transitive on the graph.
    pub fn arc_group(&self) -> PermGroup {
        let mut gens = self.translations.clone();
        gens.push(self.outer.clone());
        PermGroup::new(self.graph.n(), gens).expect("degree matches")
    }
}

pub fn construct_even(m: u64, p: u64) -> Result<Construction, ConstructError> {
    let params = EvenParams::new(m, p)?;
    let group = EvenGroup::new(params);
    let s = group.connection_set()?;
    let (graph, labeling) = cayley_graph(&group, &s)?;
    let translations = s
        .iter()
        .map(|e| left_translation(&group, &labeling, e))
        .collect::<Result<Vec<_>, _>>()?;
    let outer = automorphism_from_group_automorphism(&labeling, &s, |e| group.apply_y(e))?;
    let (c, c_order) = group.semiregular_generator();
    let c_generator = left_translation(&group, &labeling, &c)?;
    Ok(Construction {
        family: Family::Even {
            m,
            p,
            alpha: params.alpha,
        },
        k: graph.n() / c_order as usize,
        graph,
        c_order,
        c_element: c.to_string(),
        c_generator,
        connection_set: s.iter().map(ToString::to_string).collect(),
        translations,
        outer,
    })
}

pub fn construct_odd(k: u64) -> Result<Construction, ConstructError> {
    if k.is_multiple_of(2) {
        return Err(GroupError::EvenK(k).into());
    }
    let group = OddGroup::new(k)?;
    let s = group.connection_set()?;
    let (graph, labeling) = cayley_graph(&group, &s)?;
    let translations = s
        .iter()
        .map(|e| left_translation(&group, &labeling, e))
        .collect::<Result<Vec<_>, _>>()?;
    let outer = automorphism_from_group_automorphism(&labeling, &s, |e| group.apply_sigma(e))?;
    let (c, c_order) = group.semiregular_generator()?;
    // C's generator involves sigma, so it acts as translation composed with sigma^-1
    let c_generator = labeling.vertex_action(|z| group.act_on_r(&c, z))?;
    debug_assert_eq!(group.identity(), *labeling.element_of(0));
    Ok(Construction {
        family: Family::Odd { k },
        k: graph.n() / c_order as usize,
        graph,
        c_order,
        c_element: c.to_string(),
        c_generator,
        connection_set: s.iter().map(ToString::to_string).collect(),
        translations,
        outer,
    })
}
