//! Construction and analysis of cubic arc-transitive k-circulants.
//!
//! A graph is a *k-circulant* when its automorphism group contains a cyclic
//! semiregular subgroup with `k` vertex orbits. This crate builds the two
//! Cayley-graph families of cubic arc-transitive k-circulants ([`groups`],
//! [`cayley`]), computes automorphism groups of arbitrary graphs ([`aut`]),
//! and derives k-spectra, witnesses and order-bound findings ([`kcirc`]).

pub mod aut;
pub mod cayley;
pub mod construct;
pub mod graph;
pub mod groups;
pub mod kcirc;
pub mod named;
pub mod perm;
pub mod quotient;

pub use num_bigint::BigUint;

pub use aut::{automorphism_group, is_arc_transitive, symmetry_profile, tutte_type, SymmetryProfile};
pub use cayley::{cayley_graph, CayleyLabeling};
pub use graph::{parse_edgelist, parse_graph6, Format, Graph};
pub use groups::{EvenGroup, EvenParams, GroupOps, OddGroup};
pub use kcirc::{certify_k_circulant, check_order_bound, k_spectrum, SpectrumReport};
pub use perm::{CycleStructure, PermGroup, Permutation};
pub use quotient::{quotient_graph, QuotientResult};
