//! Circuits over partial orders: gates form a poset, inputs are attached
//! below gates and outputs above them, and morphisms are order-preserving
//! maps that may only advance inputs and delay outputs.
//!
//! The crate covers
//! - finite posets ([`order`]) and relations between inputs and outputs ([`relation`]),
//! - circuits and their connectivity ([`circuit`]),
//! - congruences, quotients and atomic decompositions ([`congruence`]),
//! - morphisms, their classification, search and factorisation
//!   ([`morphism`], [`search`], [`factorise`]),
//! - the concept lattice and basic circuit of a relation ([`galois`]),
//! - a small text format and DOT output ([`text`]),
//! - random and exhaustive generators used by tests and benchmarks ([`generate`]).

pub mod circuit;
pub mod congruence;
pub mod error;
pub mod factorise;
pub mod galois;
pub mod generate;
pub mod morphism;
pub mod order;
pub mod relation;
pub mod search;
pub mod text;

pub use circuit::Circuit;
pub use congruence::{Equivalence, atomic_decomposition, quotient_circuit, quotient_poset};
pub use error::{Error, Result};
pub use factorise::{Factorisation, factorise};
pub use galois::{
    LatticeVariant, basic_circuit, canonical_morphism_from_basic, canonical_morphism_to_lattice,
    concept_lattice,
};
pub use morphism::{ElementaryKind, Morphism, Violation, classify_elementary};
pub use order::Poset;
pub use relation::Relation;
pub use search::{endomorphisms, find_isomorphism, find_morphism, syntactically_equivalent};
