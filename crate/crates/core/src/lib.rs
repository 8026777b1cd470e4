//! Conceptual-metaphor knowledge graph engine.
//!
//! The crate is `no_std` with `alloc`. It contains everything that is pure
//! computation over in-memory data:
//!
//! - [`rdf`]: terms, an indexed triple store, a Turtle subset reader, Turtle
//!   and N-Triples writers, and a basic-graph-pattern matcher with a small
//!   SELECT text syntax.
//! - [`schema`]: projection of a graph into frames, roles, lexical units,
//!   metaphors and alignments, plus the schema validator and traversals.
//! - [`blending`]: frame composition (merge and metaphoric blend) and
//!   occurrence blending under an identification policy.
//! - [`generation`]: metaphor lexicalization, phrase explanation, novel
//!   metaphor proposal and alignment suggestions.
//!
//! File IO, the CLI and JSON formats live in the `afkg` crate.
#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod blending;
pub mod generation;
pub mod rdf;
pub mod schema;

mod hash;
pub mod ns;

pub use rdf::{BgpQuery, Graph, Iri, Literal, Term, Triple, TriplePattern};
pub use schema::{build_kb, validate_kb, KnowledgeBase, Vocab};

