//! RDF substrate: terms, indexed graph, Turtle subset codec, BGP matching.

use alloc::string::String;

mod graph;
mod iri;
mod lexer;
mod query;
mod sparql;
mod term;
mod turtle;
mod write;

pub use graph::{graphs_equal, Graph, IndexOrder, TripleRef};
pub use iri::resolve_iri;
pub use query::{match_bgp, match_pattern, Binding, BgpQuery, PatternGroup, PatternTerm, TriplePattern, Variable};
pub use sparql::{parse_query, well_known_prefixes};
pub use term::{
    Annotation, BlankNode, Iri, Literal, Term, RDF_TYPE, XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE,
    XSD_INTEGER,
};
pub use turtle::{parse_turtle, ParseError, ParseErrorKind};
pub use write::{serialize_ntriples, serialize_turtle};

/// Triple is a value type; construction enforces the RDF position rules.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Term,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, RdfError> {
        if matches!(subject, Term::Literal(_)) {
            return Err(RdfError::LiteralSubject);
        }
        if !matches!(predicate, Term::Iri(_)) {
            return Err(RdfError::NonIriPredicate);
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn as_ref(&self) -> TripleRef<'_> {
        TripleRef {
            subject: &self.subject,
            predicate: &self.predicate,
            object: &self.object,
        }
    }
}

impl core::fmt::Display for Triple {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// Triples serialize as an N-Triples line.
#[cfg(feature = "serde")]
impl serde::Serialize for Triple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RdfError {
    #[error("not an absolute IRI: {0:?}")]
    InvalidIri(String),
    #[error("invalid blank node label: {0:?}")]
    InvalidBlankNode(String),
    #[error("invalid language tag: {0:?}")]
    InvalidLanguageTag(String),
    #[error("invalid prefix name: {0:?}")]
    InvalidPrefix(String),
    #[error("a literal cannot be a triple subject")]
    LiteralSubject,
    #[error("a triple predicate must be an IRI")]
    NonIriPredicate,
    #[error("graph comparison is unsupported when blank nodes are present")]
    BlankNodeComparison,
    #[error("variable names must be non-empty")]
    EmptyVariable,
    #[error("projected variable ?{0} does not occur in any pattern")]
    UnknownProjectedVariable(String),
    #[error("projected variable ?{0} is not bound by every solution (it only occurs in one UNION branch)")]
    PartiallyBoundVariable(String),
}
