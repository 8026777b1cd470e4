use alloc::borrow::ToOwned;
use alloc::string::String;
use core::fmt;

use super::RdfError;

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";

/// An absolute IRI.
///
/// Construction checks for a scheme followed by `:` and rejects characters
/// that cannot appear inside `<...>` in Turtle, so every stored IRI can be
/// written back without escaping.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, RdfError> {
        let value = value.into();
        if !is_absolute(&value) {
            return Err(RdfError::InvalidIri(value));
        }
        if value.chars().any(forbidden_in_iri) {
            return Err(RdfError::InvalidIri(value));
        }
        Ok(Iri(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Text after the last `#` or `/`, or the whole IRI when neither occurs
    /// after the scheme.
    pub fn local_name(&self) -> &str {
        let s = self.0.as_str();
        match s.rfind(['#', '/']) {
            Some(i) if i + 1 < s.len() => &s[i + 1..],
            _ => s.rsplit(':').next().unwrap_or(s),
        }
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

fn is_absolute(s: &str) -> bool {
    let Some(colon) = s.find(':') else {
        return false;
    };
    let scheme = &s[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

pub(crate) fn forbidden_in_iri(c: char) -> bool {
    c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}

/// A blank node label, without the `_:` prefix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self, RdfError> {
        let label = label.into();
        let valid = !label.is_empty()
            && !label.ends_with('.')
            && label
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'));
        if !valid {
            return Err(RdfError::InvalidBlankNode(label));
        }
        Ok(BlankNode(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

/// Language tag or datatype of a literal. A literal carries at most one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Annotation {
    None,
    Language(String),
    Datatype(Iri),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    annotation: Annotation,
}

impl Literal {
    pub fn simple(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            annotation: Annotation::None,
        }
    }

    pub fn with_language(lexical: impl Into<String>, tag: &str) -> Result<Self, RdfError> {
        let valid = tag.split('-').enumerate().all(|(i, part)| {
            !part.is_empty()
                && if i == 0 {
                    part.chars().all(|c| c.is_ascii_alphabetic())
                } else {
                    part.chars().all(|c| c.is_ascii_alphanumeric())
                }
        });
        if !valid {
            return Err(RdfError::InvalidLanguageTag(tag.to_owned()));
        }
        Ok(Literal {
            lexical: lexical.into(),
            annotation: Annotation::Language(tag.to_owned()),
        })
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: lexical.into(),
            annotation: Annotation::Datatype(datatype),
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn language(&self) -> Option<&str> {
        match &self.annotation {
            Annotation::Language(tag) => Some(tag),
            _ => None,
        }
    }

    pub fn datatype(&self) -> Option<&Iri> {
        match &self.annotation {
            Annotation::Datatype(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn annotation(&self) -> &Annotation {
        &self.annotation
    }
}

/// An RDF term.
///
/// The derived ordering is the canonical term order used for serialization
/// and query output: IRIs by codepoint, then blank nodes by label, then
/// literals by lexical form (ties broken by language tag, then datatype).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    BlankNode(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn iri(value: &str) -> Result<Self, RdfError> {
        Iri::new(value).map(Term::Iri)
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::BlankNode(b)
    }
}

/// N-Triples rendering.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{}>", iri.as_str()),
            Term::BlankNode(b) => write!(f, "_:{}", b.label()),
            Term::Literal(lit) => {
                f.write_str("\"")?;
                write_escaped(f, lit.lexical())?;
                f.write_str("\"")?;
                match lit.annotation() {
                    Annotation::None => Ok(()),
                    Annotation::Language(tag) => write!(f, "@{tag}"),
                    Annotation::Datatype(dt) => write!(f, "^^<{}>", dt.as_str()),
                }
            }
        }
    }
}

pub(crate) fn write_escaped(out: &mut impl fmt::Write, s: &str) -> fmt::Result {
    for c in s.chars() {
        match c {
            '"' => out.write_str("\\\"")?,
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\r' => out.write_str("\\r")?,
            '\t' => out.write_str("\\t")?,
            c if (c as u32) < 0x20 || c == '\u{7f}' => write!(out, "\\u{:04X}", c as u32)?,
            c => out.write_char(c)?,
        }
    }
    Ok(())
}

#[cfg(feature = "serde")]
mod serde_impls {
    use super::{Iri, Term};
    use alloc::string::ToString;
    use serde::{Serialize, Serializer};

    impl Serialize for Iri {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(self.as_str())
        }
    }

    /// Terms serialize as their N-Triples text.
    impl Serialize for Term {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&self.to_string())
        }
    }
}
