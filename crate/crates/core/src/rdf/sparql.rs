//! Plain-text SELECT queries.
//!
//! ```text
//! prefix metanet: <https://w3id.org/framester/metanet/schema/>
//! SELECT DISTINCT ?ssyn ?tsyn
//! WHERE {
//!     ?m metanet:hasSourceFrame ?s ; metanet:hasTargetFrame ?t .
//!     { ?ssyn a wn30schema:AdjectiveSynset } UNION { ?ssyn a wn30schema:AdjectiveSatelliteSynset }
//!     ?tsyn a wn30schema:NounSynset }
//! ```
//!
//! Keywords are case-insensitive. `SELECT *` projects every variable bound by
//! all solutions. Supported body blocks are triple patterns (Turtle-style `;`
//! and `,` lists), plain `{ ... }` groups, and `{ ... } UNION { ... }` with
//! exactly two branches. Prefixes not declared in the text are looked up in
//! the fallback map passed by the caller.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lexer::Tok;
use super::query::{BgpQuery, PatternGroup, PatternTerm, TriplePattern, Variable};
use super::turtle::{describe, Node, ParseError, ParseErrorKind, Reader};
use super::Term;

/// Prefixes that are predeclared for queries (rdf, rdfs, xsd, owl, skos, and
/// the metaphor, FrameNet and WordNet schema namespaces).
pub fn well_known_prefixes() -> BTreeMap<String, String> {
    crate::ns::WELL_KNOWN
        .iter()
        .map(|(p, ns)| (p.to_string(), ns.to_string()))
        .collect()
}

fn is_word(tok: &Tok, word: &str) -> bool {
    matches!(tok, Tok::Word(w) if w.eq_ignore_ascii_case(word))
}

fn to_pattern_term(node: Node) -> PatternTerm {
    match node {
        Node::Term(t) => PatternTerm::Term(t),
        Node::Var(v) => PatternTerm::Variable(Variable::new(v).expect("lexer yields non-empty names")),
    }
}

pub fn parse_query(text: &str, fallback: &BTreeMap<String, String>) -> Result<BgpQuery, ParseError> {
    let mut r = Reader::new(text, true, None);
    r.fallback = fallback.clone();
    while r.try_directive()? {}

    let tok = r.next()?;
    if !is_word(&tok.tok, "select") {
        return Err(Reader::syntax(tok.pos, format!("expected SELECT, found {}", describe(&tok.tok))));
    }
    let mut distinct = false;
    if is_word(&r.peek()?.tok, "distinct") {
        r.next()?;
        distinct = true;
    }
    let projection = if r.is_punct('*')? {
        r.next()?;
        None
    } else {
        let mut vars = Vec::new();
        while let Tok::Var(_) = r.peek()?.tok {
            let Tok::Var(name) = r.next()?.tok else { unreachable!() };
            vars.push(Variable::new(name).expect("lexer yields non-empty names"));
        }
        if vars.is_empty() {
            let tok = r.peek()?.clone();
            return Err(Reader::syntax(tok.pos, "expected '*' or at least one variable after SELECT"));
        }
        Some(vars)
    };
    if is_word(&r.peek()?.tok, "where") {
        r.next()?;
    }
    let open = r.peek()?.pos;
    r.expect_punct('{', "to open the WHERE clause")?;

    let mut groups = Vec::new();
    let mut current: Vec<TriplePattern> = Vec::new();
    loop {
        let tok = r.peek()?.clone();
        match tok.tok {
            Tok::Punct('}') => {
                r.next()?;
                break;
            }
            Tok::Eof => return Err(Reader::syntax(tok.pos, "unterminated WHERE clause")),
            Tok::Punct('.') => {
                r.next()?;
            }
            Tok::Punct('{') => {
                let first = braced(&mut r)?;
                if is_word(&r.peek()?.tok, "union") {
                    r.next()?;
                    let second = braced(&mut r)?;
                    if is_word(&r.peek()?.tok, "union") {
                        let pos = r.peek()?.pos;
                        return Err(Reader::error_at(
                            pos,
                            ParseErrorKind::Unsupported("UNION chains longer than two branches"),
                        ));
                    }
                    if !current.is_empty() {
                        groups.push(PatternGroup::Basic(core::mem::take(&mut current)));
                    }
                    groups.push(PatternGroup::Union(first, second));
                } else {
                    current.extend(first);
                }
            }
            _ => triples_same_subject(&mut r, &mut current)?,
        }
    }
    if !current.is_empty() {
        groups.push(PatternGroup::Basic(current));
    }
    let end = r.next()?;
    if end.tok != Tok::Eof {
        return Err(Reader::syntax(end.pos, format!("unexpected {} after query", describe(&end.tok))));
    }
    BgpQuery::new(groups, projection, distinct)
        .map_err(|e| Reader::error_at(open, ParseErrorKind::InvalidTerm(e)))
}

fn braced(r: &mut Reader<'_>) -> Result<Vec<TriplePattern>, ParseError> {
    r.expect_punct('{', "to open a group")?;
    let mut patterns = Vec::new();
    loop {
        let tok = r.peek()?.clone();
        match tok.tok {
            Tok::Punct('}') => {
                r.next()?;
                return Ok(patterns);
            }
            Tok::Punct('.') => {
                r.next()?;
            }
            Tok::Punct('{') => {
                return Err(Reader::error_at(tok.pos, ParseErrorKind::Unsupported("nested groups")))
            }
            Tok::Eof => return Err(Reader::syntax(tok.pos, "unterminated group")),
            _ => triples_same_subject(r, &mut patterns)?,
        }
    }
}

fn triples_same_subject(r: &mut Reader<'_>, out: &mut Vec<TriplePattern>) -> Result<(), ParseError> {
    let pos = r.peek()?.pos;
    let subject = r.subject()?;
    if matches!(subject, Node::Term(Term::Literal(_))) {
        return Err(Reader::syntax(pos, "a literal cannot be a subject"));
    }
    let subject = to_pattern_term(subject);
    r.predicate_object_list(|_, p, o| {
        out.push(TriplePattern::new(subject.clone(), to_pattern_term(p), to_pattern_term(o)));
        Ok(())
    })
}
