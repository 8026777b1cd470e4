//! Reader for a Turtle subset.
//!
//! Supported: `@prefix`/`PREFIX`, `@base`/`BASE`, IRIs, prefixed names, `a`,
//! string literals (short and long, with language tags or datatypes),
//! integer/decimal/double/boolean shorthand, `;` and `,` lists, comments and
//! `_:label` blank nodes. Collections `( ... )` and anonymous blank nodes
//! `[ ... ]` are rejected with an error.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

use super::iri::resolve_iri;
use super::lexer::{Lexer, Pos, Tok, Token};
use super::term::{RDF_TYPE, XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER};
use super::{BlankNode, Graph, Iri, Literal, RdfError, Term, Triple};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown prefix {0:?}")]
    UnknownPrefix(String),
    #[error("relative IRI <{0}> with no base IRI")]
    RelativeIri(String),
    #[error("{0} are not supported")]
    Unsupported(&'static str),
    #[error("{0}")]
    InvalidTerm(RdfError),
}

/// Parses a Turtle document into a new graph. Prefix declarations are kept
/// in the graph's prefix map.
pub fn parse_turtle(text: &str, base: Option<&Iri>) -> Result<Graph, ParseError> {
    let mut reader = Reader::new(text, false, base.map(|b| b.as_str().to_string()));
    let mut graph = Graph::new();
    loop {
        let tok = reader.peek()?.clone();
        match &tok.tok {
            Tok::Eof => break,
            _ if reader.try_directive()? => {}
            _ => reader.triples_statement(&mut graph)?,
        }
    }
    for (p, ns) in reader.prefixes {
        graph
            .set_prefix(&p, &ns)
            .map_err(|e| ParseError {
                line: 1,
                column: 1,
                kind: ParseErrorKind::InvalidTerm(e),
            })?;
    }
    Ok(graph)
}

/// A term position that may hold a variable when reading queries.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Node {
    Term(Term),
    Var(String),
}

pub(crate) struct Reader<'a> {
    lexer: Lexer<'a>,
    lookahead: Option<Token>,
    last_end: Pos,
    pub prefixes: BTreeMap<String, String>,
    /// Consulted when a prefix has not been declared in the document.
    pub fallback: BTreeMap<String, String>,
    base: Option<String>,
}

impl<'a> Reader<'a> {
    pub fn new(text: &'a str, allow_vars: bool, base: Option<String>) -> Self {
        Reader {
            lexer: Lexer::new(text, allow_vars),
            lookahead: None,
            last_end: Pos { line: 1, column: 1 },
            prefixes: BTreeMap::new(),
            fallback: BTreeMap::new(),
            base,
        }
    }

    pub fn peek(&mut self) -> Result<&Token, ParseError> {
        if self.lookahead.is_none() {
            self.lookahead = Some(self.lexer.next_token()?);
        }
        Ok(self.lookahead.as_ref().unwrap())
    }

    pub fn next(&mut self) -> Result<Token, ParseError> {
        self.peek()?;
        let tok = self.lookahead.take().unwrap();
        self.last_end = tok.pos;
        Ok(tok)
    }

    pub fn error_at(pos: Pos, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: pos.line,
            column: pos.column,
            kind,
        }
    }

    pub fn syntax(pos: Pos, reason: impl Into<String>) -> ParseError {
        Self::error_at(pos, ParseErrorKind::Syntax(reason.into()))
    }

    pub fn expect_punct(&mut self, c: char, context: &str) -> Result<(), ParseError> {
        let tok = self.next()?;
        if tok.tok == Tok::Punct(c) {
            Ok(())
        } else {
            Err(Self::syntax(
                tok.pos,
                format!("expected '{c}' {context}, found {}", describe(&tok.tok)),
            ))
        }
    }

    pub fn is_punct(&mut self, c: char) -> Result<bool, ParseError> {
        Ok(self.peek()?.tok == Tok::Punct(c))
    }

    /// Consumes a prefix or base directive if one is next.
    pub fn try_directive(&mut self) -> Result<bool, ParseError> {
        let (sparql_style, is_prefix) = match &self.peek()?.tok {
            Tok::At(w) if w == "prefix" => (false, true),
            Tok::At(w) if w == "base" => (false, false),
            Tok::Word(w) if w.eq_ignore_ascii_case("prefix") => (true, true),
            Tok::Word(w) if w.eq_ignore_ascii_case("base") => (true, false),
            _ => return Ok(false),
        };
        self.next()?;
        if is_prefix {
            let tok = self.next()?;
            let Tok::PName(prefix, local) = tok.tok else {
                return Err(Self::syntax(tok.pos, "expected a prefix name such as 'ex:'"));
            };
            if !local.is_empty() {
                return Err(Self::syntax(tok.pos, "prefix declaration name must end with ':'"));
            }
            let ns = self.iri_ref_token()?;
            self.prefixes.insert(prefix, ns.into_string());
        } else {
            self.base = Some(self.iri_ref_token()?.into_string());
        }
        if !sparql_style {
            self.expect_punct('.', "after directive")?;
        }
        Ok(true)
    }

    fn iri_ref_token(&mut self) -> Result<Iri, ParseError> {
        let tok = self.next()?;
        match tok.tok {
            Tok::IriRef(raw) => self.resolve(raw, tok.pos),
            other => Err(Self::syntax(tok.pos, format!("expected an IRI, found {}", describe(&other)))),
        }
    }

    fn resolve(&self, raw: String, pos: Pos) -> Result<Iri, ParseError> {
        let value = match Iri::new(raw.clone()) {
            Ok(iri) => return Ok(iri),
            Err(_) => match &self.base {
                Some(base) => resolve_iri(base, &raw),
                None => return Err(Self::error_at(pos, ParseErrorKind::RelativeIri(raw))),
            },
        };
        Iri::new(value).map_err(|e| Self::error_at(pos, ParseErrorKind::InvalidTerm(e)))
    }

    fn expand(&self, prefix: &str, local: &str, pos: Pos) -> Result<Iri, ParseError> {
        let ns = self
            .prefixes
            .get(prefix)
            .or_else(|| self.fallback.get(prefix))
            .ok_or_else(|| Self::error_at(pos, ParseErrorKind::UnknownPrefix(prefix.to_string())))?;
        let mut full = ns.clone();
        full.push_str(local);
        Iri::new(full).map_err(|e| Self::error_at(pos, ParseErrorKind::InvalidTerm(e)))
    }

    fn unsupported(tok: &Token) -> Option<ParseError> {
        match tok.tok {
            Tok::Punct('[') => Some(Self::error_at(
                tok.pos,
                ParseErrorKind::Unsupported("anonymous blank nodes"),
            )),
            Tok::Punct('(') => Some(Self::error_at(
                tok.pos,
                ParseErrorKind::Unsupported("collections"),
            )),
            _ => None,
        }
    }

    pub fn subject(&mut self) -> Result<Node, ParseError> {
        let tok = self.next()?;
        if let Some(e) = Self::unsupported(&tok) {
            return Err(e);
        }
        match tok.tok {
            Tok::IriRef(raw) => Ok(Node::Term(Term::Iri(self.resolve(raw, tok.pos)?))),
            Tok::PName(p, l) => Ok(Node::Term(Term::Iri(self.expand(&p, &l, tok.pos)?))),
            Tok::Blank(label) => blank(label, tok.pos).map(Node::Term),
            Tok::Var(v) => Ok(Node::Var(v)),
            other => Err(Self::syntax(
                tok.pos,
                format!("expected a subject, found {}", describe(&other)),
            )),
        }
    }

    pub fn verb(&mut self) -> Result<Node, ParseError> {
        let tok = self.next()?;
        match tok.tok {
            Tok::Word(w) if w == "a" => Ok(Node::Term(Term::Iri(Iri::new(RDF_TYPE).unwrap()))),
            Tok::IriRef(raw) => Ok(Node::Term(Term::Iri(self.resolve(raw, tok.pos)?))),
            Tok::PName(p, l) => Ok(Node::Term(Term::Iri(self.expand(&p, &l, tok.pos)?))),
            Tok::Var(v) => Ok(Node::Var(v)),
            other => Err(Self::syntax(
                tok.pos,
                format!("expected a predicate, found {}", describe(&other)),
            )),
        }
    }

    pub fn object(&mut self) -> Result<Node, ParseError> {
        let tok = self.next()?;
        if let Some(e) = Self::unsupported(&tok) {
            return Err(e);
        }
        let pos = tok.pos;
        let term = match tok.tok {
            Tok::IriRef(raw) => Term::Iri(self.resolve(raw, pos)?),
            Tok::PName(p, l) => Term::Iri(self.expand(&p, &l, pos)?),
            Tok::Blank(label) => blank(label, pos)?,
            Tok::Var(v) => return Ok(Node::Var(v)),
            Tok::Str(lexical) => match &self.peek()?.tok {
                Tok::At(_) => {
                    let tag_tok = self.next()?;
                    let Tok::At(tag) = tag_tok.tok else { unreachable!() };
                    Term::Literal(
                        Literal::with_language(lexical, &tag)
                            .map_err(|e| Self::error_at(tag_tok.pos, ParseErrorKind::InvalidTerm(e)))?,
                    )
                }
                Tok::DoubleCaret => {
                    self.next()?;
                    let dt_tok = self.next()?;
                    let dt = match dt_tok.tok {
                        Tok::IriRef(raw) => self.resolve(raw, dt_tok.pos)?,
                        Tok::PName(p, l) => self.expand(&p, &l, dt_tok.pos)?,
                        other => {
                            return Err(Self::syntax(
                                dt_tok.pos,
                                format!("expected a datatype IRI, found {}", describe(&other)),
                            ))
                        }
                    };
                    Term::Literal(Literal::typed(lexical, dt))
                }
                _ => Term::Literal(Literal::simple(lexical)),
            },
            Tok::Integer(s) => typed(s, XSD_INTEGER),
            Tok::Decimal(s) => typed(s, XSD_DECIMAL),
            Tok::Double(s) => typed(s, XSD_DOUBLE),
            Tok::Word(w) if w == "true" || w == "false" => typed(w, XSD_BOOLEAN),
            other => {
                return Err(Self::syntax(
                    pos,
                    format!("expected an object, found {}", describe(&other)),
                ))
            }
        };
        Ok(Node::Term(term))
    }

    /// `subject predicateObjectList '.'`
    fn triples_statement(&mut self, graph: &mut Graph) -> Result<(), ParseError> {
        let subject_pos = self.peek()?.pos;
        let Node::Term(subject) = self.subject()? else {
            unreachable!("variables are not lexed in Turtle mode")
        };
        if matches!(subject, Term::Literal(_)) {
            return Err(Self::syntax(subject_pos, "a literal cannot be a subject"));
        }
        self.predicate_object_list(|reader, p, o| {
            let (Node::Term(p), Node::Term(o)) = (p, o) else {
                unreachable!("variables are not lexed in Turtle mode")
            };
            let triple = Triple::new(subject.clone(), p, o)
                .map_err(|e| Self::error_at(reader.last_end, ParseErrorKind::InvalidTerm(e)))?;
            graph.insert(triple);
            Ok(())
        })?;
        self.expect_punct('.', "to end the statement")
    }

    /// `verb objectList (';' (verb objectList)?)*`, calling `emit` for every
    /// (predicate, object) pair.
    pub fn predicate_object_list(
        &mut self,
        mut emit: impl FnMut(&Self, Node, Node) -> Result<(), ParseError>,
    ) -> Result<(), ParseError> {
        loop {
            let verb = self.verb()?;
            loop {
                let object = self.object()?;
                emit(self, verb.clone(), object)?;
                if self.is_punct(',')? {
                    self.next()?;
                } else {
                    break;
                }
            }
            if !self.is_punct(';')? {
                return Ok(());
            }
            while self.is_punct(';')? {
                self.next()?;
            }
            // A trailing ';' is allowed before the terminator.
            if matches!(self.peek()?.tok, Tok::Punct('.' | '}' | ']') | Tok::Eof) {
                return Ok(());
            }
        }
    }
}

fn typed(lexical: String, datatype: &str) -> Term {
    Term::Literal(Literal::typed(lexical, Iri::new(datatype).unwrap()))
}

fn blank(label: String, pos: Pos) -> Result<Term, ParseError> {
    BlankNode::new(label)
        .map(Term::BlankNode)
        .map_err(|e| Reader::error_at(pos, ParseErrorKind::InvalidTerm(e)))
}

pub(crate) fn describe(tok: &Tok) -> String {
    match tok {
        Tok::IriRef(i) => format!("IRI <{i}>"),
        Tok::PName(p, l) => format!("'{p}:{l}'"),
        Tok::Blank(b) => format!("blank node _:{b}"),
        Tok::Var(v) => format!("variable ?{v}"),
        Tok::Str(_) => "string literal".to_string(),
        Tok::At(w) => format!("'@{w}'"),
        Tok::DoubleCaret => "'^^'".to_string(),
        Tok::Integer(s) | Tok::Decimal(s) | Tok::Double(s) => format!("number {s}"),
        Tok::Word(w) => format!("'{w}'"),
        Tok::Punct(c) => format!("'{c}'"),
        Tok::Eof => "end of input".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PREFIXES: &str = "@prefix metanet: <https://w3id.org/framester/metanet/schema/> . \
        @prefix metaphordata: <https://w3id.org/framester/metanet/metaphors/> . \
        @prefix framedata: <https://w3id.org/framester/metanet/frames/> . ";

    #[test]
    fn empty_document() {
        assert_eq!(parse_turtle("", None).unwrap().len(), 0);
        assert_eq!(parse_turtle("  # only a comment\n", None).unwrap().len(), 0);
    }

    #[test]
    fn single_metaphor_triple() {
        let text = alloc::format!(
            "{PREFIXES}metaphordata:CRIME_IS_A_DISEASE metanet:hasSourceFrame framedata:Disease ."
        );
        let g = parse_turtle(&text, None).unwrap();
        assert_eq!(g.len(), 1);
        let t = g.iter().next().unwrap();
        assert!(t.predicate.as_iri().unwrap().as_str().ends_with("hasSourceFrame"));
        assert_eq!(g.prefixes().len(), 3);
        assert_eq!(
            g.prefixes()["framedata"],
            "https://w3id.org/framester/metanet/frames/"
        );
    }

    #[test]
    fn missing_object_reports_position_after_predicate() {
        let stmt = "metaphordata:X metanet:hasSourceFrame";
        let text = alloc::format!("{PREFIXES}\n{stmt}");
        let err = parse_turtle(&text, None).unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.column, stmt.chars().count() + 1);
        assert!(matches!(err.kind, ParseErrorKind::Syntax(ref m) if m.contains("object")));
    }

    #[test]
    fn unknown_prefix() {
        let err = parse_turtle("nope:a nope:b nope:c .", None).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownPrefix("nope".into()));
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn relative_iri_needs_base() {
        let err = parse_turtle("<a> <http://p> <b> .", None).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::RelativeIri(_)));
        let base = Iri::new("http://example.org/dir/doc").unwrap();
        let g = parse_turtle("<a> <http://p> <../b> .", Some(&base)).unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject.as_iri().unwrap().as_str(), "http://example.org/dir/a");
        assert_eq!(t.object.as_iri().unwrap().as_str(), "http://example.org/b");
        let g = parse_turtle("@base <http://x.org/> . <a> <p> <b> .", None).unwrap();
        assert_eq!(g.iter().next().unwrap().predicate.as_iri().unwrap().as_str(), "http://x.org/p");
    }

    #[test]
    fn collections_and_anonymous_blank_nodes_are_rejected() {
        let err = parse_turtle("<http://a> <http://p> ( <http://b> ) .", None).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Unsupported("collections"));
        assert_eq!(err.column, 23);
        let err = parse_turtle("<http://a> <http://p> [ <http://q> 1 ] .", None).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Unsupported("anonymous blank nodes"));
        let err = parse_turtle("[] <http://p> 1 .", None).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Unsupported("anonymous blank nodes"));
    }

    #[test]
    fn lists_literals_and_keywords() {
        let text = r#"
            PREFIX ex: <http://example.org/>
            @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
            ex:s a ex:C ;
                ex:label "plain", "tagged"@en-GB, "typed"^^xsd:token ;
                ex:n 42, -1.5, 1e3, true ;
                ex:long """multi
line "quoted" text""" ;
                ex:esc 'it\'s é' ;
                ex:b _:node1 .
            _:node1 ex:p ex:o.
        "#;
        let g = parse_turtle(text, None).unwrap();
        assert_eq!(g.len(), 12);
        let ex = |l: &str| Term::iri(&alloc::format!("http://example.org/{l}")).unwrap();
        let s = ex("s");
        let ns: alloc::vec::Vec<_> = g.objects(&s, &ex("n")).cloned().collect();
        assert!(ns.contains(&typed("42".into(), XSD_INTEGER)));
        assert!(ns.contains(&typed("-1.5".into(), XSD_DECIMAL)));
        assert!(ns.contains(&typed("1e3".into(), XSD_DOUBLE)));
        assert!(ns.contains(&typed("true".into(), XSD_BOOLEAN)));
        let long: alloc::vec::Vec<_> = g.objects(&s, &ex("long")).cloned().collect();
        assert_eq!(long, [Term::Literal(Literal::simple("multi\nline \"quoted\" text"))]);
        let esc: alloc::vec::Vec<_> = g.objects(&s, &ex("esc")).cloned().collect();
        assert_eq!(esc, [Term::Literal(Literal::simple("it's é"))]);
        let tagged = Term::Literal(Literal::with_language("tagged", "en-GB").unwrap());
        assert!(g.objects(&s, &ex("label")).any(|o| *o == tagged));
        // trailing dot directly after a prefixed name
        assert_eq!(g.objects(&Term::BlankNode(BlankNode::new("node1").unwrap()), &ex("p")).count(), 1);
    }

    #[test]
    fn literal_subject_is_an_error() {
        assert!(parse_turtle("\"x\" <http://p> <http://o> .", None).is_err());
    }

    #[test]
    fn local_names_with_dots_and_escapes() {
        let g = parse_turtle(
            "@prefix ex: <http://e/> . ex:a.b ex:p ex:c\\,d , ex:e%20f .",
            None,
        )
        .unwrap();
        let mut objs: alloc::vec::Vec<_> = g.iter().map(|t| t.object.clone()).collect();
        objs.sort();
        assert_eq!(objs[0], Term::iri("http://e/c,d").unwrap());
        assert_eq!(objs[1], Term::iri("http://e/e%20f").unwrap());
        assert_eq!(g.iter().next().unwrap().subject, &Term::iri("http://e/a.b").unwrap());
    }
}
