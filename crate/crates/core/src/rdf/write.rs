use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::Write;

use super::term::{write_escaped, Annotation, RDF_TYPE};
use super::{Graph, Iri, Term};

/// Deterministic Turtle output.
///
/// Every prefix in the graph's map is declared, sorted by prefix name.
/// Triples are sorted by (subject, predicate, object) term order and grouped
/// with `;` and `,`. IRIs are abbreviated with the longest matching namespace
/// whose remainder is a valid local name; otherwise written in `<...>`.
pub fn serialize_turtle(graph: &Graph) -> String {
    let mut out = String::new();
    let prefixes = graph.prefixes();
    for (p, ns) in prefixes {
        let _ = writeln!(out, "@prefix {p}: <{ns}> .");
    }
    let triples = graph.sorted();
    if !prefixes.is_empty() && !triples.is_empty() {
        out.push('\n');
    }
    let mut i = 0;
    while i < triples.len() {
        let subject = triples[i].subject;
        write_term(&mut out, subject, prefixes);
        out.push('\n');
        let mut first_pred = true;
        while i < triples.len() && triples[i].subject == subject {
            let predicate = triples[i].predicate;
            if !first_pred {
                out.push_str(" ;\n");
            }
            first_pred = false;
            out.push_str("    ");
            if predicate.as_iri().is_some_and(|p| p.as_str() == RDF_TYPE) {
                out.push('a');
            } else {
                write_term(&mut out, predicate, prefixes);
            }
            out.push(' ');
            let mut first_obj = true;
            while i < triples.len() && triples[i].subject == subject && triples[i].predicate == predicate {
                if !first_obj {
                    out.push_str(" ,\n        ");
                }
                first_obj = false;
                write_term(&mut out, triples[i].object, prefixes);
                i += 1;
            }
        }
        out.push_str(" .\n");
        if i < triples.len() {
            out.push('\n');
        }
    }
    out
}

/// N-Triples output: one triple per line, sorted by term order, absolute
/// IRIs in angle brackets, each line ending in ` .`.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut out = String::new();
    for t in graph.sorted() {
        let _ = writeln!(out, "{} {} {} .", t.subject, t.predicate, t.object);
    }
    out
}

fn write_term(out: &mut String, term: &Term, prefixes: &BTreeMap<String, String>) {
    match term {
        Term::Iri(iri) => write_iri(out, iri, prefixes),
        Term::BlankNode(b) => {
            let _ = write!(out, "_:{}", b.label());
        }
        Term::Literal(lit) => {
            out.push('"');
            let _ = write_escaped(out, lit.lexical());
            out.push('"');
            match lit.annotation() {
                Annotation::None => {}
                Annotation::Language(tag) => {
                    let _ = write!(out, "@{tag}");
                }
                Annotation::Datatype(dt) => {
                    out.push_str("^^");
                    write_iri(out, dt, prefixes);
                }
            }
        }
    }
}

fn write_iri(out: &mut String, iri: &Iri, prefixes: &BTreeMap<String, String>) {
    let s = iri.as_str();
    let best = prefixes
        .iter()
        .filter(|(_, ns)| s.starts_with(ns.as_str()) && is_plain_local(&s[ns.len()..]))
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| b.0.cmp(a.0)));
    match best {
        Some((p, ns)) => {
            let _ = write!(out, "{p}:{}", &s[ns.len()..]);
        }
        None => {
            let _ = write!(out, "<{s}>");
        }
    }
}

/// Local names written without escapes: letters, digits, `_`, `-`, and
/// interior dots; must not start with `-` or `.`.
fn is_plain_local(local: &str) -> bool {
    if local.is_empty() {
        return true;
    }
    let first = local.chars().next().unwrap();
    (first.is_alphanumeric() || first == '_')
        && !local.ends_with('.')
        && local
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}
