//! Reading data graphs, vocabulary overrides, lexicons and frame occurrences.

use std::fs;
use std::path::Path;

use afkg_core::blending::{FrameOccurrence, RoleBinding};
use afkg_core::generation::Lexicon;
use afkg_core::rdf::{parse_turtle, well_known_prefixes, ParseError};
use afkg_core::{Graph, Iri, Term, Vocab};
use serde::Deserialize;

use crate::error::CliError;

/// Environment variable naming the default vocabulary file.
pub const VOCAB_ENV: &str = "AFKG_VOCAB";

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn parse_error(path: &Path, e: ParseError) -> CliError {
    CliError::input(path, e.line, e.column, e.kind)
}

pub fn load_turtle(path: &Path) -> Result<Graph, CliError> {
    parse_turtle(&read(path)?, None).map_err(|e| parse_error(path, e))
}

/// Parses every file and merges them. Blank nodes are scoped per file by
/// position, so the result does not depend on where the files live.
pub fn load_graphs(paths: &[impl AsRef<Path>]) -> Result<Graph, CliError> {
    let mut graph = Graph::new();
    for (i, path) in paths.iter().enumerate() {
        let g = load_turtle(path.as_ref())?;
        let scope = format!("f{i}_");
        graph.absorb(&g, &scope);
    }
    Ok(graph)
}

/// Non-blank, non-comment lines of a `key = value` file with their
/// 1-based line numbers and the column where the value starts.
fn key_values<'a>(path: &'a Path, text: &'a str) -> impl Iterator<Item = Result<(usize, &'a str, &'a str, usize), CliError>> + 'a {
    text.lines().enumerate().filter_map(move |(n, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let Some(eq) = raw.find('=') else {
            return Some(Err(CliError::input(path, n + 1, 1, "expected `key = value`")));
        };
        let (k, v) = (raw[..eq].trim(), raw[eq + 1..].trim());
        let column = eq + 2 + (raw[eq + 1..].len() - raw[eq + 1..].trim_start().len());
        Some(Ok((n + 1, k, v, column)))
    })
}

fn parse_iri(path: &Path, line: usize, column: usize, value: &str) -> Result<Iri, CliError> {
    let v = value.strip_prefix('<').and_then(|v| v.strip_suffix('>')).unwrap_or(value);
    Iri::new(v).map_err(|e| CliError::input(path, line, column, e))
}

/// Vocabulary overrides: one `key = IRI` per line, `#` comments.
pub fn load_vocab(path: &Path) -> Result<Vocab, CliError> {
    let text = read(path)?;
    let mut vocab = Vocab::default();
    for item in key_values(path, &text) {
        let (line, key, value, column) = item?;
        let iri = parse_iri(path, line, column, value)?;
        vocab.set(key, iri).map_err(|e| CliError::input(path, line, 1, e))?;
    }
    Ok(vocab)
}

/// `--vocab` if given, else `$AFKG_VOCAB` if set, else the default vocabulary.
pub fn resolve_vocab(explicit: Option<&Path>) -> Result<Vocab, CliError> {
    match explicit {
        Some(p) => load_vocab(p),
        None => match std::env::var_os(VOCAB_ENV) {
            Some(p) if !p.is_empty() => load_vocab(Path::new(&p)),
            _ => Ok(Vocab::default()),
        },
    }
}

/// Lexicon: one `lemma = FrameNet frame IRI` per line, `#` comments.
pub fn load_lexicon(path: &Path) -> Result<Lexicon, CliError> {
    let text = read(path)?;
    let mut lex = Lexicon::new();
    for item in key_values(path, &text) {
        let (line, lemma, value, column) = item?;
        if lemma.is_empty() {
            return Err(CliError::input(path, line, 1, "empty lemma"));
        }
        lex.insert(lemma, parse_iri(path, line, column, value)?);
    }
    Ok(lex)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OccurrenceJson {
    id: String,
    frame: String,
    bindings: Vec<BindingJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BindingJson {
    role: String,
    entity: String,
}

/// Loads a frame occurrence. `.json` files hold
/// `{"id", "frame", "bindings": [{"role", "entity"}]}`; anything else is
/// read as Turtle with exactly one subject typed by the occurrence
/// predicate and its role bindings as further triples on that subject.
pub fn load_occurrence(path: &Path, vocab: &Vocab) -> Result<FrameOccurrence, CliError> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        let text = read(path)?;
        let raw: OccurrenceJson =
            serde_json::from_str(&text).map_err(|e| CliError::input(path, e.line(), e.column(), e))?;
        let iri = |s: &str| Iri::new(s).map_err(|e| CliError::input(path, 1, 1, e));
        let bindings = raw
            .bindings
            .iter()
            .map(|b| Ok(RoleBinding { role: iri(&b.role)?, entity: iri(&b.entity)? }))
            .collect::<Result<_, CliError>>()?;
        return Ok(FrameOccurrence { id: iri(&raw.id)?, frame: iri(&raw.frame)?, bindings });
    }
    occurrence_from_graph(path, &load_turtle(path)?, vocab)
}

fn occurrence_from_graph(path: &Path, graph: &Graph, vocab: &Vocab) -> Result<FrameOccurrence, CliError> {
    let of = Term::Iri(vocab.occurrence_of.clone());
    let heads: Vec<_> = graph.triples_matching(None, Some(&of), None).collect();
    let [head] = heads.as_slice() else {
        return Err(CliError::input(path, 1, 1, format!("expected exactly one <{}> triple, found {}", vocab.occurrence_of, heads.len())));
    };
    let (Term::Iri(id), Term::Iri(frame)) = (head.subject, head.object) else {
        return Err(CliError::input(path, 1, 1, "occurrence and frame must be IRIs"));
    };
    let skip = [of.clone(), Term::Iri(vocab.rdf_type.clone()), Term::Iri(vocab.label.clone())];
    let mut bindings = Vec::new();
    for t in graph.triples_matching(Some(head.subject), None, None) {
        if skip.contains(t.predicate) {
            continue;
        }
        let (Term::Iri(role), Term::Iri(entity)) = (t.predicate, t.object) else {
            return Err(CliError::input(path, 1, 1, format!("binding {} must have an IRI entity", t.to_owned())));
        };
        bindings.push(RoleBinding { role: role.clone(), entity: entity.clone() });
    }
    bindings.sort();
    Ok(FrameOccurrence { id: id.clone(), frame: frame.clone(), bindings })
}

/// Resolves a command-line IRI argument: `<...>`, a full IRI, or a prefixed
/// name using the data's prefixes and the well-known ones.
pub fn resolve_arg(graph: &Graph, arg: &str) -> Result<Iri, CliError> {
    let bad = |why: &str| CliError::Usage(format!("invalid IRI argument {arg:?}: {why}"));
    let s = arg.trim();
    if let Some(inner) = s.strip_prefix('<').and_then(|v| v.strip_suffix('>')) {
        return Iri::new(inner).map_err(|e| bad(&e.to_string()));
    }
    if let Some((prefix, local)) = s.split_once(':') {
        if !local.starts_with("//") {
            let ns = graph.prefixes().get(prefix).cloned().or_else(|| well_known_prefixes().get(prefix).cloned());
            if let Some(ns) = ns {
                return Iri::new(format!("{ns}{local}")).map_err(|e| bad(&e.to_string()));
            }
        }
    }
    Iri::new(s).map_err(|e| bad(&e.to_string()))
}
