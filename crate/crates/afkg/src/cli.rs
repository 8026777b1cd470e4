//! Argument grammar and subcommand handlers.

use std::io::Write;
use std::path::{Path, PathBuf};

use afkg_core::blending::{blend_occurrences, IdentificationPolicy};
use afkg_core::generation::{
    explain_phrase, generate_lexicalizations, propose_novel_metaphors, suggest_alignments, AnPhrase, MetaphorCandidate,
};
use afkg_core::ns;
use afkg_core::rdf::{match_bgp, parse_query, serialize_ntriples, serialize_turtle, well_known_prefixes};
use afkg_core::schema::{alignment_coverage, AlignmentKind, SchemaError};
use afkg_core::{build_kb, validate_kb, Graph, Iri, KnowledgeBase, Term, Triple};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{exit, CliError};
use crate::input;

#[derive(Debug, Parser)]
#[command(name = "afkg", version, about = "Conceptual-metaphor knowledge graph tool")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Data {
    /// Turtle or N-Triples files, merged in the order given.
    #[arg(long = "data", value_name = "FILE", required = true, num_args = 1..)]
    pub data: Vec<PathBuf>,
    /// Vocabulary override file (`key = IRI` lines). Defaults to $AFKG_VOCAB.
    #[arg(long, value_name = "FILE")]
    pub vocab: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Turtle,
    Ntriples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProposalFormat {
    Text,
    Json,
    Turtle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Economic,
    Multiplicative,
}

impl From<Policy> for IdentificationPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Economic => IdentificationPolicy::Economic,
            Policy::Multiplicative => IdentificationPolicy::Multiplicative,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a Turtle file and write it back in canonical form.
    Parse {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "turtle")]
        format: GraphFormat,
    },
    /// Check the knowledge base; exits 1 when violations are found.
    Validate {
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        json: bool,
    },
    /// Triple, frame and metaphor counts and FrameNet alignment coverage.
    Stats {
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        json: bool,
    },
    /// Adjective-noun lexicalizations of a metaphor.
    Generate {
        #[arg(long, value_name = "IRI")]
        metaphor: String,
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        json: bool,
    },
    /// Metaphors that explain an adjective-noun phrase.
    Explain {
        #[arg(long, value_name = "LEMMA")]
        adj: String,
        #[arg(long, value_name = "LEMMA")]
        noun: String,
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        json: bool,
    },
    /// Novel metaphors obtained by specializing a seed metaphor's frames.
    Propose {
        #[arg(long, value_name = "IRI")]
        seed: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[command(flatten)]
        data: Data,
        #[arg(long, value_enum, default_value = "text")]
        format: ProposalFormat,
    },
    /// Blend a target-frame occurrence with a source-frame occurrence.
    Blend {
        #[arg(long, value_name = "IRI")]
        metaphor: String,
        #[arg(long = "target-occ", value_name = "FILE")]
        target_occ: PathBuf,
        #[arg(long = "source-occ", value_name = "FILE")]
        source_occ: PathBuf,
        #[arg(long, value_enum)]
        policy: Policy,
        /// Also write the blended occurrence as Turtle to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        json: bool,
    },
    /// Run a SELECT query over the data.
    Query {
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        json: bool,
    },
    /// Suggest FrameNet alignments for an unaligned frame.
    SuggestAlign {
        #[arg(long, value_name = "IRI")]
        frame: String,
        #[arg(long, value_name = "FILE")]
        lexicon: PathBuf,
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        json: bool,
    },
    /// Dump the projected knowledge base as JSON.
    KbDump {
        #[command(flatten)]
        data: Data,
    },
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            let _ = if code == exit::OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = Vec::new();
    let result = execute(cli.command, &mut buf);
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(data: &Data) -> Result<KnowledgeBase, CliError> {
    let vocab = input::resolve_vocab(data.vocab.as_deref())?;
    Ok(build_kb(input::load_graphs(&data.data)?, vocab))
}

fn json_line(out: &mut Vec<u8>, value: &impl Serialize) -> Result<(), CliError> {
    // Going through Value sorts object keys.
    let v = serde_json::to_value(value).map_err(CliError::domain)?;
    serde_json::to_writer(&mut *out, &v).map_err(CliError::domain)?;
    out.push(b'\n');
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn execute(command: Command, out: &mut Vec<u8>) -> Result<i32, CliError> {
    match command {
        Command::Parse { file, out: dest, format } => {
            let graph = input::load_turtle(&file)?;
            let text = match format {
                GraphFormat::Turtle => serialize_turtle(&graph),
                GraphFormat::Ntriples => serialize_ntriples(&graph),
            };
            match dest {
                Some(p) => write_file(&p, text.as_bytes())?,
                None => out.extend_from_slice(text.as_bytes()),
            }
            Ok(exit::OK)
        }
        Command::Validate { data, json } => {
            let kb = load(&data)?;
            let violations = validate_kb(&kb);
            for v in &violations {
                if json {
                    json_line(out, v)?;
                } else {
                    writeln!(out, "{v}").unwrap();
                }
            }
            Ok(if violations.is_empty() { exit::OK } else { exit::DOMAIN })
        }
        Command::Stats { data, json } => stats(&load(&data)?, json, out),
        Command::Generate { metaphor, data, json } => {
            let kb = load(&data)?;
            let m = input::resolve_arg(kb.graph(), &metaphor)?;
            for c in generate_lexicalizations(&kb, &m).map_err(CliError::domain)? {
                if json {
                    json_line(out, &c)?;
                } else {
                    writeln!(out, "{c}").unwrap();
                }
            }
            Ok(exit::OK)
        }
        Command::Explain { adj, noun, data, json } => {
            let kb = load(&data)?;
            let phrase = AnPhrase::new(&adj, &noun).map_err(|e| CliError::Usage(e.to_string()))?;
            for m in explain_phrase(&kb, &phrase) {
                if json {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        adjective: &'a str,
                        noun: &'a str,
                        metaphor: &'a Iri,
                    }
                    json_line(out, &Row { adjective: phrase.adjective_lemma(), noun: phrase.noun_lemma(), metaphor: &m })?;
                } else {
                    writeln!(out, "{m}").unwrap();
                }
            }
            Ok(exit::OK)
        }
        Command::Propose { seed, depth, data, format } => {
            let kb = load(&data)?;
            let seed = input::resolve_arg(kb.graph(), &seed)?;
            let candidates = propose_novel_metaphors(&kb, &seed, depth).map_err(CliError::domain)?;
            match format {
                ProposalFormat::Text => {
                    for c in &candidates {
                        writeln!(out, "{c}").unwrap();
                    }
                }
                ProposalFormat::Json => {
                    for c in &candidates {
                        json_line(out, c)?;
                    }
                }
                ProposalFormat::Turtle => out.extend_from_slice(serialize_turtle(&proposal_graph(&kb, &candidates)).as_bytes()),
            }
            Ok(exit::OK)
        }
        Command::Blend { metaphor, target_occ, source_occ, policy, out: dest, data, json } => {
            let kb = load(&data)?;
            let m = input::resolve_arg(kb.graph(), &metaphor)?;
            let t = input::load_occurrence(&target_occ, kb.vocab())?;
            let s = input::load_occurrence(&source_occ, kb.vocab())?;
            let blended = blend_occurrences(&kb, &t, &s, &m, policy.into()).map_err(CliError::domain)?;
            if let Some(p) = dest {
                let mut g = Graph::new();
                let id = Term::Iri(blended.id.clone());
                g.insert(triple(&id, kb.vocab().occurrence_of.clone(), Term::Iri(blended.frame.clone())));
                for b in &blended.bindings {
                    g.insert(triple(&id, b.role.clone(), Term::Iri(b.entity.clone())));
                }
                write_file(&p, serialize_turtle(&g).as_bytes())?;
            }
            if json {
                json_line(out, &blended)?;
                return Ok(exit::OK);
            }
            let inputs = t.entities().chain(s.entities()).collect();
            let fresh: Vec<&Iri> = blended.fresh_entities(&inputs).collect();
            writeln!(out, "occurrence\t{}", blended.id).unwrap();
            writeln!(out, "frame\t{}", blended.frame).unwrap();
            writeln!(out, "policy\t{}", blended.policy).unwrap();
            for b in &blended.bindings {
                writeln!(out, "binding\t{}\t{}", b.role, b.entity).unwrap();
            }
            for mr in &blended.merged_entities {
                let members: Vec<&str> = mr.members.iter().map(Iri::as_str).collect();
                let tag = if fresh.contains(&&mr.result) { "fresh" } else { "reused" };
                writeln!(out, "merged\t{}\t{}\t{tag}\t{}", mr.role, mr.result, members.join(" ")).unwrap();
            }
            Ok(exit::OK)
        }
        Command::Query { file, data, json } => {
            let kb = load(&data)?;
            let text = input::read(&file)?;
            let mut prefixes = well_known_prefixes();
            for (p, ns) in kb.graph().prefixes() {
                prefixes.insert(p.clone(), ns.clone());
            }
            let q = parse_query(&text, &prefixes).map_err(|e| CliError::input(&file, e.line, e.column, e.kind))?;
            let rows = match_bgp(kb.graph(), &q);
            if json {
                for r in &rows {
                    json_line(out, r)?;
                }
            } else {
                let header: Vec<String> = q.projection().iter().map(|v| format!("?{}", v.name())).collect();
                writeln!(out, "{}", header.join("\t")).unwrap();
                for r in &rows {
                    let cells: Vec<String> =
                        q.projection().iter().map(|v| r.get(v).map(ToString::to_string).unwrap_or_default()).collect();
                    writeln!(out, "{}", cells.join("\t")).unwrap();
                }
            }
            Ok(exit::OK)
        }
        Command::SuggestAlign { frame, lexicon, data, json } => {
            let kb = load(&data)?;
            let lex = input::load_lexicon(&lexicon)?;
            let f = input::resolve_arg(kb.graph(), &frame)?;
            for s in suggest_alignments(&kb, &f, &lex).map_err(CliError::domain)? {
                if json {
                    json_line(out, &s)?;
                } else {
                    let kind = if s.is_composition { "composition" } else { "single" };
                    let frames: Vec<&str> = s.suggested.iter().map(Iri::as_str).collect();
                    let mut line = format!("{}\t{kind}\t{:.4}\t{}", s.frame, s.score, frames.join(" "));
                    if s.requires_specialization {
                        line += &format!("\tunmatched: {}", s.unmatched_tokens.join(" "));
                    }
                    writeln!(out, "{line}").unwrap();
                }
            }
            Ok(exit::OK)
        }
        Command::KbDump { data } => {
            json_line(out, &load(&data)?)?;
            Ok(exit::OK)
        }
    }
}

fn triple(s: &Term, p: Iri, o: Term) -> Triple {
    Triple::new(s.clone(), Term::Iri(p), o).expect("IRI subject and predicate")
}

fn stats(kb: &KnowledgeBase, json: bool, out: &mut Vec<u8>) -> Result<i32, CliError> {
    let coverage = match alignment_coverage(kb, AlignmentKind::FramenetFrame) {
        Ok(c) => Some(c),
        Err(SchemaError::NoFrames) => None,
        Err(e) => return Err(CliError::domain(e)),
    };
    if json {
        #[derive(Serialize)]
        struct Stats {
            triples: usize,
            frames: usize,
            metaphors: usize,
            framenet_aligned: usize,
            framenet_coverage: Option<f64>,
        }
        return json_line(
            out,
            &Stats {
                triples: kb.graph().len(),
                frames: kb.frames().len(),
                metaphors: kb.metaphors().len(),
                framenet_aligned: coverage.as_ref().map_or(0, |c| c.aligned),
                framenet_coverage: coverage.map(|c| c.ratio),
            },
        )
        .map(|_| exit::OK);
    }
    writeln!(out, "triples\t{}", kb.graph().len()).unwrap();
    writeln!(out, "frames\t{}", kb.frames().len()).unwrap();
    writeln!(out, "metaphors\t{}", kb.metaphors().len()).unwrap();
    match coverage {
        Some(c) => writeln!(out, "framenet_coverage\t{}/{}\t{:.4}", c.aligned, c.total, c.ratio).unwrap(),
        None => writeln!(out, "framenet_coverage\tn/a").unwrap(),
    }
    Ok(exit::OK)
}

/// Proposals as metaphors under the proposals namespace, each linked to the
/// seed it was derived from.
fn proposal_graph(kb: &KnowledgeBase, candidates: &[MetaphorCandidate]) -> Graph {
    let v = kb.vocab();
    let proposals = format!("{}proposals/", ns::AFKG);
    let derived_from = Iri::new(format!("{}derivedFrom", ns::AFKG)).expect("constant IRI");
    let mut g = Graph::new();
    for (p, n) in [("afkg", ns::AFKG), ("proposal", proposals.as_str()), ("metanet", ns::METANET)] {
        g.set_prefix(p, n).expect("valid prefix");
    }
    let mut used = std::collections::BTreeSet::new();
    for c in candidates {
        let base = c.suggested_name();
        let name = (1..).map(|i| if i == 1 { base.clone() } else { format!("{base}_{i}") }).find(|n| used.insert(n.clone())).unwrap();
        let id = Term::Iri(Iri::new(format!("{proposals}{name}")).expect("names are IRI-safe"));
        g.insert(triple(&id, v.rdf_type.clone(), Term::Iri(v.metaphor_class.clone())));
        g.insert(triple(&id, v.has_source_frame.clone(), Term::Iri(c.source_frame.clone())));
        g.insert(triple(&id, v.has_target_frame.clone(), Term::Iri(c.target_frame.clone())));
        g.insert(triple(&id, derived_from.clone(), Term::Iri(c.derived_from.clone())));
    }
    g
}
