//! Metaphor lexicalization, phrase explanation, novel-metaphor proposal and
//! alignment suggestions, all read-only over a [`KnowledgeBase`].

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rdf::{BgpQuery, Iri};
use crate::schema::{AlignmentKind, KnowledgeBase, SynsetPos};

mod align;

pub use align::{suggest_alignments, tokenize_label, AlignmentSuggestion, Lexicon};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerationError {
    #[error("{0} does not resolve to a metaphor")]
    UnresolvedMetaphor(Iri),
    #[error("{0} does not resolve to a frame")]
    UnresolvedFrame(Iri),
    #[error("metaphor {metaphor} has no {side} frame")]
    IncompleteMetaphor { metaphor: Iri, side: &'static str },
    #[error("frame {0} is already aligned to a FrameNet frame")]
    AlreadyAligned(Iri),
    #[error("phrase lemmas must be non-empty")]
    EmptyLemma,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LexicalizationCandidate {
    pub metaphor: Iri,
    /// Adjective or adjective-satellite synset reached from the source frame.
    pub source_synset: Iri,
    /// Noun synset reached from the target frame.
    pub target_synset: Iri,
    pub phrase: String,
}

/// An adjective-noun phrase, lowercased and trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AnPhrase {
    adjective_lemma: String,
    noun_lemma: String,
}

impl AnPhrase {
    pub fn new(adjective: &str, noun: &str) -> Result<Self, GenerationError> {
        let (a, n) = (adjective.trim().to_lowercase(), noun.trim().to_lowercase());
        if a.is_empty() || n.is_empty() {
            return Err(GenerationError::EmptyLemma);
        }
        Ok(AnPhrase { adjective_lemma: a, noun_lemma: n })
    }

    /// Splits "adjective noun" on the first space.
    pub fn parse(phrase: &str) -> Result<Self, GenerationError> {
        let (a, n) = phrase.trim().split_once(' ').ok_or(GenerationError::EmptyLemma)?;
        Self::new(a, n)
    }

    pub fn adjective_lemma(&self) -> &str {
        &self.adjective_lemma
    }

    pub fn noun_lemma(&self) -> &str {
        &self.noun_lemma
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MetaphorCandidate {
    pub source_frame: Iri,
    pub target_frame: Iri,
    pub derived_from: Iri,
    /// Sub-frame chain from the seed's source frame down to `source_frame`.
    pub source_path: Vec<Iri>,
    /// Sub-frame chain from the seed's target frame down to `target_frame`.
    pub target_path: Vec<Iri>,
}

impl MetaphorCandidate {
    /// MetaNet-style name, e.g. `FORGERY_IS_AMNESIA`.
    pub fn suggested_name(&self) -> String {
        format!(
            "{}_IS_{}",
            self.target_frame.local_name().to_uppercase(),
            self.source_frame.local_name().to_uppercase()
        )
    }
}

fn source_and_target<'a>(kb: &'a KnowledgeBase, metaphor: &Iri) -> Result<(&'a Iri, &'a Iri), GenerationError> {
    let m = kb.metaphor(metaphor).ok_or_else(|| GenerationError::UnresolvedMetaphor(metaphor.clone()))?;
    let missing = |side| GenerationError::IncompleteMetaphor { metaphor: metaphor.clone(), side };
    Ok((m.source_frame.as_ref().ok_or_else(|| missing("source"))?, m.target_frame.as_ref().ok_or_else(|| missing("target"))?))
}

/// Synsets two `closeMatch` hops away from `frame` through a FrameNet frame,
/// restricted to the given parts of speech.
fn synsets_via_framenet<'a>(kb: &'a KnowledgeBase, frame: &Iri, pos: &[SynsetPos]) -> BTreeSet<&'a Iri> {
    let mut out = BTreeSet::new();
    for fnf in kb.close_matches(frame).into_iter().filter(|f| kb.is_framenet_frame(f)) {
        for syn in kb.close_matches(fnf) {
            if pos.iter().any(|p| kb.synset_has_pos(syn, *p)) {
                out.insert(syn);
            }
        }
    }
    out
}

const ADJECTIVAL: [SynsetPos; 2] = [SynsetPos::Adjective, SynsetPos::AdjectiveSatellite];

/// First lemma of a synset in stored (sorted) order, or its local name.
fn first_lemma(kb: &KnowledgeBase, synset: &Iri) -> String {
    match kb.synset_lemmas(synset).first() {
        Some(l) => l.to_lowercase(),
        None => synset.local_name().to_lowercase(),
    }
}

/// Adjective-noun renderings of a metaphor: the source frame's FrameNet
/// frames give adjective synsets, the target frame's give noun synsets, and
/// every distinct pair becomes a candidate, sorted by (source, target) synset.
pub fn generate_lexicalizations(kb: &KnowledgeBase, metaphor: &Iri) -> Result<Vec<LexicalizationCandidate>, GenerationError> {
    let (source, target) = source_and_target(kb, metaphor)?;
    let adjectives = synsets_via_framenet(kb, source, &ADJECTIVAL);
    let nouns = synsets_via_framenet(kb, target, &[SynsetPos::Noun]);
    let mut out = Vec::with_capacity(adjectives.len() * nouns.len());
    for a in &adjectives {
        for n in &nouns {
            out.push(LexicalizationCandidate {
                metaphor: metaphor.clone(),
                source_synset: (*a).clone(),
                target_synset: (*n).clone(),
                phrase: format!("{} {}", first_lemma(kb, a), first_lemma(kb, n)),
            });
        }
    }
    Ok(out)
}

/// The lexicalization query for `metaphor` in the SELECT text form, for
/// running through the general BGP matcher.
pub fn lexicalization_query_text(kb: &KnowledgeBase, metaphor: &Iri) -> String {
    let v = kb.vocab();
    format!(
        "SELECT DISTINCT ?ssyn ?tsyn WHERE {{
  <{metaphor}> <{src}> ?s ; <{tgt}> ?t .
  ?s <{cm}> ?fns . ?fns <{ty}> <{fnc}> .
  ?t <{cm}> ?fnt . ?fnt <{ty}> <{fnc}> .
  ?fns <{cm}> ?ssyn .
  ?fnt <{cm}> ?tsyn .
  {{ ?ssyn <{ty}> <{adj}> }} UNION {{ ?ssyn <{ty}> <{sat}> }}
  ?tsyn <{ty}> <{noun}> }}",
        src = v.has_source_frame,
        tgt = v.has_target_frame,
        cm = v.close_match,
        ty = v.rdf_type,
        fnc = v.framenet_frame_class,
        adj = v.adjective_synset_class,
        sat = v.adjective_satellite_synset_class,
        noun = v.noun_synset_class,
    )
}

/// [`lexicalization_query_text`] parsed into a query.
pub fn lexicalization_query(kb: &KnowledgeBase, metaphor: &Iri) -> BgpQuery {
    crate::rdf::parse_query(&lexicalization_query_text(kb, metaphor), &BTreeMap::new())
        .expect("generated query text is well formed")
}

/// MetaNet frames reached backwards from synsets carrying `lemma` with one
/// of the parts of speech: synset, FrameNet frame, frame.
fn frames_for_lemma<'a>(kb: &'a KnowledgeBase, lemma: &str, pos: &[SynsetPos]) -> BTreeSet<&'a Iri> {
    let mut frames = BTreeSet::new();
    for (syn, lemmas) in kb.all_synset_lemmas() {
        if !lemmas.iter().any(|l| l.to_lowercase() == lemma) || !pos.iter().any(|p| kb.synset_has_pos(syn, *p)) {
            continue;
        }
        for fnf in kb.close_matched_by(syn).filter(|f| kb.is_framenet_frame(f)) {
            frames.extend(kb.close_matched_by(fnf));
        }
    }
    frames
}

/// Metaphors whose source frame reaches an adjective synset with the
/// phrase's adjective and whose target frame reaches a noun synset with its
/// noun. Sorted.
pub fn explain_phrase(kb: &KnowledgeBase, phrase: &AnPhrase) -> Vec<Iri> {
    let sources = frames_for_lemma(kb, &phrase.adjective_lemma, &ADJECTIVAL);
    let targets = frames_for_lemma(kb, &phrase.noun_lemma, &[SynsetPos::Noun]);
    if sources.is_empty() || targets.is_empty() {
        return Vec::new();
    }
    kb.metaphors()
        .values()
        .filter(|m| {
            m.source_frame.as_ref().is_some_and(|s| sources.contains(s))
                && m.target_frame.as_ref().is_some_and(|t| targets.contains(t))
        })
        .map(|m| m.id.clone())
        .collect()
}

/// `frame` and its sub-frames down to `depth` levels, each with the path
/// that first reached it (breadth-first).
fn specializations(kb: &KnowledgeBase, frame: &Iri, depth: usize) -> Vec<(Iri, Vec<Iri>)> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::from([frame.clone()]);
    let mut queue = VecDeque::from([(frame.clone(), alloc::vec![frame.clone()])]);
    while let Some((f, path)) = queue.pop_front() {
        if path.len() <= depth {
            for child in kb.sub_frames(&f) {
                if seen.insert(child.clone()) {
                    let mut p = path.clone();
                    p.push(child.clone());
                    queue.push_back((child.clone(), p));
                }
            }
        }
        out.push((f, path));
    }
    out
}

/// New (source, target) frame pairs obtained by specializing the seed's
/// source and target frames along sub-frame links, up to `max_depth` levels
/// each. The seed pair, pairs already realized by a metaphor and pairs with
/// the same frame on both sides are left out. Sorted by (source, target).
pub fn propose_novel_metaphors(kb: &KnowledgeBase, seed: &Iri, max_depth: usize) -> Result<Vec<MetaphorCandidate>, GenerationError> {
    let (source, target) = source_and_target(kb, seed)?;
    let existing: BTreeSet<(&Iri, &Iri)> = kb
        .metaphors()
        .values()
        .filter_map(|m| Some((m.source_frame.as_ref()?, m.target_frame.as_ref()?)))
        .collect();
    let sources = specializations(kb, source, max_depth);
    let targets = specializations(kb, target, max_depth);
    let mut out = Vec::new();
    for (s, s_path) in &sources {
        for (t, t_path) in &targets {
            if (s == source && t == target) || s == t || existing.contains(&(s, t)) {
                continue;
            }
            out.push(MetaphorCandidate {
                source_frame: s.clone(),
                target_frame: t.clone(),
                derived_from: seed.clone(),
                source_path: s_path.clone(),
                target_path: t_path.clone(),
            });
        }
    }
    out.sort();
    Ok(out)
}

/// Whether `frame` already has a FrameNet alignment.
pub fn is_framenet_aligned(kb: &KnowledgeBase, frame: &Iri) -> bool {
    kb.frame(frame)
        .is_some_and(|f| f.alignments.iter().any(|a| a.target_kind == AlignmentKind::FramenetFrame))
}

impl core::fmt::Display for LexicalizationCandidate {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}\t{}\t{}", self.phrase, self.source_synset, self.target_synset)
    }
}

impl core::fmt::Display for MetaphorCandidate {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let path = |p: &[Iri]| p.iter().map(|i| i.local_name().to_string()).collect::<Vec<_>>().join(" > ");
        write!(
            f,
            "{}\t{}\t{}\tsource: {}\ttarget: {}",
            self.suggested_name(),
            self.source_frame,
            self.target_frame,
            path(&self.source_path),
            path(&self.target_path)
        )
    }
}
