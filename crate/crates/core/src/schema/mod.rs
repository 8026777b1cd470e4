//! Typed projection of a graph into frames, roles, lexical units and
//! metaphors, with validation and hierarchy traversal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::rdf::{Graph, Iri, Term, Triple};

mod build;
mod traverse;
mod validate;
mod vocab;

pub use build::build_kb;
pub use traverse::{alignment_coverage, frame_ancestors, metaphor_ancestors, Coverage};
pub use validate::{validate_kb, Violation, ViolationCode};
pub use vocab::Vocab;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("unknown vocabulary key {0:?} (expected one of: {keys})", keys = vocab::describe_keys())]
    UnknownVocabKey(String),
    #[error("{0} does not resolve to a frame")]
    UnresolvedFrame(Iri),
    #[error("{0} does not resolve to a metaphor")]
    UnresolvedMetaphor(Iri),
    #[error("cycle through {0}")]
    Cycle(Iri),
    #[error("alignment coverage is undefined for a knowledge base without frames")]
    NoFrames,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum PartOfSpeech {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Other,
}

impl PartOfSpeech {
    /// Accepts full names and the usual one-letter WordNet/FrameNet codes.
    pub fn parse(s: &str) -> Self {
        match s.trim().to_ascii_lowercase().as_str() {
            "noun" | "n" => PartOfSpeech::Noun,
            "verb" | "v" => PartOfSpeech::Verb,
            "adjective" | "adj" | "a" | "s" => PartOfSpeech::Adjective,
            "adverb" | "adv" | "r" => PartOfSpeech::Adverb,
            _ => PartOfSpeech::Other,
        }
    }
}

/// Part-of-speech class of a WordNet synset, read from its `rdf:type`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum SynsetPos {
    Noun,
    Verb,
    Adjective,
    AdjectiveSatellite,
    Adverb,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Role {
    pub id: Iri,
    pub label: Option<String>,
    pub of_frame: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LexicalUnit {
    /// The lexical-unit node (IRI or blank node).
    pub node: Term,
    pub lemma: String,
    pub pos: PartOfSpeech,
    pub evokes: Iri,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum AlignmentKind {
    FramenetFrame,
    WordnetSynset,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Alignment {
    pub from: Iri,
    pub to: Iri,
    pub target_kind: AlignmentKind,
    pub relation: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Frame {
    pub id: Iri,
    pub label: Option<String>,
    /// Whether the frame carries an explicit frame-class type triple.
    pub typed: bool,
    pub roles: Vec<Role>,
    pub lexical_units: Vec<LexicalUnit>,
    pub sub_frame_of: Vec<Iri>,
    pub alignments: Vec<Alignment>,
    /// Triples on this frame with predicates outside the schema vocabulary,
    /// plus type triples naming other classes.
    pub related_to: Vec<(Iri, Term)>,
}

impl Frame {
    fn new(id: Iri) -> Self {
        Frame {
            id,
            label: None,
            typed: false,
            roles: Vec::new(),
            lexical_units: Vec::new(),
            sub_frame_of: Vec::new(),
            alignments: Vec::new(),
            related_to: Vec::new(),
        }
    }

    /// The label, or the IRI's local name when there is none.
    pub fn display_label(&self) -> &str {
        self.label.as_deref().unwrap_or_else(|| self.id.local_name())
    }

    pub fn has_role(&self, role: &Iri) -> bool {
        self.roles.iter().any(|r| r.id == *role)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RoleMapping {
    pub source_role: Iri,
    pub target_role: Iri,
    /// The mapping node carrying the two role triples, when read from a graph.
    pub node: Option<Term>,
}

impl RoleMapping {
    pub fn new(source_role: Iri, target_role: Iri) -> Self {
        RoleMapping { source_role, target_role, node: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Metaphor {
    pub id: Iri,
    pub label: Option<String>,
    pub typed: bool,
    pub source_frame: Option<Iri>,
    pub target_frame: Option<Iri>,
    /// Sorted by (source role, target role, node).
    pub role_mappings: Vec<RoleMapping>,
    pub entailments: Vec<Iri>,
    pub inherits_from: Vec<Iri>,
    pub related_to: Vec<(Iri, Term)>,
}

impl Metaphor {
    fn new(id: Iri) -> Self {
        Metaphor {
            id,
            label: None,
            typed: false,
            source_frame: None,
            target_frame: None,
            role_mappings: Vec::new(),
            entailments: Vec::new(),
            inherits_from: Vec::new(),
            related_to: Vec::new(),
        }
    }
}

/// A role-mapping node that lacks its source or target role.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IncompleteMapping {
    pub metaphor: Iri,
    pub node: Term,
    pub source_role: Option<Iri>,
    pub target_role: Option<Iri>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum ReferenceField {
    SourceFrame,
    TargetFrame,
    SubFrameOf,
    InheritsFrom,
    Entailment,
    Alignment,
    MappingSourceRole,
    MappingTargetRole,
}

/// A reference from a typed field to an IRI the knowledge base cannot resolve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DanglingReference {
    pub from: Iri,
    pub field: ReferenceField,
    pub target: Iri,
}

/// Typed view of a graph. Immutable once built.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct KnowledgeBase {
    #[cfg_attr(feature = "serde", serde(skip))]
    graph: Graph,
    #[cfg_attr(feature = "serde", serde(skip))]
    vocab: Vocab,
    frames: BTreeMap<Iri, Frame>,
    metaphors: BTreeMap<Iri, Metaphor>,
    /// Role IRI to every frame that declares it, in frame order.
    role_owners: BTreeMap<Iri, Vec<Iri>>,
    synset_pos: BTreeMap<Iri, BTreeSet<SynsetPos>>,
    /// Lemmas per synset, sorted.
    synset_lemmas: BTreeMap<Iri, Vec<String>>,
    framenet_frames: BTreeSet<Iri>,
    /// `closeMatch` links whose subject is not a frame or metaphor of this
    /// knowledge base (e.g. FrameNet frame to synset).
    links: BTreeMap<Iri, Vec<Iri>>,
    /// Type triples on subjects that are not frames or metaphors, naming
    /// classes other than the synset and FrameNet-frame classes.
    other_types: Vec<(Term, Iri)>,
    /// Labels on IRIs that are not frames, metaphors or roles (entailment
    /// nodes, FrameNet frames, synsets...).
    other_labels: BTreeMap<Iri, String>,
    incomplete_mappings: Vec<IncompleteMapping>,
    /// Schema-vocabulary triples that have no typed slot (wrong term kind,
    /// repeated single-valued property, or subject of the wrong kind).
    unplaced: Vec<Triple>,
    dangling: Vec<DanglingReference>,
    #[cfg_attr(feature = "serde", serde(skip))]
    sub_frames: BTreeMap<Iri, BTreeSet<Iri>>,
    #[cfg_attr(feature = "serde", serde(skip))]
    close_match_inverse: BTreeMap<Iri, BTreeSet<Iri>>,
}

impl KnowledgeBase {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    pub fn frames(&self) -> &BTreeMap<Iri, Frame> {
        &self.frames
    }

    pub fn frame(&self, id: &Iri) -> Option<&Frame> {
        self.frames.get(id)
    }

    pub fn metaphors(&self) -> &BTreeMap<Iri, Metaphor> {
        &self.metaphors
    }

    pub fn metaphor(&self, id: &Iri) -> Option<&Metaphor> {
        self.metaphors.get(id)
    }

    /// Frames that declare `role`.
    pub fn role_owners(&self, role: &Iri) -> &[Iri] {
        self.role_owners.get(role).map_or(&[], Vec::as_slice)
    }

    pub fn synset_pos(&self) -> &BTreeMap<Iri, BTreeSet<SynsetPos>> {
        &self.synset_pos
    }

    pub fn synset_has_pos(&self, synset: &Iri, pos: SynsetPos) -> bool {
        self.synset_pos.get(synset).is_some_and(|s| s.contains(&pos))
    }

    pub fn synset_lemmas(&self, synset: &Iri) -> &[String] {
        self.synset_lemmas.get(synset).map_or(&[], Vec::as_slice)
    }

    pub fn all_synset_lemmas(&self) -> &BTreeMap<Iri, Vec<String>> {
        &self.synset_lemmas
    }

    pub fn is_framenet_frame(&self, iri: &Iri) -> bool {
        self.framenet_frames.contains(iri)
    }

    pub fn framenet_frames(&self) -> &BTreeSet<Iri> {
        &self.framenet_frames
    }

    /// Every `closeMatch` target of `iri`, whether it is a frame of this
    /// knowledge base or an external resource. Sorted.
    pub fn close_matches(&self, iri: &Iri) -> Vec<&Iri> {
        let mut out: Vec<&Iri> = match self.frames.get(iri) {
            Some(f) => f.alignments.iter().map(|a| &a.to).collect(),
            None => Vec::new(),
        };
        if let Some(m) = self.metaphors.get(iri) {
            out.extend(m.related_to.iter().filter(|(p, _)| *p == self.vocab.close_match).filter_map(|(_, o)| o.as_iri()));
        }
        if let Some(l) = self.links.get(iri) {
            out.extend(l.iter());
        }
        out.sort();
        out.dedup();
        out
    }

    /// Subjects with a `closeMatch` to `iri`. Sorted.
    pub fn close_matched_by(&self, iri: &Iri) -> impl Iterator<Item = &Iri> {
        self.close_match_inverse.get(iri).into_iter().flatten()
    }

    /// Direct sub-frames of `frame` (frames declaring `sub_frame_of frame`).
    pub fn sub_frames(&self, frame: &Iri) -> impl Iterator<Item = &Iri> {
        self.sub_frames.get(frame).into_iter().flatten()
    }

    pub fn links(&self) -> &BTreeMap<Iri, Vec<Iri>> {
        &self.links
    }

    pub fn other_types(&self) -> &[(Term, Iri)] {
        &self.other_types
    }

    pub fn other_labels(&self) -> &BTreeMap<Iri, String> {
        &self.other_labels
    }

    /// Label of any labelled IRI in the knowledge base.
    pub fn label_of(&self, iri: &Iri) -> Option<&str> {
        if let Some(f) = self.frames.get(iri) {
            return f.label.as_deref();
        }
        if let Some(m) = self.metaphors.get(iri) {
            return m.label.as_deref();
        }
        if let Some(owner) = self.role_owners.get(iri).and_then(|o| o.first()) {
            return self.frames[owner].roles.iter().find(|r| r.id == *iri).and_then(|r| r.label.as_deref());
        }
        self.other_labels.get(iri).map(String::as_str)
    }

    pub fn incomplete_mappings(&self) -> &[IncompleteMapping] {
        &self.incomplete_mappings
    }

    pub fn unplaced(&self) -> &[Triple] {
        &self.unplaced
    }

    pub fn dangling(&self) -> &[DanglingReference] {
        &self.dangling
    }

    /// Whether `iri` names something the knowledge base knows about as an
    /// alignment target: one of its frames, a FrameNet frame or a synset.
    pub fn resolves_alignment_target(&self, iri: &Iri) -> bool {
        self.frames.contains_key(iri)
            || self.framenet_frames.contains(iri)
            || self.synset_pos.contains_key(iri)
    }

    /// Number of schema-vocabulary triples represented by typed fields, plus
    /// unplaced triples. Equals the number of vocabulary-predicate triples in
    /// the source graph; nodes shared between owners are counted once.
    pub fn placed_triple_count(&self) -> usize {
        let v = &self.vocab;
        let vocab_related = |rel: &[(Iri, Term)]| rel.iter().filter(|(p, _)| v.is_kb_predicate(p)).count();
        let mut count = 0;
        let mut seen_roles = BTreeSet::new();
        let mut seen_lus = BTreeSet::new();
        for f in self.frames.values() {
            count += usize::from(f.typed) + usize::from(f.label.is_some());
            for r in &f.roles {
                count += 1;
                if seen_roles.insert(&r.id) {
                    count += usize::from(r.label.is_some());
                }
            }
            for lu in &f.lexical_units {
                count += 1;
                if seen_lus.insert(&lu.node) {
                    count += 2;
                }
            }
            count += f.sub_frame_of.len() + f.alignments.len() + vocab_related(&f.related_to);
        }
        let mut seen_nodes = BTreeSet::new();
        for m in self.metaphors.values() {
            count += usize::from(m.typed)
                + usize::from(m.label.is_some())
                + usize::from(m.source_frame.is_some())
                + usize::from(m.target_frame.is_some())
                + m.entailments.len()
                + m.inherits_from.len()
                + vocab_related(&m.related_to);
            for rm in &m.role_mappings {
                count += 1;
                if rm.node.as_ref().is_none_or(|n| seen_nodes.insert(n)) {
                    count += 2;
                }
            }
        }
        for im in &self.incomplete_mappings {
            count += 1;
            if seen_nodes.insert(&im.node) {
                count += usize::from(im.source_role.is_some()) + usize::from(im.target_role.is_some());
            }
        }
        count += self.synset_pos.values().map(BTreeSet::len).sum::<usize>();
        count += self.synset_lemmas.values().map(Vec::len).sum::<usize>();
        count += self.framenet_frames.len();
        count += self.links.values().map(Vec::len).sum::<usize>();
        count += self.other_types.len();
        count += self.other_labels.len();
        count += self.unplaced.len();
        count
    }
}
