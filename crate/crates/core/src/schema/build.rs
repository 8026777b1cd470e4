use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rdf::{Graph, Iri, Term, TripleRef};

use super::{
    Alignment, AlignmentKind, DanglingReference, Frame, IncompleteMapping, KnowledgeBase, LexicalUnit, Metaphor,
    PartOfSpeech, ReferenceField, Role, RoleMapping, SynsetPos, Vocab,
};

/// Projects `graph` into a [`KnowledgeBase`].
///
/// A frame is any IRI typed with the frame class or used as the subject of a
/// role, sub-frame or lexical-unit triple; metaphors are recognised the same
/// way from their own predicates. Every triple whose predicate belongs to the
/// schema vocabulary ends up in exactly one place: a typed field, the
/// `related_to` list of its subject, the auxiliary synset/FrameNet/link
/// tables, or the `unplaced` list. Nothing is dropped silently.
pub fn build_kb(graph: Graph, vocab: Vocab) -> KnowledgeBase {
    let scan = Scan::new(&graph, &vocab);
    let mut kb = KnowledgeBase {
        vocab: vocab.clone(),
        frames: scan.frame_ids.iter().map(|id| (id.clone(), Frame::new(id.clone()))).collect(),
        metaphors: scan.metaphor_ids.iter().map(|id| (id.clone(), Metaphor::new(id.clone()))).collect(),
        role_owners: BTreeMap::new(),
        synset_pos: BTreeMap::new(),
        synset_lemmas: BTreeMap::new(),
        framenet_frames: BTreeSet::new(),
        links: BTreeMap::new(),
        other_types: Vec::new(),
        other_labels: BTreeMap::new(),
        incomplete_mappings: Vec::new(),
        unplaced: Vec::new(),
        dangling: Vec::new(),
        sub_frames: BTreeMap::new(),
        close_match_inverse: BTreeMap::new(),
        graph: Graph::new(),
    };

    let mut role_labels: BTreeMap<Iri, String> = BTreeMap::new();
    let mut frame_roles: BTreeMap<Iri, Vec<Iri>> = BTreeMap::new();

    for t in graph.sorted() {
        let Some(p) = t.predicate.as_iri() else { continue };
        let s_iri = t.subject.as_iri();
        let frame = s_iri.filter(|s| scan.frame_ids.contains(*s)).cloned();
        let metaphor = s_iri.filter(|s| scan.metaphor_ids.contains(*s)).cloned();
        let placed = place(&mut kb, &scan, &vocab, t, p, frame.as_ref(), metaphor.as_ref(), &mut role_labels, &mut frame_roles);
        if !placed {
            if vocab.is_kb_predicate(p) {
                kb.unplaced.push(t.to_owned());
            } else if let Some(f) = frame {
                kb.frames.get_mut(&f).expect("scanned").related_to.push((p.clone(), t.object.clone()));
            } else if let Some(m) = metaphor {
                kb.metaphors.get_mut(&m).expect("scanned").related_to.push((p.clone(), t.object.clone()));
            }
        }
    }

    for (frame_id, roles) in frame_roles {
        let frame = kb.frames.get_mut(&frame_id).expect("scanned");
        for role in roles {
            kb.role_owners.entry(role.clone()).or_default().push(frame_id.clone());
            frame.roles.push(Role { label: role_labels.get(&role).cloned(), id: role, of_frame: frame_id.clone() });
        }
    }

    finish(&mut kb, &graph);
    kb.graph = graph;
    kb
}

/// Facts gathered in a first pass: which subjects are frames, metaphors,
/// synsets, and which nodes are well-formed lexical units or mappings.
struct Scan {
    frame_ids: BTreeSet<Iri>,
    metaphor_ids: BTreeSet<Iri>,
    synsets: BTreeSet<Iri>,
    roles: BTreeSet<Iri>,
    /// Node to (lemma, pos) chosen for complete lexical units.
    lexical_units: BTreeMap<Term, (Term, Term)>,
    /// Node to its first source and target role.
    mappings: BTreeMap<Term, (Option<Iri>, Option<Iri>)>,
}

impl Scan {
    fn new(graph: &Graph, v: &Vocab) -> Self {
        let mut frame_ids = BTreeSet::new();
        let mut metaphor_ids = BTreeSet::new();
        let mut synsets = BTreeSet::new();
        let frame_preds = [&v.has_role, &v.sub_frame_of, &v.has_lexical_unit];
        let metaphor_preds = [&v.has_source_frame, &v.has_target_frame, &v.has_mapping, &v.inherits_from, &v.entailment];
        for t in graph.iter() {
            let (Some(s), Some(p)) = (t.subject.as_iri(), t.predicate.as_iri()) else { continue };
            if *p == v.rdf_type {
                match t.object.as_iri() {
                    Some(o) if *o == v.frame_class => {
                        frame_ids.insert(s.clone());
                    }
                    Some(o) if *o == v.metaphor_class => {
                        metaphor_ids.insert(s.clone());
                    }
                    Some(o) if synset_class(v, o).is_some() => {
                        synsets.insert(s.clone());
                    }
                    _ => {}
                }
            }
            if frame_preds.contains(&p) {
                frame_ids.insert(s.clone());
            }
            if metaphor_preds.contains(&p) {
                metaphor_ids.insert(s.clone());
            }
        }

        let role_pred = Vocab::term(&v.has_role);
        let roles = graph
            .triples_matching(None, Some(&role_pred), None)
            .filter(|t| t.subject.as_iri().is_some_and(|s| frame_ids.contains(s)))
            .filter_map(|t| t.object.as_iri().cloned())
            .collect();
        let mut lexical_units = BTreeMap::new();
        let mut mappings = BTreeMap::new();
        let lu_pred = Vocab::term(&v.has_lexical_unit);
        let map_pred = Vocab::term(&v.has_mapping);
        for t in graph.triples_matching(None, Some(&lu_pred), None) {
            if !t.subject.as_iri().is_some_and(|s| frame_ids.contains(s)) || matches!(t.object, Term::Literal(_)) {
                continue;
            }
            let lemma = first(graph, t.object, &v.lemma, |o| matches!(o, Term::Literal(_)));
            let pos = first(graph, t.object, &v.part_of_speech, |o| !o.is_blank());
            if let (Some(lemma), Some(pos)) = (lemma, pos) {
                lexical_units.insert(t.object.clone(), (lemma.clone(), pos.clone()));
            }
        }
        for t in graph.triples_matching(None, Some(&map_pred), None) {
            if !t.subject.as_iri().is_some_and(|s| metaphor_ids.contains(s)) || matches!(t.object, Term::Literal(_)) {
                continue;
            }
            let src = first(graph, t.object, &v.mapping_source_role, |o| o.as_iri().is_some());
            let tgt = first(graph, t.object, &v.mapping_target_role, |o| o.as_iri().is_some());
            mappings.insert(
                t.object.clone(),
                (src.and_then(Term::as_iri).cloned(), tgt.and_then(Term::as_iri).cloned()),
            );
        }
        Scan { frame_ids, metaphor_ids, synsets, roles, lexical_units, mappings }
    }
}

/// Smallest object of `(node, pred, ?)` accepted by `ok`.
fn first<'a>(graph: &'a Graph, node: &Term, pred: &Iri, ok: impl Fn(&Term) -> bool) -> Option<&'a Term> {
    graph.objects(node, &Vocab::term(pred)).filter(|o| ok(o)).min()
}

fn synset_class(v: &Vocab, class: &Iri) -> Option<SynsetPos> {
    [
        (&v.noun_synset_class, SynsetPos::Noun),
        (&v.verb_synset_class, SynsetPos::Verb),
        (&v.adjective_synset_class, SynsetPos::Adjective),
        (&v.adjective_satellite_synset_class, SynsetPos::AdjectiveSatellite),
        (&v.adverb_synset_class, SynsetPos::Adverb),
    ]
    .into_iter()
    .find(|(c, _)| *c == class)
    .map(|(_, pos)| pos)
}

fn frame_mut<'a>(kb: &'a mut KnowledgeBase, id: Option<&Iri>) -> Option<&'a mut Frame> {
    id.map(|f| kb.frames.get_mut(f).expect("scanned"))
}

fn metaphor_mut<'a>(kb: &'a mut KnowledgeBase, id: Option<&Iri>) -> Option<&'a mut Metaphor> {
    id.map(|m| kb.metaphors.get_mut(m).expect("scanned"))
}

/// Routes one triple. Returns false when the triple has no typed slot.
#[allow(clippy::too_many_arguments)]
fn place(
    kb: &mut KnowledgeBase,
    scan: &Scan,
    v: &Vocab,
    t: TripleRef<'_>,
    p: &Iri,
    frame: Option<&Iri>,
    metaphor: Option<&Iri>,
    role_labels: &mut BTreeMap<Iri, String>,
    frame_roles: &mut BTreeMap<Iri, Vec<Iri>>,
) -> bool {
    let o_iri = t.object.as_iri();
    let o_lit = t.object.as_literal();

    if *p == v.rdf_type {
        let Some(class) = o_iri else { return false };
        if *class == v.frame_class {
            return frame_mut(kb, frame).map(|f| f.typed = true).is_some();
        }
        if *class == v.metaphor_class {
            return metaphor_mut(kb, metaphor).map(|m| m.typed = true).is_some();
        }
        let Some(s) = t.subject.as_iri() else {
            kb.other_types.push((t.subject.clone(), class.clone()));
            return true;
        };
        if *class == v.framenet_frame_class {
            kb.framenet_frames.insert(s.clone());
        } else if let Some(pos) = synset_class(v, class) {
            kb.synset_pos.entry(s.clone()).or_default().insert(pos);
        } else if let Some(f) = frame_mut(kb, frame) {
            f.related_to.push((p.clone(), t.object.clone()));
        } else if let Some(m) = metaphor_mut(kb, metaphor) {
            m.related_to.push((p.clone(), t.object.clone()));
        } else {
            kb.other_types.push((t.subject.clone(), class.clone()));
        }
        return true;
    }
    if *p == v.label {
        let Some(lit) = o_lit else { return false };
        if let Some(f) = frame_mut(kb, frame) {
            return f.label.is_none() && f.label.replace(lit.lexical().to_string()).is_none();
        }
        if let Some(m) = metaphor_mut(kb, metaphor) {
            return m.label.is_none() && m.label.replace(lit.lexical().to_string()).is_none();
        }
        if let Some(s) = t.subject.as_iri().filter(|s| scan.roles.contains(*s)) {
            if !role_labels.contains_key(s) {
                role_labels.insert(s.clone(), lit.lexical().to_string());
                return true;
            }
            return false;
        }
        if let Some(s) = t.subject.as_iri().filter(|s| !kb.other_labels.contains_key(*s)) {
            kb.other_labels.insert(s.clone(), lit.lexical().to_string());
            return true;
        }
        return false;
    }
    if *p == v.has_role {
        return match (frame, o_iri) {
            (Some(f), Some(role)) => {
                frame_roles.entry(f.clone()).or_default().push(role.clone());
                true
            }
            _ => false,
        };
    }
    if *p == v.sub_frame_of {
        return match (frame_mut(kb, frame), o_iri) {
            (Some(f), Some(parent)) => {
                f.sub_frame_of.push(parent.clone());
                true
            }
            _ => false,
        };
    }
    if *p == v.has_lexical_unit {
        let Some((lemma, pos)) = scan.lexical_units.get(t.object) else { return false };
        let Some(f) = frame_mut(kb, frame) else { return false };
        let pos = match pos {
            Term::Literal(l) => PartOfSpeech::parse(l.lexical()),
            Term::Iri(i) => PartOfSpeech::parse(i.local_name()),
            Term::BlankNode(_) => PartOfSpeech::Other,
        };
        let lemma = lemma.as_literal().expect("scan keeps literal lemmas").lexical().to_string();
        let evokes = f.id.clone();
        f.lexical_units.push(LexicalUnit { node: t.object.clone(), lemma, pos, evokes });
        return true;
    }
    if *p == v.lemma || *p == v.part_of_speech {
        if let Some((lemma, pos)) = scan.lexical_units.get(t.subject) {
            let chosen = if *p == v.lemma { lemma } else { pos };
            if chosen == t.object {
                return true;
            }
        }
        if *p != v.synset_lemma {
            return false;
        }
    }
    if *p == v.synset_lemma {
        return match (t.subject.as_iri().filter(|s| scan.synsets.contains(*s)), o_lit) {
            (Some(s), Some(l)) => {
                let lemmas = kb.synset_lemmas.entry(s.clone()).or_default();
                lemmas.push(l.lexical().to_string());
                lemmas.sort();
                true
            }
            _ => false,
        };
    }
    if *p == v.has_source_frame || *p == v.has_target_frame {
        let (Some(m), Some(target)) = (metaphor_mut(kb, metaphor), o_iri) else { return false };
        let slot = if *p == v.has_source_frame { &mut m.source_frame } else { &mut m.target_frame };
        return slot.is_none() && slot.replace(target.clone()).is_none();
    }
    if *p == v.has_mapping {
        let (Some(m), Some((src, tgt))) = (metaphor, scan.mappings.get(t.object)) else { return false };
        match (src, tgt) {
            (Some(source_role), Some(target_role)) => {
                kb.metaphors.get_mut(m).expect("scanned").role_mappings.push(RoleMapping {
                    source_role: source_role.clone(),
                    target_role: target_role.clone(),
                    node: Some(t.object.clone()),
                });
            }
            _ => kb.incomplete_mappings.push(IncompleteMapping {
                metaphor: m.clone(),
                node: t.object.clone(),
                source_role: src.clone(),
                target_role: tgt.clone(),
            }),
        }
        return true;
    }
    if *p == v.mapping_source_role || *p == v.mapping_target_role {
        let Some((src, tgt)) = scan.mappings.get(t.subject) else { return false };
        let chosen = if *p == v.mapping_source_role { src } else { tgt };
        return o_iri.is_some() && chosen.as_ref() == o_iri;
    }
    if *p == v.inherits_from || *p == v.entailment {
        let (Some(m), Some(target)) = (metaphor_mut(kb, metaphor), o_iri) else { return false };
        if *p == v.inherits_from {
            m.inherits_from.push(target.clone());
        } else {
            m.entailments.push(target.clone());
        }
        return true;
    }
    if *p == v.close_match {
        let Some(target) = o_iri else { return false };
        if let Some(f) = frame_mut(kb, frame) {
            let from = f.id.clone();
            f.alignments.push(Alignment { from, to: target.clone(), target_kind: AlignmentKind::Other, relation: p.clone() });
        } else if let Some(m) = metaphor_mut(kb, metaphor) {
            m.related_to.push((p.clone(), t.object.clone()));
        } else if let Some(s) = t.subject.as_iri() {
            kb.links.entry(s.clone()).or_default().push(target.clone());
        } else {
            return false;
        }
        return true;
    }
    false
}

fn finish(kb: &mut KnowledgeBase, graph: &Graph) {
    for m in kb.metaphors.values_mut() {
        m.role_mappings.sort();
    }
    let framenet = &kb.framenet_frames;
    let synsets = &kb.synset_pos;
    for f in kb.frames.values_mut() {
        for a in &mut f.alignments {
            a.target_kind = if framenet.contains(&a.to) {
                AlignmentKind::FramenetFrame
            } else if synsets.contains_key(&a.to) {
                AlignmentKind::WordnetSynset
            } else {
                AlignmentKind::Other
            };
        }
    }

    let mut dangling = Vec::new();
    for f in kb.frames.values() {
        for parent in &f.sub_frame_of {
            kb.sub_frames.entry(parent.clone()).or_default().insert(f.id.clone());
            if !kb.frames.contains_key(parent) {
                dangling.push(DanglingReference { from: f.id.clone(), field: ReferenceField::SubFrameOf, target: parent.clone() });
            }
        }
        for a in &f.alignments {
            kb.close_match_inverse.entry(a.to.clone()).or_default().insert(f.id.clone());
            if !kb.resolves_alignment_target(&a.to) {
                dangling.push(DanglingReference { from: f.id.clone(), field: ReferenceField::Alignment, target: a.to.clone() });
            }
        }
    }
    for (s, targets) in &kb.links {
        for t in targets {
            kb.close_match_inverse.entry(t.clone()).or_default().insert(s.clone());
        }
    }
    for m in kb.metaphors.values() {
        for (p, o) in &m.related_to {
            if *p == kb.vocab.close_match {
                if let Some(o) = o.as_iri() {
                    kb.close_match_inverse.entry(o.clone()).or_default().insert(m.id.clone());
                }
            }
        }
        let frame_refs = [(ReferenceField::SourceFrame, &m.source_frame), (ReferenceField::TargetFrame, &m.target_frame)];
        for (field, target) in frame_refs {
            if let Some(target) = target.as_ref().filter(|t| !kb.frames.contains_key(*t)) {
                dangling.push(DanglingReference { from: m.id.clone(), field, target: target.clone() });
            }
        }
        for target in m.inherits_from.iter().filter(|t| !kb.metaphors.contains_key(*t)) {
            dangling.push(DanglingReference { from: m.id.clone(), field: ReferenceField::InheritsFrom, target: target.clone() });
        }
        // Entailments are stored links to arbitrary described nodes.
        for target in &m.entailments {
            if graph.triples_matching(Some(&Term::Iri(target.clone())), None, None).next().is_none() {
                dangling.push(DanglingReference { from: m.id.clone(), field: ReferenceField::Entailment, target: target.clone() });
            }
        }
        let roles = m.role_mappings.iter().map(|rm| (Some(&rm.source_role), Some(&rm.target_role)));
        let partial = kb
            .incomplete_mappings
            .iter()
            .filter(|im| im.metaphor == m.id)
            .map(|im| (im.source_role.as_ref(), im.target_role.as_ref()));
        for (src, tgt) in roles.chain(partial) {
            for (field, role) in [(ReferenceField::MappingSourceRole, src), (ReferenceField::MappingTargetRole, tgt)] {
                if let Some(role) = role.filter(|r| !kb.role_owners.contains_key(*r)) {
                    dangling.push(DanglingReference { from: m.id.clone(), field, target: role.clone() });
                }
            }
        }
    }
    dangling.sort();
    dangling.dedup();
    kb.dangling = dangling;
}
