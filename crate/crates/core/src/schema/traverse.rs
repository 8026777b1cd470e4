use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::rdf::Iri;

use super::validate::cycles;
use super::{AlignmentKind, KnowledgeBase, SchemaError};

/// Transitive `inherits_from` closure of `metaphor`, nearest first, each
/// ancestor once. Fails if the metaphor or any reachable parent does not
/// resolve, or if a cycle is reachable.
pub fn metaphor_ancestors(kb: &KnowledgeBase, metaphor: &Iri) -> Result<Vec<Iri>, SchemaError> {
    if kb.metaphor(metaphor).is_none() {
        return Err(SchemaError::UnresolvedMetaphor(metaphor.clone()));
    }
    closure(metaphor, |id| match kb.metaphor(id) {
        Some(m) => Ok(&m.inherits_from),
        None => Err(SchemaError::UnresolvedMetaphor(id.clone())),
    })
}

/// Transitive `sub_frame_of` closure of `frame`, with the same rules as
/// [`metaphor_ancestors`].
pub fn frame_ancestors(kb: &KnowledgeBase, frame: &Iri) -> Result<Vec<Iri>, SchemaError> {
    if kb.frame(frame).is_none() {
        return Err(SchemaError::UnresolvedFrame(frame.clone()));
    }
    closure(frame, |id| match kb.frame(id) {
        Some(f) => Ok(&f.sub_frame_of),
        None => Err(SchemaError::UnresolvedFrame(id.clone())),
    })
}

fn closure<'a>(
    start: &'a Iri,
    parents: impl Fn(&Iri) -> Result<&'a Vec<Iri>, SchemaError>,
) -> Result<Vec<Iri>, SchemaError> {
    let mut edges: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
    let mut order = Vec::new();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        let ps = parents(node)?;
        edges.insert(node, ps.iter().collect());
        for p in ps {
            if seen.insert(p) {
                order.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    if let Some(cycle) = cycles(&edges).first() {
        return Err(SchemaError::Cycle(cycle[0].clone()));
    }
    Ok(order)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Coverage {
    pub aligned: usize,
    pub total: usize,
    pub ratio: f64,
}

/// Fraction of frames with at least one alignment of `kind`.
pub fn alignment_coverage(kb: &KnowledgeBase, kind: AlignmentKind) -> Result<Coverage, SchemaError> {
    let total = kb.frames().len();
    if total == 0 {
        return Err(SchemaError::NoFrames);
    }
    let aligned = kb
        .frames()
        .values()
        .filter(|f| f.alignments.iter().any(|a| a.target_kind == kind))
        .count();
    Ok(Coverage { aligned, total, ratio: aligned as f64 / total as f64 })
}
