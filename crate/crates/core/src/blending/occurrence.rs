use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::hash::digest_hex;
use crate::rdf::Iri;
use crate::schema::KnowledgeBase;

use super::compose::composed_id;
use super::{mint, BlendError, CompositionKind};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RoleBinding {
    pub role: Iri,
    pub entity: Iri,
}

/// A situation described by a frame: role to entity bindings.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FrameOccurrence {
    pub id: Iri,
    pub frame: Iri,
    pub bindings: Vec<RoleBinding>,
}

impl FrameOccurrence {
    pub fn entities(&self) -> impl Iterator<Item = &Iri> {
        self.bindings.iter().map(|b| &b.entity)
    }

    fn bound_to<'a>(&'a self, role: &'a Iri) -> impl Iterator<Item = &'a Iri> + 'a {
        self.bindings.iter().filter(move |b| b.role == *role).map(|b| &b.entity)
    }
}

/// How entities that meet in one blended slot are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum IdentificationPolicy {
    /// The first member stands for all of them; nothing new enters the domain.
    Economic,
    /// A fresh hybrid entity is minted for each merge.
    Multiplicative,
}

impl IdentificationPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentificationPolicy::Economic => "economic",
            IdentificationPolicy::Multiplicative => "multiplicative",
        }
    }
}

impl fmt::Display for IdentificationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MergeRecord {
    pub role: Iri,
    pub members: Vec<Iri>,
    pub result: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BlendedOccurrence {
    pub id: Iri,
    pub frame: Iri,
    pub bindings: Vec<RoleBinding>,
    pub merged_entities: Vec<MergeRecord>,
    pub policy: IdentificationPolicy,
}

impl BlendedOccurrence {
    /// Merge results that are not input entities.
    pub fn fresh_entities<'a>(&'a self, inputs: &'a BTreeSet<&Iri>) -> impl Iterator<Item = &'a Iri> + 'a {
        self.merged_entities.iter().map(|m| &m.result).filter(move |r| !inputs.contains(r))
    }
}

fn check_occurrence(kb: &KnowledgeBase, occ: &FrameOccurrence, expected: &Iri) -> Result<(), BlendError> {
    if occ.frame != *expected {
        return Err(BlendError::FrameMismatch { occurrence: occ.id.clone(), expected: expected.clone(), found: occ.frame.clone() });
    }
    let frame = kb.frame(expected).ok_or_else(|| BlendError::UnresolvedFrame(expected.clone()))?;
    match occ.bindings.iter().find(|b| !frame.has_role(&b.role)) {
        Some(b) => Err(BlendError::ForeignRole { role: b.role.clone(), frame: expected.clone() }),
        None => Ok(()),
    }
}

/// Blends a target-frame occurrence with a source-frame occurrence along the
/// role mappings of `metaphor`.
///
/// Target bindings on unmapped roles come first, unchanged. Then, per
/// mapping, the entities on the target role and on the source role are
/// collected (target first, duplicates removed) and bound under the source
/// role. Two or more collected entities form a merge: under the economic
/// policy the first one stands for the group, under the multiplicative
/// policy a hybrid IRI is minted from the metaphor, the role and the sorted
/// members. Source bindings on unmapped roles are dropped.
pub fn blend_occurrences(
    kb: &KnowledgeBase,
    target_occ: &FrameOccurrence,
    source_occ: &FrameOccurrence,
    metaphor: &Iri,
    policy: IdentificationPolicy,
) -> Result<BlendedOccurrence, BlendError> {
    let m = kb.metaphor(metaphor).ok_or_else(|| BlendError::UnresolvedMetaphor(metaphor.clone()))?;
    let incomplete = |side| BlendError::IncompleteMetaphor { metaphor: metaphor.clone(), side };
    let target_frame = m.target_frame.as_ref().ok_or_else(|| incomplete("target"))?;
    let source_frame = m.source_frame.as_ref().ok_or_else(|| incomplete("source"))?;
    check_occurrence(kb, target_occ, target_frame)?;
    check_occurrence(kb, source_occ, source_frame)?;

    let inputs: BTreeSet<&Iri> = target_occ.entities().chain(source_occ.entities()).collect();
    let mut bindings: Vec<RoleBinding> = target_occ
        .bindings
        .iter()
        .filter(|b| !m.role_mappings.iter().any(|rm| rm.target_role == b.role))
        .cloned()
        .collect();
    let mut merged = Vec::new();
    let mut minted: BTreeSet<Iri> = BTreeSet::new();
    for rm in &m.role_mappings {
        let mut members: Vec<Iri> = Vec::new();
        for e in target_occ.bound_to(&rm.target_role).chain(source_occ.bound_to(&rm.source_role)) {
            if !members.contains(e) {
                members.push(e.clone());
            }
        }
        let entity = match members.len() {
            0 => continue,
            1 => members[0].clone(),
            _ => {
                let result = match policy {
                    IdentificationPolicy::Economic => members[0].clone(),
                    IdentificationPolicy::Multiplicative => {
                        hybrid(metaphor, &rm.source_role, &members, |c| inputs.contains(c) || minted.contains(c))
                    }
                };
                minted.insert(result.clone());
                merged.push(MergeRecord { role: rm.source_role.clone(), members, result: result.clone() });
                result
            }
        };
        bindings.push(RoleBinding { role: rm.source_role.clone(), entity });
    }

    let id_parts = [metaphor.as_str(), target_occ.id.as_str(), source_occ.id.as_str(), policy.as_str()];
    Ok(BlendedOccurrence {
        id: mint("occurrences", &digest_hex(&id_parts, 12)),
        frame: composed_id(CompositionKind::Metaphoric, target_frame, source_frame),
        bindings,
        merged_entities: merged,
        policy,
    })
}

/// Hybrid entity IRI for a merge; rehashed with a counter in the unlikely
/// case it collides with an existing entity.
fn hybrid(metaphor: &Iri, role: &Iri, members: &[Iri], taken: impl Fn(&Iri) -> bool) -> Iri {
    let mut sorted: Vec<&str> = members.iter().map(Iri::as_str).collect();
    sorted.sort();
    let mut parts: Vec<&str> = vec![metaphor.as_str(), role.as_str()];
    parts.extend(sorted);
    for n in 0u32.. {
        let salt = format!("{n}");
        let mut all = parts.clone();
        if n > 0 {
            all.push(&salt);
        }
        let candidate = mint("hybrid", &digest_hex(&all, 12));
        if !taken(&candidate) {
            return candidate;
        }
    }
    unreachable!("counter exhausted")
}
