use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::rdf::Iri;
use crate::schema::{Frame, KnowledgeBase, RoleMapping};

use super::{mint, BlendError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum CompositionKind {
    Intersective,
    Attributional,
    Attitude,
    Privative,
    Metaphoric,
}

impl CompositionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CompositionKind::Intersective => "intersective",
            CompositionKind::Attributional => "attributional",
            CompositionKind::Attitude => "attitude",
            CompositionKind::Privative => "privative",
            CompositionKind::Metaphoric => "metaphoric",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            CompositionKind::Intersective,
            CompositionKind::Attributional,
            CompositionKind::Attitude,
            CompositionKind::Privative,
            CompositionKind::Metaphoric,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }

    pub fn is_conservative(self) -> bool {
        matches!(self, CompositionKind::Intersective | CompositionKind::Attributional | CompositionKind::Attitude)
    }
}

impl fmt::Display for CompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case", tag = "origin"))]
pub enum RoleOrigin {
    FromCore,
    FromModifier,
    /// A source-frame role standing in for the target role it replaced.
    Substituted { replaced: Iri },
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ComposedRole {
    pub id: Iri,
    pub label: Option<String>,
    pub origin: RoleOrigin,
    /// Fixed filler, used by attitude composition where the core frame
    /// itself fills the single role.
    pub filler: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ComposedFrame {
    pub id: Iri,
    pub core: Iri,
    pub modifier: Iri,
    pub kind: CompositionKind,
    pub inherits_core: bool,
    pub roles: Vec<ComposedRole>,
}

impl ComposedFrame {
    pub fn role_ids(&self) -> impl Iterator<Item = &Iri> {
        self.roles.iter().map(|r| &r.id)
    }
}

/// Minted id of the frame composed from `core` and `modifier`, written
/// modifier first (`Nationality+Woman`).
pub(crate) fn composed_id(kind: CompositionKind, core: &Iri, modifier: &Iri) -> Iri {
    let name = match kind {
        CompositionKind::Attitude => format!("{}({})", modifier.local_name(), core.local_name()),
        _ => format!("{}+{}", modifier.local_name(), core.local_name()),
    };
    mint(&format!("frames/{kind}"), &name)
}

fn frame<'a>(kb: &'a KnowledgeBase, id: &Iri) -> Result<&'a Frame, BlendError> {
    kb.frame(id).ok_or_else(|| BlendError::UnresolvedFrame(id.clone()))
}

fn roles_of(f: &Frame, origin: RoleOrigin) -> impl Iterator<Item = ComposedRole> + '_ {
    f.roles.iter().map(move |r| ComposedRole { id: r.id.clone(), label: r.label.clone(), origin: origin.clone(), filler: None })
}

/// Conservative composition of a core frame with a modifier frame.
///
/// Intersective and attributional composition keep the core roles and add
/// the modifier roles the core lacks. Attitude composition produces a frame
/// with one role, filled by the core frame itself.
pub fn merge_frames(kb: &KnowledgeBase, core: &Iri, modifier: &Iri, kind: CompositionKind) -> Result<ComposedFrame, BlendError> {
    if !kind.is_conservative() {
        return Err(BlendError::NotConservative(kind));
    }
    let core_frame = frame(kb, core)?;
    let modifier_frame = frame(kb, modifier)?;
    let id = composed_id(kind, core, modifier);
    let roles = match kind {
        CompositionKind::Attitude => alloc::vec![ComposedRole {
            id: Iri::new(format!("{id}/about")).expect("minted IRIs are absolute"),
            label: Some(format!("{} about", modifier_frame.display_label())),
            origin: RoleOrigin::FromModifier,
            filler: Some(core.clone()),
        }],
        _ => {
            let mut roles: Vec<ComposedRole> = roles_of(core_frame, RoleOrigin::FromCore).collect();
            let seen: BTreeSet<Iri> = roles.iter().map(|r| r.id.clone()).collect();
            roles.extend(roles_of(modifier_frame, RoleOrigin::FromModifier).filter(|r| !seen.contains(&r.id)));
            roles
        }
    };
    Ok(ComposedFrame { id, core: core.clone(), modifier: modifier.clone(), kind, inherits_core: true, roles })
}

/// Metaphoric blend of a target frame with a source frame: each mapped
/// target role is replaced by its source role, one for one; unmapped target
/// roles are kept as they are.
pub fn blend_frames(kb: &KnowledgeBase, target: &Iri, source: &Iri, mappings: &[RoleMapping]) -> Result<ComposedFrame, BlendError> {
    let target_frame = frame(kb, target)?;
    let roles: Vec<ComposedRole> = roles_of(target_frame, RoleOrigin::FromCore).collect();
    blend_roles(kb, target, roles, source, mappings)
}

/// Like [`blend_frames`], with a composed frame (e.g. `Feeling+Woman`) as
/// the target.
pub fn blend_composed(kb: &KnowledgeBase, target: &ComposedFrame, source: &Iri, mappings: &[RoleMapping]) -> Result<ComposedFrame, BlendError> {
    blend_roles(kb, &target.id, target.roles.clone(), source, mappings)
}

fn blend_roles(
    kb: &KnowledgeBase,
    target: &Iri,
    mut roles: Vec<ComposedRole>,
    source: &Iri,
    mappings: &[RoleMapping],
) -> Result<ComposedFrame, BlendError> {
    if mappings.is_empty() {
        return Err(BlendError::NoMappings);
    }
    let source_frame = frame(kb, source)?;
    let mut used_targets = BTreeSet::new();
    let mut used_sources = BTreeSet::new();
    for m in mappings {
        if !source_frame.has_role(&m.source_role) {
            return Err(BlendError::ForeignRole { role: m.source_role.clone(), frame: source.clone() });
        }
        if !roles.iter().any(|r| r.id == m.target_role) {
            return Err(BlendError::ForeignRole { role: m.target_role.clone(), frame: target.clone() });
        }
        if !used_targets.insert(&m.target_role) {
            return Err(BlendError::DuplicateMapping(m.target_role.clone()));
        }
        if !used_sources.insert(&m.source_role) {
            return Err(BlendError::DuplicateMapping(m.source_role.clone()));
        }
    }
    for role in &mut roles {
        if let Some(m) = mappings.iter().find(|m| m.target_role == role.id) {
            let label = source_frame.roles.iter().find(|r| r.id == m.source_role).and_then(|r| r.label.clone());
            *role = ComposedRole {
                id: m.source_role.clone(),
                label,
                origin: RoleOrigin::Substituted { replaced: m.target_role.clone() },
                filler: None,
            };
        }
    }
    Ok(ComposedFrame {
        id: composed_id(CompositionKind::Metaphoric, target, source),
        core: target.clone(),
        modifier: source.clone(),
        kind: CompositionKind::Metaphoric,
        inherits_core: false,
        roles,
    })
}

impl fmt::Display for ComposedFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}, inherits core: {})", self.id, self.kind, self.inherits_core)?;
        for r in &self.roles {
            let origin = match &r.origin {
                RoleOrigin::FromCore => "from-core".to_string(),
                RoleOrigin::FromModifier => "from-modifier".to_string(),
                RoleOrigin::Substituted { replaced } => format!("substituted for {replaced}"),
            };
            write!(f, "  {} [{origin}]", r.id)?;
            if let Some(filler) = &r.filler {
                write!(f, " filled by {filler}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
