use alloc::collections::{BTreeMap, BTreeSet};

use crate::rdf::Iri;
use crate::schema::KnowledgeBase;

use super::BlendError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum Interpretation {
    Conservative,
    Privative,
    Metaphoric,
}

impl Interpretation {
    pub fn as_str(self) -> &'static str {
        match self {
            Interpretation::Conservative => "conservative",
            Interpretation::Privative => "privative",
            Interpretation::Metaphoric => "metaphoric",
        }
    }
}

/// Admissible entity types per frame role.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintTable {
    admissible: BTreeMap<Iri, BTreeSet<Iri>>,
}

impl ConstraintTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn allow(&mut self, role: Iri, entity_type: Iri) {
        self.admissible.entry(role).or_default().insert(entity_type);
    }

    pub fn admissible(&self, role: &Iri) -> Option<&BTreeSet<Iri>> {
        self.admissible.get(role)
    }

    /// Union of admissible types over `roles`, or `None` if no role has an entry.
    fn types_for<'a>(&'a self, roles: impl Iterator<Item = &'a Iri>) -> Option<BTreeSet<&'a Iri>> {
        let mut any = false;
        let mut out = BTreeSet::new();
        for r in roles {
            if let Some(types) = self.admissible.get(r) {
                any = true;
                out.extend(types);
            }
        }
        any.then_some(out)
    }
}

impl FromIterator<(Iri, Iri)> for ConstraintTable {
    fn from_iter<T: IntoIterator<Item = (Iri, Iri)>>(iter: T) -> Self {
        let mut table = ConstraintTable::new();
        for (role, ty) in iter {
            table.allow(role, ty);
        }
        table
    }
}

/// Chooses how a modifier frame applied to a header frame is read.
///
/// The modifier is compatible when some type admissible for one of its roles
/// is also admissible for one of the header's roles; that reading is
/// conservative. Otherwise the header entity's own type decides: if the
/// header frame does not admit it (a statue is not a woman) the reading is
/// privative, and if it does the modifier must be read metaphorically.
pub fn select_interpretation(
    kb: &KnowledgeBase,
    header_frame: &Iri,
    header_entity_type: &Iri,
    modifier_frame: &Iri,
    table: &ConstraintTable,
) -> Result<Interpretation, BlendError> {
    let header = kb.frame(header_frame).ok_or_else(|| BlendError::UnresolvedFrame(header_frame.clone()))?;
    let modifier = kb.frame(modifier_frame).ok_or_else(|| BlendError::UnresolvedFrame(modifier_frame.clone()))?;
    let header_types = table
        .types_for(header.roles.iter().map(|r| &r.id))
        .ok_or_else(|| BlendError::HeaderNotInTable(header_frame.clone()))?;
    let modifier_types = table.types_for(modifier.roles.iter().map(|r| &r.id)).unwrap_or_default();
    Ok(if !header_types.is_disjoint(&modifier_types) {
        Interpretation::Conservative
    } else if header_types.contains(header_entity_type) {
        Interpretation::Metaphoric
    } else {
        Interpretation::Privative
    })
}
