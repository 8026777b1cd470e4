//! Frame composition, metaphoric frame blending, and blending of frame
//! occurrences under an identification policy.

use alloc::format;
use alloc::string::String;

use crate::hash::digest_hex;
use crate::ns::AFKG;
use crate::rdf::Iri;

mod compose;
mod interpret;
mod occurrence;

pub use compose::{blend_composed, blend_frames, merge_frames, ComposedFrame, ComposedRole, CompositionKind, RoleOrigin};
pub use interpret::{select_interpretation, ConstraintTable, Interpretation};
pub use occurrence::{
    blend_occurrences, BlendedOccurrence, FrameOccurrence, IdentificationPolicy, MergeRecord, RoleBinding,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlendError {
    #[error("{0} does not resolve to a frame")]
    UnresolvedFrame(Iri),
    #[error("{0} does not resolve to a metaphor")]
    UnresolvedMetaphor(Iri),
    #[error("metaphor {metaphor} has no {side} frame")]
    IncompleteMetaphor { metaphor: Iri, side: &'static str },
    #[error("{0} composition is not conservative; use a metaphoric blend")]
    NotConservative(CompositionKind),
    #[error("a metaphoric blend needs at least one role mapping")]
    NoMappings,
    #[error("role {role} is not a role of {frame}")]
    ForeignRole { role: Iri, frame: Iri },
    #[error("role {0} is mapped more than once")]
    DuplicateMapping(Iri),
    #[error("occurrence {occurrence} is over {found}, expected {expected}")]
    FrameMismatch { occurrence: Iri, expected: Iri, found: Iri },
    #[error("header frame {0} has no entry in the constraint table")]
    HeaderNotInTable(Iri),
}

/// Mints `https://w3id.org/afkg/{kind}/{name}`, falling back to a digest
/// when the name is empty.
pub(crate) fn mint(kind: &str, name: &str) -> Iri {
    let name = if name.is_empty() { digest_hex(&[kind], 8) } else { String::from(name) };
    Iri::new(format!("{AFKG}{kind}/{name}")).expect("minted IRIs are absolute")
}
