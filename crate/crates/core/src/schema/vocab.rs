use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ns::{METANET, RDF, RDFS, SKOS, FN15SCHEMA, WN30SCHEMA};
use crate::rdf::{Iri, Term};

use super::SchemaError;

macro_rules! vocab {
    ($( $(#[$doc:meta])* $field:ident = $ns:ident, $local:literal; )*) => {
        /// Predicate and class IRIs used to read the metaphor schema.
        ///
        /// Every entry can be overridden by key (the field name) through
        /// [`Vocab::set`]; see [`Vocab::KEYS`] for the full list.
        #[derive(Debug, Clone, PartialEq, Eq)]
        #[cfg_attr(feature = "serde", derive(serde::Serialize))]
        pub struct Vocab {
            $( $(#[$doc])* pub $field: Iri, )*
        }

        impl Default for Vocab {
            fn default() -> Self {
                Vocab {
                    $( $field: Iri::new(format!("{}{}", $ns, $local)).expect("default vocab IRIs are absolute"), )*
                }
            }
        }

        impl Vocab {
            pub const KEYS: &'static [&'static str] = &[$( stringify!($field), )*];

            pub fn set(&mut self, key: &str, iri: Iri) -> Result<(), SchemaError> {
                match key {
                    $( stringify!($field) => self.$field = iri, )*
                    other => return Err(SchemaError::UnknownVocabKey(other.into())),
                }
                Ok(())
            }

            pub fn get(&self, key: &str) -> Option<&Iri> {
                match key {
                    $( stringify!($field) => Some(&self.$field), )*
                    _ => None,
                }
            }

            pub fn entries(&self) -> Vec<(&'static str, &Iri)> {
                alloc::vec![$( (stringify!($field), &self.$field), )*]
            }
        }
    };
}

vocab! {
    rdf_type = RDF, "type";
    label = RDFS, "label";
    frame_class = METANET, "Frame";
    metaphor_class = METANET, "Metaphor";
    has_source_frame = METANET, "hasSourceFrame";
    has_target_frame = METANET, "hasTargetFrame";
    /// Frame to role.
    has_role = METANET, "hasRole";
    /// Metaphor to role-mapping node.
    has_mapping = METANET, "hasMapping";
    mapping_source_role = METANET, "hasSourceRole";
    mapping_target_role = METANET, "hasTargetRole";
    /// Frame to a more general frame.
    sub_frame_of = METANET, "subFrameOf";
    /// Metaphor to a more general metaphor.
    inherits_from = METANET, "inheritsFrom";
    entailment = METANET, "hasEntailment";
    /// Frame to lexical-unit node.
    has_lexical_unit = METANET, "hasLexicalUnit";
    lemma = METANET, "lemma";
    part_of_speech = METANET, "partOfSpeech";
    close_match = SKOS, "closeMatch";
    framenet_frame_class = FN15SCHEMA, "Frame";
    noun_synset_class = WN30SCHEMA, "NounSynset";
    verb_synset_class = WN30SCHEMA, "VerbSynset";
    adjective_synset_class = WN30SCHEMA, "AdjectiveSynset";
    adjective_satellite_synset_class = WN30SCHEMA, "AdjectiveSatelliteSynset";
    adverb_synset_class = WN30SCHEMA, "AdverbSynset";
    synset_lemma = WN30SCHEMA, "lemma";
    /// Occurrence to the frame it instantiates (occurrence files only).
    occurrence_of = METANET, "occurrenceOf";
}

impl Vocab {
    /// Predicates whose triples `build_kb` must place in a typed field.
    /// `occurrence_of` is not included: it belongs to occurrence files.
    pub fn kb_predicates(&self) -> [&Iri; 15] {
        [
            &self.rdf_type,
            &self.label,
            &self.has_source_frame,
            &self.has_target_frame,
            &self.has_role,
            &self.has_mapping,
            &self.mapping_source_role,
            &self.mapping_target_role,
            &self.sub_frame_of,
            &self.inherits_from,
            &self.entailment,
            &self.has_lexical_unit,
            &self.lemma,
            &self.part_of_speech,
            &self.close_match,
        ]
    }

    pub fn is_kb_predicate(&self, p: &Iri) -> bool {
        self.kb_predicates().contains(&p) || *p == self.synset_lemma
    }

    pub(crate) fn term(iri: &Iri) -> Term {
        Term::Iri(iri.clone())
    }
}

/// Name of a vocabulary key, for error messages.
pub(crate) fn describe_keys() -> String {
    Vocab::KEYS.join(", ")
}
