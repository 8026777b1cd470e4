//! Namespace IRIs used by the default vocabulary and the query reader.

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";

/// Metaphor schema (properties and classes).
pub const METANET: &str = "https://w3id.org/framester/metanet/schema/";
pub const FRAMEDATA: &str = "https://w3id.org/framester/metanet/frames/";
pub const METAPHORDATA: &str = "https://w3id.org/framester/metanet/metaphors/";
/// FrameNet 1.5 schema as published in Framester.
pub const FN15SCHEMA: &str = "https://w3id.org/framester/framenet/tbox/";
/// WordNet 3.0 schema as published in Framester.
pub const WN30SCHEMA: &str = "https://w3id.org/framester/wn/wn30/schema/";

/// Namespace for IRIs minted by this tool (composed frames, blended and
/// hybrid entities, proposals).
pub const AFKG: &str = "https://w3id.org/afkg/";

pub const WELL_KNOWN: &[(&str, &str)] = &[
    ("fn15schema", FN15SCHEMA),
    ("framedata", FRAMEDATA),
    ("metanet", METANET),
    ("metaphordata", METAPHORDATA),
    ("owl", OWL),
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("skos", SKOS),
    ("wn30schema", WN30SCHEMA),
    ("xsd", XSD),
];
