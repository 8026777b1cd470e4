use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rdf::Iri;
use crate::schema::KnowledgeBase;

use super::{is_framenet_aligned, GenerationError};

/// Lemma to candidate-frame index used for alignment suggestions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<Iri>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `frame` as a candidate for `lemma` (lowercased); repeats are ignored.
    pub fn insert(&mut self, lemma: &str, frame: Iri) {
        let frames = self.entries.entry(lemma.trim().to_lowercase()).or_default();
        if !frames.contains(&frame) {
            frames.push(frame);
        }
    }

    pub fn get(&self, lemma: &str) -> &[Iri] {
        self.entries.get(lemma).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Candidate frames for a token: the token itself, then its naive
    /// singulars (`ies` to `y`, minus `es`, minus `s`). First hit wins.
    fn lookup(&self, token: &str) -> Option<(&str, &[Iri])> {
        let mut forms = alloc::vec![token.to_string()];
        if let Some(stem) = token.strip_suffix("ies") {
            forms.push(alloc::format!("{stem}y"));
        }
        if let Some(stem) = token.strip_suffix("es") {
            forms.push(stem.to_string());
        }
        if let Some(stem) = token.strip_suffix('s') {
            forms.push(stem.to_string());
        }
        forms.into_iter().find_map(|f| self.entries.get_key_value(&f).map(|(k, v)| (k.as_str(), v.as_slice())))
    }
}

impl FromIterator<(String, Iri)> for Lexicon {
    fn from_iter<T: IntoIterator<Item = (String, Iri)>>(iter: T) -> Self {
        let mut lex = Lexicon::new();
        for (lemma, frame) in iter {
            lex.insert(&lemma, frame);
        }
        lex
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AlignmentSuggestion {
    pub frame: Iri,
    /// One frame for a direct alignment, several for a composition.
    pub suggested: Vec<Iri>,
    pub is_composition: bool,
    /// Fraction of label tokens that hit the lexicon (1 for a full-label hit).
    pub score: f64,
    /// Set when some label tokens found nothing, so the suggested frame is
    /// more general than the MetaNet frame.
    pub requires_specialization: bool,
    pub matched_tokens: Vec<String>,
    pub unmatched_tokens: Vec<String>,
}

/// Splits a frame label on underscores, spaces, hyphens and lower-to-upper
/// camel-case boundaries, lowercasing every token.
pub fn tokenize_label(label: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut prev_lower = false;
    for c in label.chars() {
        if c == '_' || c == '-' || c.is_whitespace() {
            if !cur.is_empty() {
                tokens.push(core::mem::take(&mut cur));
            }
            prev_lower = false;
            continue;
        }
        if c.is_uppercase() && prev_lower && !cur.is_empty() {
            tokens.push(core::mem::take(&mut cur));
        }
        prev_lower = c.is_lowercase() || c.is_ascii_digit();
        cur.extend(c.to_lowercase());
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

/// Suggests FrameNet alignments for a frame that has none, by looking its
/// label tokens up in `lexicon`. Returns at most one suggestion; an empty
/// result means no token hit.
pub fn suggest_alignments(kb: &KnowledgeBase, frame: &Iri, lexicon: &Lexicon) -> Result<Vec<AlignmentSuggestion>, GenerationError> {
    let f = kb.frame(frame).ok_or_else(|| GenerationError::UnresolvedFrame(frame.clone()))?;
    if is_framenet_aligned(kb, frame) {
        return Err(GenerationError::AlreadyAligned(frame.clone()));
    }
    let tokens = tokenize_label(f.display_label());
    if tokens.is_empty() {
        return Ok(Vec::new());
    }

    for joined in [tokens.join("_"), tokens.join(" ")] {
        let hits = lexicon.get(&joined);
        if !hits.is_empty() {
            return Ok(alloc::vec![AlignmentSuggestion {
                frame: frame.clone(),
                suggested: hits.to_vec(),
                is_composition: hits.len() > 1,
                score: 1.0,
                requires_specialization: false,
                matched_tokens: tokens,
                unmatched_tokens: Vec::new(),
            }]);
        }
    }

    let mut suggested: Vec<Iri> = Vec::new();
    let mut seen = BTreeSet::new();
    let (mut matched, mut unmatched) = (Vec::new(), Vec::new());
    for t in &tokens {
        match lexicon.lookup(t) {
            Some((_, frames)) => {
                matched.push(t.clone());
                for fr in frames {
                    if seen.insert(fr.clone()) {
                        suggested.push(fr.clone());
                    }
                }
            }
            None => unmatched.push(t.clone()),
        }
    }
    if suggested.is_empty() {
        return Ok(Vec::new());
    }
    Ok(alloc::vec![AlignmentSuggestion {
        frame: frame.clone(),
        is_composition: suggested.len() > 1,
        suggested,
        score: matched.len() as f64 / tokens.len() as f64,
        requires_specialization: !unmatched.is_empty(),
        matched_tokens: matched,
        unmatched_tokens: unmatched,
    }])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_mixed_labels() {
        assert_eq!(tokenize_label("Abusive_political_leaders"), ["abusive", "political", "leaders"]);
        assert_eq!(tokenize_label("AttitudeTowards"), ["attitude", "towards"]);
        assert_eq!(tokenize_label("Physical bullies"), ["physical", "bullies"]);
        assert_eq!(tokenize_label("self-harm__x"), ["self", "harm", "x"]);
        assert!(tokenize_label("__").is_empty());
    }

    #[test]
    fn lookup_singularizes() {
        let iri = Iri::new("http://example.org/F").unwrap();
        let lex: Lexicon = [("bully".to_string(), iri.clone()), ("leader".to_string(), iri.clone())].into_iter().collect();
        assert_eq!(lex.lookup("bullies").unwrap().0, "bully");
        assert_eq!(lex.lookup("leaders").unwrap().0, "leader");
        assert!(lex.lookup("politics").is_none());
    }
}
