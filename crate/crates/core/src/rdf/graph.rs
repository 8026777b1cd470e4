use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use super::{RdfError, Term, Triple};

type TermId = u32;
type Key = [TermId; 3];

/// Which permutation of (subject, predicate, object) an index is sorted by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexOrder {
    Spo,
    Pos,
    Osp,
}

impl IndexOrder {
    pub const ALL: [IndexOrder; 3] = [IndexOrder::Spo, IndexOrder::Pos, IndexOrder::Osp];

    /// Positions (0 = s, 1 = p, 2 = o) in key order.
    fn layout(self) -> [usize; 3] {
        match self {
            IndexOrder::Spo => [0, 1, 2],
            IndexOrder::Pos => [1, 2, 0],
            IndexOrder::Osp => [2, 0, 1],
        }
    }
}

/// A borrowed view of a stored triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TripleRef<'a> {
    pub subject: &'a Term,
    pub predicate: &'a Term,
    pub object: &'a Term,
}

impl TripleRef<'_> {
    pub fn to_owned(&self) -> Triple {
        Triple::new(self.subject.clone(), self.predicate.clone(), self.object.clone())
            .expect("stored triples are valid")
    }
}

/// An indexed set of triples.
///
/// Terms are interned; three sorted indexes (SPO, POS, OSP) hold the same
/// triples as id permutations. The graph is built by a single writer and is
/// read-only afterwards, so shared references can be handed to any number of
/// readers.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    terms: Vec<Term>,
    ids: BTreeMap<Term, TermId>,
    spo: BTreeSet<Key>,
    pos: BTreeSet<Key>,
    osp: BTreeSet<Key>,
    prefixes: BTreeMap<String, String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    /// Inserts a triple. Returns `false` if it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let s = self.intern(triple.subject());
        let p = self.intern(triple.predicate());
        let o = self.intern(triple.object());
        if !self.spo.insert([s, p, o]) {
            return false;
        }
        self.pos.insert([p, o, s]);
        self.osp.insert([o, s, p]);
        true
    }

    /// Convenience for building graphs from loose terms.
    pub fn insert_terms(&mut self, s: Term, p: Term, o: Term) -> Result<bool, RdfError> {
        Ok(self.insert(Triple::new(s, p, o)?))
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        let (Some(s), Some(p), Some(o)) = (
            self.id(triple.subject()),
            self.id(triple.predicate()),
            self.id(triple.object()),
        ) else {
            return false;
        };
        if !self.spo.remove(&[s, p, o]) {
            return false;
        }
        self.pos.remove(&[p, o, s]);
        self.osp.remove(&[o, s, p]);
        true
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        match (
            self.id(triple.subject()),
            self.id(triple.predicate()),
            self.id(triple.object()),
        ) {
            (Some(s), Some(p), Some(o)) => self.spo.contains(&[s, p, o]),
            _ => false,
        }
    }

    /// All triples, in index (not term) order.
    pub fn iter(&self) -> impl Iterator<Item = TripleRef<'_>> + '_ {
        self.spo.iter().map(move |k| self.resolve(*k))
    }

    /// All triples sorted by canonical term order of (subject, predicate, object).
    pub fn sorted(&self) -> Vec<TripleRef<'_>> {
        let mut all: Vec<_> = self.iter().collect();
        all.sort_unstable();
        all
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: &str, namespace: &str) -> Result<(), RdfError> {
        if !is_pn_prefix(prefix) {
            return Err(RdfError::InvalidPrefix(prefix.into()));
        }
        super::Iri::new(namespace)?;
        self.prefixes.insert(prefix.into(), namespace.into());
        Ok(())
    }

    /// Expands `prefix:local` using the prefix map.
    pub fn expand_curie(&self, curie: &str) -> Option<String> {
        let (prefix, local) = curie.split_once(':')?;
        let ns = self.prefixes.get(prefix)?;
        let mut out = ns.clone();
        out.push_str(local);
        Some(out)
    }

    /// Adds every triple and prefix of `other`. Blank node labels from `other`
    /// are prefixed with `blank_scope` so that separately parsed documents do
    /// not share blank nodes. Prefixes already present are kept.
    pub fn absorb(&mut self, other: &Graph, blank_scope: &str) {
        for t in other.iter() {
            let rescope = |term: &Term| match term {
                Term::BlankNode(b) if !blank_scope.is_empty() => {
                    let mut label = String::from(blank_scope);
                    label.push_str(b.label());
                    super::BlankNode::new(label)
                        .map(Term::BlankNode)
                        .unwrap_or_else(|_| term.clone())
                }
                _ => term.clone(),
            };
            let triple = Triple::new(rescope(t.subject), t.predicate.clone(), rescope(t.object))
                .expect("rescoped triple stays valid");
            self.insert(triple);
        }
        for (p, ns) in &other.prefixes {
            self.prefixes.entry(p.clone()).or_insert_with(|| ns.clone());
        }
    }

    pub fn has_blank_nodes(&self) -> bool {
        self.iter().any(|t| t.subject.is_blank() || t.object.is_blank())
    }

    /// Triples matching the given concrete positions (`None` = wildcard),
    /// answered by the index whose leading positions are concrete. A full
    /// scan happens only when all three positions are wildcards.
    pub fn triples_matching<'a>(
        &'a self,
        s: Option<&Term>,
        p: Option<&Term>,
        o: Option<&Term>,
    ) -> Box<dyn Iterator<Item = TripleRef<'a>> + 'a> {
        let order = match (s.is_some(), p.is_some(), o.is_some()) {
            (true, _, false) | (true, true, true) => IndexOrder::Spo,
            (true, false, true) => IndexOrder::Osp,
            (false, true, _) => IndexOrder::Pos,
            (false, false, true) => IndexOrder::Osp,
            (false, false, false) => IndexOrder::Spo,
        };
        self.triples_matching_with(order, s, p, o)
    }

    /// Same as [`Graph::triples_matching`] but forced onto one index. The
    /// index is range-scanned on its longest concrete key prefix and the
    /// remaining positions are filtered.
    pub fn triples_matching_with<'a>(
        &'a self,
        order: IndexOrder,
        s: Option<&Term>,
        p: Option<&Term>,
        o: Option<&Term>,
    ) -> Box<dyn Iterator<Item = TripleRef<'a>> + 'a> {
        let mut wanted: [Option<TermId>; 3] = [None; 3];
        for (slot, term) in wanted.iter_mut().zip([s, p, o]) {
            if let Some(term) = term {
                match self.id(term) {
                    Some(id) => *slot = Some(id),
                    None => return Box::new(core::iter::empty()),
                }
            }
        }
        let layout = order.layout();
        let index = match order {
            IndexOrder::Spo => &self.spo,
            IndexOrder::Pos => &self.pos,
            IndexOrder::Osp => &self.osp,
        };
        let mut lo: Key = [0; 3];
        let mut hi: Key = [TermId::MAX; 3];
        for (k, &pos) in layout.iter().enumerate() {
            match wanted[pos] {
                Some(id) => {
                    lo[k] = id;
                    hi[k] = id;
                }
                None => break,
            }
        }
        let range: RangeInclusive<Key> = lo..=hi;
        Box::new(index.range(range).filter_map(move |key| {
            let mut spo: Key = [0; 3];
            for (k, &pos) in layout.iter().enumerate() {
                spo[pos] = key[k];
            }
            let ok = wanted
                .iter()
                .zip(spo.iter())
                .all(|(w, id)| w.is_none_or(|w| w == *id));
            ok.then(|| self.resolve(spo))
        }))
    }

    /// Objects of `(subject, predicate, ?)`.
    pub fn objects<'a>(&'a self, s: &Term, p: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.triples_matching(Some(s), Some(p), None).map(|t| t.object)
    }

    /// Subjects of `(?, predicate, object)`.
    pub fn subjects<'a>(&'a self, p: &Term, o: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.triples_matching(None, Some(p), Some(o)).map(|t| t.subject)
    }

    fn intern(&mut self, term: &Term) -> TermId {
        if let Some(&id) = self.ids.get(term) {
            return id;
        }
        let id = TermId::try_from(self.terms.len()).expect("term table overflow");
        self.terms.push(term.clone());
        self.ids.insert(term.clone(), id);
        id
    }

    fn id(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    fn resolve(&self, [s, p, o]: Key) -> TripleRef<'_> {
        TripleRef {
            subject: &self.terms[s as usize],
            predicate: &self.terms[p as usize],
            object: &self.terms[o as usize],
        }
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

/// Set equality of two ground graphs. Prefix maps are ignored.
pub fn graphs_equal(a: &Graph, b: &Graph) -> Result<bool, RdfError> {
    if a.has_blank_nodes() || b.has_blank_nodes() {
        return Err(RdfError::BlankNodeComparison);
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    Ok(a.iter().all(|t| b.contains(&t.to_owned())))
}

pub(crate) fn is_pn_prefix(p: &str) -> bool {
    if p.is_empty() {
        return true;
    }
    let mut chars = p.chars();
    let first = chars.next().unwrap();
    first.is_alphabetic()
        && !p.ends_with('.')
        && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}
