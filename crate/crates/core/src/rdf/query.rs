use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Graph, RdfError, Term};

/// A named query variable (case-sensitive, non-empty).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(transparent))]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Result<Self, RdfError> {
        let name = name.into();
        if name.is_empty() {
            return Err(RdfError::EmptyVariable);
        }
        Ok(Variable(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PatternTerm {
    Variable(Variable),
    Term(Term),
}

impl PatternTerm {
    pub fn var(name: &str) -> Result<Self, RdfError> {
        Variable::new(name).map(PatternTerm::Variable)
    }

    fn as_var(&self) -> Option<&Variable> {
        match self {
            PatternTerm::Variable(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Term(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }

    /// Replaces variables bound in `binding` with their terms.
    fn substitute(&self, binding: &Binding) -> TriplePattern {
        let sub = |p: &PatternTerm| match p {
            PatternTerm::Variable(v) => match binding.get(v) {
                Some(t) => PatternTerm::Term(t.clone()),
                None => p.clone(),
            },
            PatternTerm::Term(_) => p.clone(),
        };
        TriplePattern {
            subject: sub(&self.subject),
            predicate: sub(&self.predicate),
            object: sub(&self.object),
        }
    }
}

/// Variable assignments for one solution.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(transparent))]
pub struct Binding(BTreeMap<Variable, Term>);

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &Variable) -> Option<&Term> {
        self.0.get(var)
    }

    /// Lookup by name without constructing a [`Variable`].
    pub fn get_named(&self, name: &str) -> Option<&Term> {
        self.0.iter().find(|(v, _)| v.name() == name).map(|(_, t)| t)
    }

    pub fn insert(&mut self, var: Variable, term: Term) -> Option<Term> {
        self.0.insert(var, term)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Term)> {
        self.0.iter()
    }

    /// Keeps only the listed variables.
    pub fn project(&self, vars: &[Variable]) -> Binding {
        Binding(
            vars.iter()
                .filter_map(|v| self.0.get(v).map(|t| (v.clone(), t.clone())))
                .collect(),
        )
    }
}

impl FromIterator<(Variable, Term)> for Binding {
    fn from_iter<I: IntoIterator<Item = (Variable, Term)>>(iter: I) -> Self {
        Binding(iter.into_iter().collect())
    }
}

/// One block of a query body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternGroup {
    /// Conjunction of patterns, joined left to right.
    Basic(Vec<TriplePattern>),
    /// Bag union of two conjunctions.
    Union(Vec<TriplePattern>, Vec<TriplePattern>),
}

/// A SELECT over basic graph patterns with optional two-way UNION blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BgpQuery {
    groups: Vec<PatternGroup>,
    projection: Vec<Variable>,
    distinct: bool,
}

impl BgpQuery {
    /// `projection = None` selects every variable that every solution binds,
    /// in order of first appearance.
    ///
    /// Projected variables must occur in some pattern, and must be bound in
    /// every solution: a variable that appears only in one branch of a UNION
    /// is rejected so that output bindings are always total.
    pub fn new(
        groups: Vec<PatternGroup>,
        projection: Option<Vec<Variable>>,
        distinct: bool,
    ) -> Result<Self, RdfError> {
        let mut seen = BTreeSet::new();
        let mut order = Vec::new();
        let mut certain = BTreeSet::new();
        let vars_of = |patterns: &[TriplePattern]| -> BTreeSet<Variable> {
            patterns.iter().flat_map(|p| p.variables().cloned()).collect()
        };
        for group in &groups {
            let patterns: Vec<&TriplePattern> = match group {
                PatternGroup::Basic(ps) => {
                    certain.extend(vars_of(ps));
                    ps.iter().collect()
                }
                PatternGroup::Union(a, b) => {
                    let (va, vb) = (vars_of(a), vars_of(b));
                    certain.extend(va.intersection(&vb).cloned());
                    a.iter().chain(b.iter()).collect()
                }
            };
            for v in patterns.iter().flat_map(|p| p.variables()) {
                if seen.insert(v.clone()) {
                    order.push(v.clone());
                }
            }
        }
        let projection = match projection {
            Some(vars) => {
                for v in &vars {
                    if !seen.contains(v) {
                        return Err(RdfError::UnknownProjectedVariable(v.name().into()));
                    }
                    if !certain.contains(v) {
                        return Err(RdfError::PartiallyBoundVariable(v.name().into()));
                    }
                }
                vars
            }
            None => order.into_iter().filter(|v| certain.contains(v)).collect(),
        };
        Ok(BgpQuery {
            groups,
            projection,
            distinct,
        })
    }

    pub fn groups(&self) -> &[PatternGroup] {
        &self.groups
    }

    pub fn projection(&self) -> &[Variable] {
        &self.projection
    }

    pub fn distinct(&self) -> bool {
        self.distinct
    }
}

/// Every binding of the pattern's variables that turns it into a triple of
/// `graph`. A variable repeated within the pattern must match the same term.
pub fn match_pattern<'a>(
    graph: &'a Graph,
    pattern: &'a TriplePattern,
) -> impl Iterator<Item = Binding> + 'a {
    let concrete = |p: &'a PatternTerm| match p {
        PatternTerm::Term(t) => Some(t),
        PatternTerm::Variable(_) => None,
    };
    graph
        .triples_matching(
            concrete(&pattern.subject),
            concrete(&pattern.predicate),
            concrete(&pattern.object),
        )
        .filter_map(move |t| {
            let mut b = Binding::new();
            for (p, term) in pattern.positions().into_iter().zip([t.subject, t.predicate, t.object]) {
                if let PatternTerm::Variable(v) = p {
                    match b.get(v) {
                        Some(existing) if existing != term => return None,
                        Some(_) => {}
                        None => {
                            b.insert(v.clone(), term.clone());
                        }
                    }
                }
            }
            Some(b)
        })
}

fn extend(graph: &Graph, patterns: &[TriplePattern], mut solutions: Vec<Binding>) -> Vec<Binding> {
    for pattern in patterns {
        let mut next = Vec::new();
        for sol in &solutions {
            let bound = pattern.substitute(sol);
            for m in match_pattern(graph, &bound) {
                let mut merged = sol.clone();
                for (v, t) in m.0 {
                    merged.0.insert(v, t);
                }
                next.push(merged);
            }
        }
        solutions = next;
        if solutions.is_empty() {
            break;
        }
    }
    solutions
}

/// Evaluates the query: conjunctive join left to right, UNION as bag union,
/// projection, optional DISTINCT, then sort by the projected terms.
pub fn match_bgp(graph: &Graph, query: &BgpQuery) -> Vec<Binding> {
    let mut solutions = alloc::vec![Binding::new()];
    for group in &query.groups {
        solutions = match group {
            PatternGroup::Basic(ps) => extend(graph, ps, solutions),
            PatternGroup::Union(a, b) => {
                let mut left = extend(graph, a, solutions.clone());
                left.extend(extend(graph, b, solutions));
                left
            }
        };
    }
    let mut rows: Vec<Binding> = solutions
        .iter()
        .map(|s| s.project(&query.projection))
        .collect();
    let key = |b: &Binding| -> Vec<Option<Term>> {
        query.projection.iter().map(|v| b.get(v).cloned()).collect()
    };
    rows.sort_by_cached_key(key);
    if query.distinct {
        rows.dedup();
    }
    rows
}
