use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use afkg_core::rdf::{
    graphs_equal, match_bgp, parse_query, parse_turtle, serialize_ntriples, serialize_turtle, well_known_prefixes, Binding,
    BgpQuery, IndexOrder, PatternGroup, PatternTerm, Variable,
};
use afkg_core::{Graph, Iri, Literal, Term, Triple, TriplePattern};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const FIG1: &str = include_str!("../../../fixtures/fig1.ttl");
const FIG2: &str = include_str!("../../../fixtures/fig2.ttl");
const FIG3: &str = include_str!("../../../fixtures/fig3.ttl");
const METANET: &str = include_str!("../../../fixtures/metanet.ttl");
const QUERY: &str = include_str!("../../../fixtures/lexicalization.rq");

fn iri_strategy() -> impl Strategy<Value = Iri> {
    prop_oneof![
        "[a-z]{1,6}".prop_map(|l| format!("http://example.org/{l}")),
        "[A-Za-z0-9_]{1,8}".prop_map(|l| format!("https://w3id.org/framester/metanet/frames/{l}")),
        "[a-z]{1,4}".prop_map(|l| format!("urn:x:{l}#frag")),
        Just("http://www.w3.org/1999/02/22-rdf-syntax-ns#type".to_string()),
        "[a-z]{1,3}".prop_map(|l| format!("http://example.org/path/with.dots/{l}.")),
    ]
    .prop_map(|s| Iri::new(s).unwrap())
}

fn literal_strategy() -> impl Strategy<Value = Literal> {
    let text = prop_oneof!["[a-z ]{0,8}", "\\PC{0,10}", Just("line\nbreak \"quoted\" \\ tab\t".to_string())];
    prop_oneof![
        text.clone().prop_map(Literal::simple),
        (text.clone(), prop_oneof![Just("en"), Just("it"), Just("en-GB")])
            .prop_map(|(t, l)| Literal::with_language(t, l).unwrap()),
        (text, iri_strategy()).prop_map(|(t, d)| Literal::typed(t, d)),
        any::<i32>().prop_map(|n| Literal::typed(
            n.to_string(),
            Iri::new("http://www.w3.org/2001/XMLSchema#integer").unwrap()
        )),
    ]
}

fn triple_strategy() -> impl Strategy<Value = Triple> {
    let object = prop_oneof![3 => iri_strategy().prop_map(Term::Iri), 2 => literal_strategy().prop_map(Term::Literal)];
    (iri_strategy(), iri_strategy(), object).prop_map(|(s, p, o)| Triple::new(Term::Iri(s), Term::Iri(p), o).unwrap())
}

fn graph_strategy(max: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec(triple_strategy(), 0..=max).prop_map(|ts| ts.into_iter().collect())
}

fn round_trips(g: &Graph) -> bool {
    let text = serialize_turtle(g);
    let back = parse_turtle(&text, None).unwrap_or_else(|e| panic!("{e}\n{text}"));
    let again = parse_turtle(&serialize_turtle(&back), None).unwrap();
    graphs_equal(g, &back).unwrap() && graphs_equal(&back, &again).unwrap() && serialize_turtle(&back) == text
}

#[test]
fn turtle_round_trip_random_and_fixtures() {
    // Only codec time counts against the budget, not input generation.
    let elapsed = std::cell::Cell::new(Duration::ZERO);
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    runner
        .run(&graph_strategy(500), |g| {
            let start = Instant::now();
            let ok = round_trips(&g);
            elapsed.set(elapsed.get() + start.elapsed());
            prop_assert!(ok);
            Ok(())
        })
        .unwrap();
    for text in [FIG1, FIG2, FIG3, METANET] {
        let start = Instant::now();
        let g = parse_turtle(text, None).unwrap();
        assert!(!g.is_empty());
        assert!(round_trips(&g));
        elapsed.set(elapsed.get() + start.elapsed());
    }
    let elapsed = elapsed.get();
    println!("round-trip codec time {elapsed:?}");
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
}

proptest! {
    #[test]
    fn ntriples_is_a_line_per_triple(g in graph_strategy(40)) {
        let nt = serialize_ntriples(&g);
        prop_assert_eq!(nt.lines().count(), g.len());
        let back = parse_turtle(&nt, None).unwrap();
        prop_assert!(graphs_equal(&g, &back).unwrap());
    }

    #[test]
    fn indexes_agree(g in graph_strategy(60), mask in 0u8..8, pick in any::<prop::sample::Index>()) {
        let all: Vec<Triple> = g.iter().map(|t| t.to_owned()).collect();
        prop_assume!(!all.is_empty());
        let probe = &all[pick.index(all.len())];
        let s = (mask & 1 != 0).then_some(probe.subject());
        let p = (mask & 2 != 0).then_some(probe.predicate());
        let o = (mask & 4 != 0).then_some(probe.object());
        let expected: BTreeSet<Triple> = all
            .iter()
            .filter(|t| s.is_none_or(|x| x == t.subject()) && p.is_none_or(|x| x == t.predicate()) && o.is_none_or(|x| x == t.object()))
            .cloned()
            .collect();
        prop_assert!(expected.contains(probe));
        for order in [IndexOrder::Spo, IndexOrder::Pos, IndexOrder::Osp] {
            let got: Vec<Triple> = g.triples_matching_with(order, s, p, o).map(|t| t.to_owned()).collect();
            prop_assert_eq!(got.len(), expected.len());
            prop_assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), expected.clone());
        }
    }
}

// Brute-force oracle: nested loops over a full scan, no indexes.

fn unify(pattern: &TriplePattern, t: &Triple, binding: &Binding) -> Option<Binding> {
    let mut b = binding.clone();
    for (pt, term) in pattern.positions().into_iter().zip([t.subject(), t.predicate(), t.object()]) {
        match pt {
            PatternTerm::Term(x) if x != term => return None,
            PatternTerm::Term(_) => {}
            PatternTerm::Variable(v) => match b.get(v) {
                Some(bound) if bound != term => return None,
                Some(_) => {}
                None => {
                    b.insert(v.clone(), term.clone());
                }
            },
        }
    }
    Some(b)
}

fn join(all: &[Triple], patterns: &[TriplePattern], seeds: Vec<Binding>) -> Vec<Binding> {
    patterns.iter().fold(seeds, |acc, p| {
        acc.iter().flat_map(|b| all.iter().filter_map(move |t| unify(p, t, b))).collect()
    })
}

fn oracle(g: &Graph, q: &BgpQuery) -> Vec<Binding> {
    let all: Vec<Triple> = g.iter().map(|t| t.to_owned()).collect();
    let mut sols = vec![Binding::new()];
    for group in q.groups() {
        sols = match group {
            PatternGroup::Basic(ps) => join(&all, ps, sols),
            PatternGroup::Union(a, b) => {
                let mut l = join(&all, a, sols.clone());
                l.extend(join(&all, b, sols));
                l
            }
        };
    }
    let mut rows: Vec<Binding> = sols.iter().map(|b| b.project(q.projection())).collect();
    rows.sort_by_key(|b| q.projection().iter().map(|v| b.get(v).cloned()).collect::<Vec<_>>());
    if q.distinct() {
        rows.dedup();
    }
    rows
}

/// Small vocabulary so random queries actually hit.
fn dense_graph() -> impl Strategy<Value = Graph> {
    let node = (0u8..6).prop_map(|i| Term::Iri(Iri::new(format!("http://e/n{i}")).unwrap()));
    let pred = (0u8..3).prop_map(|i| Term::Iri(Iri::new(format!("http://e/p{i}")).unwrap()));
    let obj = prop_oneof![4 => node.clone(), 1 => (0u8..3).prop_map(|i| Term::Literal(Literal::simple(format!("v{i}"))))];
    prop::collection::vec((node, pred, obj), 0..=200)
        .prop_map(|ts| ts.into_iter().map(|(s, p, o)| Triple::new(s, p, o).unwrap()).collect())
}

fn pattern_term(allow_literal: bool) -> impl Strategy<Value = PatternTerm> {
    let var = (0u8..4).prop_map(|i| PatternTerm::var(&format!("v{i}")).unwrap());
    let node = (0u8..6).prop_map(|i| PatternTerm::Term(Term::Iri(Iri::new(format!("http://e/n{i}")).unwrap())));
    if allow_literal {
        let lit = (0u8..3).prop_map(|i| PatternTerm::Term(Term::Literal(Literal::simple(format!("v{i}")))));
        prop_oneof![3 => var, 2 => node, 1 => lit].boxed()
    } else {
        prop_oneof![3 => var, 2 => node].boxed()
    }
}

fn pattern() -> impl Strategy<Value = TriplePattern> {
    let pred = prop_oneof![
        1 => (0u8..4).prop_map(|i| PatternTerm::var(&format!("v{i}")).unwrap()),
        3 => (0u8..3).prop_map(|i| PatternTerm::Term(Term::Iri(Iri::new(format!("http://e/p{i}")).unwrap()))),
    ];
    (pattern_term(false), pred, pattern_term(true)).prop_map(|(s, p, o)| TriplePattern::new(s, p, o))
}

fn query() -> impl Strategy<Value = BgpQuery> {
    let basic = || prop::collection::vec(pattern(), 1..=4).prop_map(PatternGroup::Basic);
    let union = || {
        (prop::collection::vec(pattern(), 1..=2), prop::collection::vec(pattern(), 1..=2))
            .prop_map(|(a, b)| PatternGroup::Union(a, b))
    };
    let groups = prop_oneof![
        3 => basic().prop_map(|b| vec![b]),
        1 => union().prop_map(|u| vec![u]),
        1 => (basic(), union()).prop_map(|(b, u)| vec![b, u]),
    ];
    (groups, any::<bool>(), prop::collection::vec(0u8..4, 0..3)).prop_map(|(groups, distinct, proj)| {
        let vars: Vec<Variable> = proj.iter().map(|i| Variable::new(format!("v{i}")).unwrap()).collect::<BTreeSet<_>>().into_iter().collect();
        let projection = (!vars.is_empty()).then_some(vars);
        BgpQuery::new(groups.clone(), projection, distinct).unwrap_or_else(|_| BgpQuery::new(groups, None, distinct).unwrap())
    })
}

#[test]
fn bgp_matches_brute_force() {
    let mut runner = TestRunner::new(Config { cases: 50, failure_persistence: None, ..Config::default() });
    let strategy = (dense_graph(), prop::collection::vec(query(), 20));
    runner
        .run(&strategy, |(g, queries)| {
            for q in &queries {
                prop_assert_eq!(match_bgp(&g, q), oracle(&g, q), "{:?}", q);
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn lexicalization_query_matches_oracle() {
    let g = parse_turtle(METANET, None).unwrap();
    let q = parse_query(QUERY, &well_known_prefixes()).unwrap();
    assert!(q.distinct());
    let ours = match_bgp(&g, &q);
    assert_eq!(ours, oracle(&g, &q));
    let tsyn: BTreeSet<&str> = ours.iter().filter_map(|b| b.get_named("tsyn")?.as_iri().map(Iri::as_str)).collect();
    assert_eq!(tsyn.len(), 1);
    assert!(tsyn.iter().all(|t| t.ends_with("synset-crime-noun-1")));
}
