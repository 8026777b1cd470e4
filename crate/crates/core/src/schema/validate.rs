use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::rdf::Iri;

use super::KnowledgeBase;

/// Violation codes, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    MissingSourceFrame,
    MissingTargetFrame,
    UnresolvedRole,
    ForeignRoleInMapping,
    InheritanceCycle,
    SubFrameCycle,
    DanglingAlignment,
    DuplicateRoleId,
}

impl ViolationCode {
    pub const ALL: [ViolationCode; 8] = [
        ViolationCode::MissingSourceFrame,
        ViolationCode::MissingTargetFrame,
        ViolationCode::UnresolvedRole,
        ViolationCode::ForeignRoleInMapping,
        ViolationCode::InheritanceCycle,
        ViolationCode::SubFrameCycle,
        ViolationCode::DanglingAlignment,
        ViolationCode::DuplicateRoleId,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::MissingSourceFrame => "MISSING_SOURCE_FRAME",
            ViolationCode::MissingTargetFrame => "MISSING_TARGET_FRAME",
            ViolationCode::UnresolvedRole => "UNRESOLVED_ROLE",
            ViolationCode::ForeignRoleInMapping => "FOREIGN_ROLE_IN_MAPPING",
            ViolationCode::InheritanceCycle => "INHERITANCE_CYCLE",
            ViolationCode::SubFrameCycle => "SUBFRAME_CYCLE",
            ViolationCode::DanglingAlignment => "DANGLING_ALIGNMENT",
            ViolationCode::DuplicateRoleId => "DUPLICATE_ROLE_ID",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ViolationCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Violation {
    pub code: ViolationCode,
    pub subject: Iri,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.code, self.subject, self.message)
    }
}

/// Checks the structural rules of a knowledge base. The result is sorted by
/// (code, subject, message); an empty vector means the KB is clean.
pub fn validate_kb(kb: &KnowledgeBase) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |code, subject: &Iri, message: String| out.push(Violation { code, subject: subject.clone(), message });

    for m in kb.metaphors().values() {
        let sides = [
            (ViolationCode::MissingSourceFrame, "source", &m.source_frame),
            (ViolationCode::MissingTargetFrame, "target", &m.target_frame),
        ];
        for (code, side, frame) in sides {
            match frame {
                None => push(code, &m.id, format!("has no {side} frame")),
                Some(f) if kb.frame(f).is_none() => push(code, &m.id, format!("{side} frame <{f}> does not resolve")),
                Some(_) => {}
            }
        }

        let complete = m.role_mappings.iter().map(|rm| (rm.node.as_ref(), Some(&rm.source_role), Some(&rm.target_role)));
        let partial = kb
            .incomplete_mappings()
            .iter()
            .filter(|im| im.metaphor == m.id)
            .map(|im| (Some(&im.node), im.source_role.as_ref(), im.target_role.as_ref()));
        for (node, src, tgt) in complete.chain(partial) {
            for (side, role, frame) in [("source", src, &m.source_frame), ("target", tgt, &m.target_frame)] {
                let Some(role) = role else {
                    push(ViolationCode::UnresolvedRole, &m.id, match node {
                        Some(node) => format!("mapping {node} has no {side} role"),
                        None => format!("a mapping has no {side} role"),
                    });
                    continue;
                };
                if kb.role_owners(role).is_empty() {
                    push(ViolationCode::UnresolvedRole, &m.id, format!("{side} role <{role}> does not resolve"));
                    continue;
                }
                if let Some(frame) = frame.as_ref().and_then(|f| kb.frame(f)) {
                    if !frame.has_role(role) {
                        push(
                            ViolationCode::ForeignRoleInMapping,
                            &m.id,
                            format!("{side} role <{role}> is not a role of <{}>", frame.id),
                        );
                    }
                }
            }
        }
    }

    let inherits: BTreeMap<&Iri, Vec<&Iri>> = kb
        .metaphors()
        .values()
        .map(|m| (&m.id, m.inherits_from.iter().filter(|p| kb.metaphor(p).is_some()).collect()))
        .collect();
    for cycle in cycles(&inherits) {
        push(ViolationCode::InheritanceCycle, cycle[0], format!("inheritance cycle among {}", list(&cycle)));
    }
    let parents: BTreeMap<&Iri, Vec<&Iri>> = kb
        .frames()
        .values()
        .map(|f| (&f.id, f.sub_frame_of.iter().filter(|p| kb.frame(p).is_some()).collect()))
        .collect();
    for cycle in cycles(&parents) {
        push(ViolationCode::SubFrameCycle, cycle[0], format!("sub-frame cycle among {}", list(&cycle)));
    }

    for f in kb.frames().values() {
        for a in f.alignments.iter().filter(|a| !kb.resolves_alignment_target(&a.to)) {
            push(ViolationCode::DanglingAlignment, &f.id, format!("alignment target <{}> does not resolve", a.to));
        }
    }

    let mut owners: BTreeMap<&Iri, BTreeSet<&Iri>> = BTreeMap::new();
    for f in kb.frames().values() {
        for r in &f.roles {
            owners.entry(&r.id).or_default().insert(&f.id);
        }
    }
    for (role, frames) in owners.iter().filter(|(_, fs)| fs.len() > 1) {
        let frames: Vec<&Iri> = frames.iter().copied().collect();
        push(ViolationCode::DuplicateRoleId, role, format!("declared by {}", list(&frames)));
    }

    out.sort();
    out
}

fn list(iris: &[&Iri]) -> String {
    let parts: Vec<String> = iris.iter().map(|i| format!("<{i}>")).collect();
    parts.join(", ")
}

/// Strongly connected components that contain a cycle (size > 1, or a
/// self-loop), each sorted, in order of their smallest member.
pub(crate) fn cycles<'a>(edges: &BTreeMap<&'a Iri, Vec<&'a Iri>>) -> Vec<Vec<&'a Iri>> {
    // Kosaraju: finishing order on the graph, then components on the reverse.
    let mut order = Vec::new();
    let mut seen = BTreeSet::new();
    for &start in edges.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut stack = alloc::vec![(start, 0usize)];
        while let Some((node, i)) = stack.pop() {
            let next = edges.get(node).and_then(|n| n.get(i));
            match next {
                Some(&child) => {
                    stack.push((node, i + 1));
                    if seen.insert(child) {
                        stack.push((child, 0));
                    }
                }
                None => order.push(node),
            }
        }
    }
    let mut reverse: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
    for (&from, tos) in edges {
        for &to in tos {
            reverse.entry(to).or_default().push(from);
        }
    }
    let mut assigned = BTreeSet::new();
    let mut out = Vec::new();
    for &root in order.iter().rev() {
        if !assigned.insert(root) {
            continue;
        }
        let mut component = alloc::vec![root];
        let mut stack = alloc::vec![root];
        while let Some(node) = stack.pop() {
            for &prev in reverse.get(node).into_iter().flatten() {
                if assigned.insert(prev) {
                    component.push(prev);
                    stack.push(prev);
                }
            }
        }
        let self_loop = edges.get(root).is_some_and(|n| n.contains(&root));
        if component.len() > 1 || self_loop {
            component.sort();
            out.push(component);
        }
    }
    out.sort();
    out
}
