//! The accommodating set family and the checks that certify a labelled space.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{LabelId, LabelledGraph, VertexId, VertexSet};

pub const DEFAULT_MAX_FAMILY_SIZE: usize = 4096;

/// A duplicate-free collection of vertex sets in canonical (lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    sets: Vec<VertexSet>,
}

impl SetFamily {
    /// Builds a family, rejecting duplicates and mixed widths.
    pub fn new(sets: Vec<VertexSet>) -> Result<Self> {
        let mut sets = sets;
        if let Some(first) = sets.first() {
            let width = first.width();
            if let Some(bad) = sets.iter().find(|s| s.width() != width) {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: bad.width(),
                });
            }
        }
        sets.sort();
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet(format!("{:?}", w[0])));
        }
        Ok(Self { sets })
    }

    /// Builds a family, silently merging duplicates.
    pub fn from_sets<I: IntoIterator<Item = VertexSet>>(sets: I) -> Self {
        let sets: BTreeSet<VertexSet> = sets.into_iter().collect();
        Self {
            sets: sets.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Self { sets: Vec::new() }
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &VertexSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }

    pub fn position(&self, set: &VertexSet) -> Option<usize> {
        self.sets.binary_search(set).ok()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, VertexSet> {
        self.sets.iter()
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a VertexSet;
    type IntoIter = core::slice::Iter<'a, VertexSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

/// The smallest normal accommodating family of `graph`.
///
/// Starts from `∅` and the single-letter ranges `r(a)` and closes under
/// single-letter relative ranges, pairwise union, intersection and relative
/// complement. Closure under single letters gives closure under all words
/// because `r(A, aβ) = r(r(A, a), β)`.
pub fn generate_family(graph: &LabelledGraph, max_family_size: usize) -> Result<SetFamily> {
    let mut members: Vec<VertexSet> = Vec::new();
    let mut seen: BTreeSet<VertexSet> = BTreeSet::new();

    let mut push = |set: VertexSet, members: &mut Vec<VertexSet>| -> Result<()> {
        if seen.insert(set.clone()) {
            if seen.len() > max_family_size {
                return Err(Error::FamilyTooLarge {
                    cap: max_family_size,
                });
            }
            members.push(set);
        }
        Ok(())
    };

    push(graph.empty_set(), &mut members)?;
    let all = graph.all_vertices();
    for a in graph.alphabet() {
        push(graph.step(&all, a), &mut members)?;
    }

    let mut next = 0;
    while next < members.len() {
        let x = members[next].clone();
        for a in graph.alphabet() {
            push(graph.step(&x, a), &mut members)?;
        }
        for j in 0..=next {
            let y = members[j].clone();
            push(x.union(&y), &mut members)?;
            push(x.intersection(&y), &mut members)?;
            push(x.difference(&y), &mut members)?;
            push(y.difference(&x), &mut members)?;
        }
        next += 1;
    }
    Ok(SetFamily::from_sets(members))
}

/// A failed closure rule, with the sets that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureViolation {
    /// `r(a)` is not in the family.
    MissingWordRange { letter: LabelId },
    /// `r(set, letter)` is not in the family.
    Range { set: VertexSet, letter: LabelId },
    Union { a: VertexSet, b: VertexSet },
    Intersection { a: VertexSet, b: VertexSet },
    Complement { a: VertexSet, b: VertexSet },
}

/// Sets `A`, `B` and a letter with `r(A ∩ B, a) ≠ r(A, a) ∩ r(B, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftResolvingCounterexample {
    pub a: VertexSet,
    pub b: VertexSet,
    pub letter: LabelId,
}

/// Outcome of [`verify_space`]. Each `Option` witness is present exactly
/// when the matching flag is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceReport {
    pub is_accommodating: bool,
    pub accommodating_violation: Option<ClosureViolation>,
    pub is_non_degenerate: bool,
    pub non_degenerate_violation: Option<ClosureViolation>,
    pub is_weakly_left_resolving: bool,
    pub weakly_left_resolving_counterexample: Option<LeftResolvingCounterexample>,
    pub is_set_finite: bool,
    pub is_receiver_set_finite: bool,
    pub has_no_sinks: bool,
    pub sinks: Vec<VertexId>,
    /// The family has a nonempty member.
    pub is_nontrivial: bool,
}

impl SpaceReport {
    pub fn all_hold(&self) -> bool {
        self.failed_flags().is_empty()
    }

    pub fn failed_flags(&self) -> Vec<&'static str> {
        let mut failed = Vec::new();
        if !self.is_nontrivial {
            failed.push("nontrivial family");
        }
        if !self.is_accommodating {
            failed.push("accommodating");
        }
        if !self.is_non_degenerate {
            failed.push("non-degenerate");
        }
        if !self.is_weakly_left_resolving {
            failed.push("weakly left-resolving");
        }
        if !self.is_set_finite {
            failed.push("set-finite");
        }
        if !self.is_receiver_set_finite {
            failed.push("receiver set-finite");
        }
        if !self.has_no_sinks {
            failed.push("no sinks");
        }
        failed
    }

    /// Human-readable list of failed flags with their witnesses.
    pub fn describe_failures(&self, graph: &LabelledGraph) -> String {
        let mut parts: Vec<String> = Vec::new();
        let set = |s: &VertexSet| graph.format_set(s);
        let closure = |v: &ClosureViolation| match v {
            ClosureViolation::MissingWordRange { letter } => {
                format!("r({}) missing", graph.label_name(*letter))
            }
            ClosureViolation::Range { set: s, letter } => {
                format!("r({}, {}) missing", set(s), graph.label_name(*letter))
            }
            ClosureViolation::Union { a, b } => format!("{} ∪ {} missing", set(a), set(b)),
            ClosureViolation::Intersection { a, b } => {
                format!("{} ∩ {} missing", set(a), set(b))
            }
            ClosureViolation::Complement { a, b } => format!("{} ∖ {} missing", set(a), set(b)),
        };
        if !self.is_nontrivial {
            parts.push("nontrivial family".into());
        }
        if let Some(v) = &self.accommodating_violation {
            parts.push(format!("accommodating ({})", closure(v)));
        }
        if let Some(v) = &self.non_degenerate_violation {
            parts.push(format!("non-degenerate ({})", closure(v)));
        }
        if let Some(c) = &self.weakly_left_resolving_counterexample {
            parts.push(format!(
                "weakly left-resolving (A={}, B={}, letter {})",
                set(&c.a),
                set(&c.b),
                graph.label_name(c.letter)
            ));
        }
        if !self.has_no_sinks {
            let names: Vec<&str> = self.sinks.iter().map(|&v| graph.vertex_name(v)).collect();
            parts.push(format!("no sinks (sinks: {})", names.join(",")));
        }
        parts.join("; ")
    }
}

/// Checks every standing assumption on `(graph, family)`.
///
/// Closure and left-resolving checks use single letters only; with range
/// closure in place they extend to all words by induction on word length.
pub fn verify_space(graph: &LabelledGraph, family: &SetFamily) -> SpaceReport {
    let sets = family.sets();
    let all = graph.all_vertices();

    let accommodating_violation = (|| {
        for letter in graph.alphabet() {
            if !family.contains(&graph.step(&all, letter)) {
                return Some(ClosureViolation::MissingWordRange { letter });
            }
        }
        for s in sets {
            for letter in graph.alphabet() {
                if !family.contains(&graph.step(s, letter)) {
                    return Some(ClosureViolation::Range {
                        set: s.clone(),
                        letter,
                    });
                }
            }
        }
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                if !family.contains(&a.union(b)) {
                    return Some(ClosureViolation::Union {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
                if !family.contains(&a.intersection(b)) {
                    return Some(ClosureViolation::Intersection {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        None
    })();

    let non_degenerate_violation = (|| {
        for a in sets {
            for b in sets {
                if !family.contains(&a.difference(b)) {
                    return Some(ClosureViolation::Complement {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        None
    })();

    let wlr = (|| {
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                let meet = a.intersection(b);
                for letter in graph.alphabet() {
                    let lhs = graph.step(&meet, letter);
                    let rhs = graph.step(a, letter).intersection(&graph.step(b, letter));
                    if lhs != rhs {
                        return Some(LeftResolvingCounterexample {
                            a: a.clone(),
                            b: b.clone(),
                            letter,
                        });
                    }
                }
            }
        }
        None
    })();

    let validation = graph.validate();
    SpaceReport {
        is_accommodating: accommodating_violation.is_none(),
        accommodating_violation,
        is_non_degenerate: non_degenerate_violation.is_none(),
        non_degenerate_violation,
        is_weakly_left_resolving: wlr.is_none(),
        weakly_left_resolving_counterexample: wlr,
        is_set_finite: true,
        is_receiver_set_finite: true,
        has_no_sinks: validation.has_no_sinks,
        sinks: validation.sinks,
        is_nontrivial: sets.iter().any(|s| !s.is_empty()),
    }
}
