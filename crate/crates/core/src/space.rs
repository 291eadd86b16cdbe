//! Labelled spaces `(E, L, B)` and the index tables shared by the lattice,
//! tail and topology computations.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::family::{generate_family, verify_space, SetFamily, SpaceReport, DEFAULT_MAX_FAMILY_SIZE};
use crate::graph::{LabelId, LabelledGraph, VertexSet};
use crate::tails::ReachabilityIndex;

/// A subfamily of `B`, one bit per member of `B` in canonical order.
///
/// Ordered by size, then lexicographically by member positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubFamily(BitSet);

impl SubFamily {
    pub fn none(len: usize) -> Self {
        SubFamily(BitSet::new(len))
    }

    pub fn all(len: usize) -> Self {
        SubFamily(BitSet::full(len))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        SubFamily(BitSet::from_indices(len, indices))
    }

    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn universe(&self) -> usize {
        self.0.universe()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        self.0.insert(i)
    }

    pub fn remove(&mut self, i: usize) -> bool {
        self.0.remove(i)
    }

    pub fn len(&self) -> usize {
        self.0.count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.0.intersects(&other.0)
    }

    pub fn union(&self, other: &Self) -> Self {
        SubFamily(self.0.union(&other.0))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        SubFamily(self.0.intersection(&other.0))
    }

    pub fn difference(&self, other: &Self) -> Self {
        SubFamily(self.0.difference(&other.0))
    }

    pub fn complement(&self) -> Self {
        SubFamily(self.0.complement())
    }

    pub fn union_with(&mut self, other: &Self) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.0.intersect_with(&other.0);
    }
}

impl Ord for SubFamily {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp_lex(&other.0))
    }
}

impl PartialOrd for SubFamily {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Lookup tables for a verified space: range steps, subset lists, unions and
/// the "sees" relation, all in terms of positions in `B`.
#[derive(Debug, Clone)]
pub struct SpaceIndex {
    len: usize,
    letters: usize,
    empty: usize,
    lookup: BTreeMap<VertexSet, usize>,
    sets: Vec<VertexSet>,
    // step[i * letters + a] = position of r(B_i, a)
    step: Vec<u32>,
    // subsets[i] = { j : B_j ⊆ B_i }
    subsets: Vec<SubFamily>,
    // row-major union table, only for small families
    unions: Option<Vec<u32>>,
    reach: ReachabilityIndex,
}

const UNION_TABLE_LIMIT: usize = 1024;

impl SpaceIndex {
    fn build(graph: &LabelledGraph, family: &SetFamily) -> Self {
        let sets = family.sets().to_vec();
        let len = sets.len();
        let letters = graph.labels().len();
        let lookup: BTreeMap<VertexSet, usize> =
            sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let position = |s: &VertexSet| lookup[s] as u32;

        let mut step = Vec::with_capacity(len * letters);
        for s in &sets {
            for a in graph.alphabet() {
                step.push(position(&graph.step(s, a)));
            }
        }
        let subsets = sets
            .iter()
            .map(|outer| {
                SubFamily::from_indices(
                    len,
                    sets.iter()
                        .enumerate()
                        .filter(|(_, inner)| inner.is_subset(outer))
                        .map(|(j, _)| j),
                )
            })
            .collect();
        let unions = (len <= UNION_TABLE_LIMIT).then(|| {
            let mut table = Vec::with_capacity(len * len);
            for a in &sets {
                for b in &sets {
                    table.push(position(&a.union(b)));
                }
            }
            table
        });
        let empty = lookup[&graph.empty_set()];

        let mut index = Self {
            len,
            letters,
            empty,
            lookup,
            sets,
            step,
            subsets,
            unions,
            reach: ReachabilityIndex::default(),
        };
        index.reach = ReachabilityIndex::build(&index);
        index
    }

    /// Number of members of `B`.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn letters(&self) -> usize {
        self.letters
    }

    /// Position of `∅` in `B`.
    #[inline]
    pub fn empty(&self) -> usize {
        self.empty
    }

    #[inline]
    pub fn set(&self, i: usize) -> &VertexSet {
        &self.sets[i]
    }

    pub fn position(&self, set: &VertexSet) -> Option<usize> {
        self.lookup.get(set).copied()
    }

    /// Position of `r(B_i, a)`.
    #[inline]
    pub fn step(&self, i: usize, a: LabelId) -> usize {
        self.step[i * self.letters + a.0] as usize
    }

    #[inline]
    pub fn steps(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.step[i * self.letters..(i + 1) * self.letters]
            .iter()
            .map(|&s| s as usize)
    }

    /// Members of `B` contained in `B_i`.
    #[inline]
    pub fn subsets(&self, i: usize) -> &SubFamily {
        &self.subsets[i]
    }

    /// Position of `B_i ∪ B_j`.
    #[inline]
    pub fn union(&self, i: usize, j: usize) -> usize {
        match &self.unions {
            Some(table) => table[i * self.len + j] as usize,
            None => self.lookup[&self.sets[i].union(&self.sets[j])],
        }
    }

    pub fn reachability(&self) -> &ReachabilityIndex {
        &self.reach
    }

    pub fn none(&self) -> SubFamily {
        SubFamily::none(self.len)
    }

    pub fn top(&self) -> SubFamily {
        SubFamily::all(self.len)
    }

    /// `{∅}`, the bottom of the lattice.
    pub fn bottom(&self) -> SubFamily {
        SubFamily::from_indices(self.len, [self.empty])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceOptions {
    pub allow_unverified: bool,
    pub max_family_size: usize,
}

impl Default for SpaceOptions {
    fn default() -> Self {
        Self {
            allow_unverified: false,
            max_family_size: DEFAULT_MAX_FAMILY_SIZE,
        }
    }
}

/// A labelled space `(E, L, B)` together with its verification report.
///
/// Only spaces whose report passes every assumption carry a [`SpaceIndex`];
/// lattice, tail and topology operations refuse the others.
#[derive(Debug, Clone)]
pub struct LabelledSpace {
    graph: LabelledGraph,
    family: SetFamily,
    report: SpaceReport,
    index: Option<SpaceIndex>,
}

impl LabelledSpace {
    /// Builds and verifies a space. When `family` is `None` the smallest
    /// normal accommodating family is generated.
    pub fn new(
        graph: LabelledGraph,
        family: Option<SetFamily>,
        options: SpaceOptions,
    ) -> Result<Self> {
        let family = match family {
            Some(f) => {
                for s in f.iter() {
                    if s.width() != graph.vertex_count() {
                        return Err(Error::WidthMismatch {
                            expected: graph.vertex_count(),
                            found: s.width(),
                        });
                    }
                }
                f
            }
            None => generate_family(&graph, options.max_family_size)?,
        };
        let report = verify_space(&graph, &family);
        if !report.all_hold() && !options.allow_unverified {
            return Err(Error::AssumptionViolated(report.describe_failures(&graph)));
        }
        let index = report.all_hold().then(|| SpaceIndex::build(&graph, &family));
        Ok(Self {
            graph,
            family,
            report,
            index,
        })
    }

    /// Shorthand for [`LabelledSpace::new`] with a generated family and default options.
    pub fn generated(graph: LabelledGraph) -> Result<Self> {
        Self::new(graph, None, SpaceOptions::default())
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn report(&self) -> &SpaceReport {
        &self.report
    }

    pub fn is_verified(&self) -> bool {
        self.index.is_some()
    }

    /// The index tables; fails for spaces built with `allow_unverified`
    /// whose report has a failed flag.
    pub fn index(&self) -> Result<&SpaceIndex> {
        self.index.as_ref().ok_or(Error::SpaceUnverified)
    }

    /// Position of `set` in `B`.
    pub fn position(&self, set: &VertexSet) -> Result<usize> {
        self.family
            .position(set)
            .ok_or_else(|| Error::NotInFamily(self.graph.format_set(set)))
    }

    /// Converts a family of vertex sets into a subfamily of `B`.
    pub fn select<'a, I>(&self, sets: I) -> Result<SubFamily>
    where
        I: IntoIterator<Item = &'a VertexSet>,
    {
        let mut out = SubFamily::none(self.family.len());
        for s in sets {
            out.insert(self.position(s)?);
        }
        Ok(out)
    }

    pub fn sets_of(&self, sub: &SubFamily) -> SetFamily {
        SetFamily::from_sets(sub.iter().map(|i| self.family.sets()[i].clone()))
    }

    pub fn set(&self, i: usize) -> &VertexSet {
        &self.family.sets()[i]
    }

    pub fn format_set_at(&self, i: usize) -> String {
        self.graph.format_set(self.set(i))
    }

    /// Renders a subfamily as `[{},{u}]`.
    pub fn format_subfamily(&self, sub: &SubFamily) -> String {
        let parts: Vec<String> = sub.iter().map(|i| self.format_set_at(i)).collect();
        alloc::format!("[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::fixtures;

    #[test]
    fn make_space_gating() {
        let space = LabelledSpace::generated(fixtures::g2()).unwrap();
        assert!(space.is_verified());
        assert!(space.report().all_hold());

        let err = LabelledSpace::generated(fixtures::g1()).unwrap_err();
        assert!(err
            .to_string()
            .starts_with("assumption violated: weakly left-resolving"));

        let options = SpaceOptions {
            allow_unverified: true,
            ..SpaceOptions::default()
        };
        let space = LabelledSpace::new(fixtures::g1(), None, options).unwrap();
        assert!(!space.is_verified());
        assert!(!space.report().is_weakly_left_resolving);
        assert_eq!(space.index().unwrap_err(), Error::SpaceUnverified);
    }

    #[test]
    fn trivial_family_is_rejected() {
        let g = fixtures::g3();
        let only_empty = SetFamily::from_sets([g.empty_set()]);
        let err = LabelledSpace::new(g, Some(only_empty), SpaceOptions::default()).unwrap_err();
        assert!(err.to_string().contains("nontrivial family"));
    }

    #[test]
    fn index_tables() {
        let space = LabelledSpace::generated(fixtures::g2()).unwrap();
        let g = space.graph();
        let ix = space.index().unwrap();
        let pos = |n: &[&str]| space.position(&g.vertex_set(n).unwrap()).unwrap();
        assert_eq!(ix.empty(), 0);
        assert_eq!(ix.step(pos(&["u"]), g.label("b").unwrap()), pos(&["v"]));
        assert_eq!(ix.union(pos(&["u"]), pos(&["w"])), pos(&["u", "w"]));
        assert_eq!(ix.subsets(pos(&["u", "v"])).len(), 4);
        assert!(space.select([&g.vertex_set(&["u"]).unwrap()]).is_ok());
    }

    #[test]
    fn subfamily_order_is_size_then_lex() {
        let a = SubFamily::from_indices(4, [3]);
        let b = SubFamily::from_indices(4, [0, 1]);
        let c = SubFamily::from_indices(4, [0, 2]);
        assert!(a < b && b < c);
    }
}
