//! Hereditary and saturated subfamilies of `B` and the lattice they form.
//!
//! Every subfamily here is a [`SubFamily`] of positions in `B`. The empty
//! subfamily and `{∅}` both stand for the zero ideal; results are always
//! normalized to contain `∅`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::LabelId;
use crate::space::{LabelledSpace, SpaceIndex, SubFamily};

/// Which hereditary condition fails, with positions in `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HereditaryViolation {
    /// `r(set, letter)` is missing.
    Range { set: usize, letter: LabelId },
    /// `a ∪ b` is missing.
    Union { a: usize, b: usize },
    /// `subset ⊆ set` is in `B` but missing.
    Subset { set: usize, subset: usize },
}

impl HereditaryViolation {
    pub fn describe(&self, space: &LabelledSpace) -> String {
        let s = |i: usize| space.format_set_at(i);
        match *self {
            HereditaryViolation::Range { set, letter } => format!(
                "condition (1): r({}, {}) not in family",
                s(set),
                space.graph().label_name(letter)
            ),
            HereditaryViolation::Union { a, b } => {
                format!("condition (2): {} ∪ {} not in family", s(a), s(b))
            }
            HereditaryViolation::Subset { set, subset } => {
                format!("condition (3): {} ⊆ {} not in family", s(subset), s(set))
            }
        }
    }
}

fn check_width(ix: &SpaceIndex, h: &SubFamily) -> Result<()> {
    if h.universe() != ix.len() {
        return Err(Error::WidthMismatch {
            expected: ix.len(),
            found: h.universe(),
        });
    }
    Ok(())
}

pub(crate) fn hereditary_violation_in(ix: &SpaceIndex, h: &SubFamily) -> Option<HereditaryViolation> {
    for x in h.iter() {
        for a in 0..ix.letters() {
            let letter = LabelId(a);
            if !h.contains(ix.step(x, letter)) {
                return Some(HereditaryViolation::Range { set: x, letter });
            }
        }
    }
    let members: Vec<usize> = h.iter().collect();
    for (k, &x) in members.iter().enumerate() {
        for &y in &members[k + 1..] {
            if !h.contains(ix.union(x, y)) {
                return Some(HereditaryViolation::Union { a: x, b: y });
            }
        }
    }
    for &x in &members {
        if let Some(sub) = ix.subsets(x).iter().find(|&j| !h.contains(j)) {
            return Some(HereditaryViolation::Subset { set: x, subset: sub });
        }
    }
    None
}

/// First failed hereditary condition, or `None` if `h` is hereditary.
pub fn hereditary_violation(space: &LabelledSpace, h: &SubFamily) -> Result<Option<HereditaryViolation>> {
    let ix = space.index()?;
    check_width(ix, h)?;
    Ok(hereditary_violation_in(ix, h))
}

pub fn is_hereditary(space: &LabelledSpace, h: &SubFamily) -> Result<bool> {
    Ok(hereditary_violation(space, h)?.is_none())
}

#[inline]
pub(crate) fn feeds_into_in(ix: &SpaceIndex, a: usize, h: &SubFamily) -> bool {
    ix.steps(a).all(|s| h.contains(s))
}

/// `A ▷ H`: every single-letter range of `A` lies in `H`.
pub fn feeds_into(space: &LabelledSpace, a: usize, h: &SubFamily) -> Result<bool> {
    let ix = space.index()?;
    check_width(ix, h)?;
    if a >= ix.len() {
        return Err(Error::IndexOutOfRange {
            index: a,
            len: ix.len(),
        });
    }
    Ok(feeds_into_in(ix, a, h))
}

pub(crate) fn saturation_violation_in(ix: &SpaceIndex, h: &SubFamily) -> Option<usize> {
    (0..ix.len()).find(|&a| !h.contains(a) && feeds_into_in(ix, a, h))
}

/// The first `A ∉ H` (canonical order) with `A ▷ H`, or `None` if `H` is saturated.
pub fn saturation_violation(space: &LabelledSpace, h: &SubFamily) -> Result<Option<usize>> {
    let ix = space.index()?;
    check_width(ix, h)?;
    Ok(saturation_violation_in(ix, h))
}

pub fn is_saturated(space: &LabelledSpace, h: &SubFamily) -> Result<bool> {
    Ok(saturation_violation(space, h)?.is_none())
}

/// A subfamily known to be hereditary and saturated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HSFamily(SubFamily);

impl HSFamily {
    /// Checks `h` (after adding `∅`) and wraps it.
    pub fn new(space: &LabelledSpace, h: &SubFamily) -> Result<Self> {
        let ix = space.index()?;
        check_width(ix, h)?;
        let mut h = h.clone();
        h.insert(ix.empty());
        if let Some(v) = hereditary_violation_in(ix, &h) {
            return Err(Error::NotHereditarySaturated(v.describe(space)));
        }
        if let Some(a) = saturation_violation_in(ix, &h) {
            return Err(Error::NotHereditarySaturated(format!(
                "not saturated: {} feeds into the family",
                space.format_set_at(a)
            )));
        }
        Ok(HSFamily(h))
    }

    pub fn members(&self) -> &SubFamily {
        &self.0
    }

    pub fn into_members(self) -> SubFamily {
        self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &HSFamily) -> bool {
        self.0.is_subset(&other.0)
    }
}

/// Result of [`saturate`]: the closure and the iterates `H_0, H_1, …` up to the fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub family: HSFamily,
    pub iterates: Vec<SubFamily>,
}

fn saturate_in(ix: &SpaceIndex, h: &SubFamily) -> (SubFamily, Vec<SubFamily>) {
    let mut iterates = alloc::vec![h.clone()];
    let mut accumulated = h.clone();
    loop {
        let prev = iterates.last().unwrap();
        let next = SubFamily::from_indices(ix.len(), (0..ix.len()).filter(|&a| feeds_into_in(ix, a, prev)));
        accumulated.union_with(&next);
        if &next == prev {
            break;
        }
        iterates.push(next);
        if iterates.len() > ix.len() + 2 {
            // A hereditary start gives an increasing chain, which cannot get here.
            break;
        }
    }
    (accumulated, iterates)
}

/// Saturation of a hereditary family by the iteration `H_{k+1} = {A : A ▷ H_k}`,
/// accumulating `K = ∪ H_k` until `H_{k+1} = H_k`.
pub fn saturate(space: &LabelledSpace, h: &SubFamily) -> Result<Saturation> {
    let ix = space.index()?;
    check_width(ix, h)?;
    let mut start = h.clone();
    if start.is_empty() {
        start.insert(ix.empty());
    }
    if let Some(v) = hereditary_violation_in(ix, &start) {
        return Err(Error::NotHereditary(v.describe(space)));
    }
    let (k, iterates) = saturate_in(ix, &start);
    Ok(Saturation {
        family: HSFamily(k),
        iterates,
    })
}

/// Smallest hereditary family containing `seed`: closes under single-letter
/// ranges, subsets in `B` and pairwise unions.
pub(crate) fn hereditary_closure_in(ix: &SpaceIndex, seed: &SubFamily) -> SubFamily {
    let mut h = seed.clone();
    let mut members: Vec<usize> = h.iter().collect();
    let mut queue: Vec<usize> = members.clone();
    let add = |i: usize, h: &mut SubFamily, members: &mut Vec<usize>, queue: &mut Vec<usize>| {
        if h.insert(i) {
            members.push(i);
            queue.push(i);
        }
    };
    while let Some(x) = queue.pop() {
        for s in ix.steps(x) {
            add(s, &mut h, &mut members, &mut queue);
        }
        for s in ix.subsets(x).iter() {
            add(s, &mut h, &mut members, &mut queue);
        }
        let mut k = 0;
        while k < members.len() {
            let u = ix.union(x, members[k]);
            add(u, &mut h, &mut members, &mut queue);
            k += 1;
        }
    }
    h
}

pub(crate) fn hs_closure_in(ix: &SpaceIndex, seed: &SubFamily) -> SubFamily {
    let mut current = seed.clone();
    current.insert(ix.empty());
    loop {
        let hereditary = hereditary_closure_in(ix, &current);
        let (saturated, _) = saturate_in(ix, &hereditary);
        if saturated == current {
            return current;
        }
        current = saturated;
    }
}

/// Smallest hereditary and saturated family containing `seed`.
pub fn hs_closure(space: &LabelledSpace, seed: &SubFamily) -> Result<HSFamily> {
    let ix = space.index()?;
    check_width(ix, seed)?;
    Ok(HSFamily(hs_closure_in(ix, seed)))
}

pub fn meet(space: &LabelledSpace, a: &HSFamily, b: &HSFamily) -> Result<HSFamily> {
    space.index()?;
    let m = a.0.intersection(&b.0);
    // Intersections of hereditary saturated families stay hereditary and saturated.
    HSFamily::new(space, &m)
}

pub fn join(space: &LabelledSpace, a: &HSFamily, b: &HSFamily) -> Result<HSFamily> {
    hs_closure(space, &a.0.union(&b.0))
}

/// Every hereditary and saturated subfamily of `B`, in canonical order
/// (by size, so `{∅}` is first and `B` last).
#[derive(Debug, Clone)]
pub struct HSLattice {
    members: Vec<HSFamily>,
    lookup: BTreeMap<SubFamily, usize>,
    principals: Vec<usize>,
}

impl HSLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[HSFamily] {
        &self.members
    }

    pub fn member(&self, id: usize) -> &HSFamily {
        &self.members[id]
    }

    pub fn id_of(&self, h: &SubFamily) -> Option<usize> {
        self.lookup.get(h).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    /// Id of `hs_closure({B_i})`.
    pub fn principal(&self, i: usize) -> usize {
        self.principals[i]
    }

    pub fn is_below(&self, i: usize, j: usize) -> bool {
        self.members[i].is_subset(&self.members[j])
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.lookup[&self.members[i].0.intersection(&self.members[j].0)]
    }

    /// Least member containing both; the lattice is complete, so this is the
    /// intersection of all common upper bounds.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let both = self.members[i].0.union(&self.members[j].0);
        let mut bound = self.members[self.top()].0.clone();
        for m in &self.members {
            if both.is_subset(&m.0) {
                bound.intersect_with(&m.0);
            }
        }
        self.lookup[&bound]
    }

    pub fn meet_table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.meet(i, j)).collect())
            .collect()
    }

    pub fn join_table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.join(i, j)).collect())
            .collect()
    }

    /// Covering pairs `(lower, upper)` of the inclusion order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.is_below(i, j) {
                    continue;
                }
                let covered = (0..n).all(|k| {
                    k == i || k == j || !(self.is_below(i, k) && self.is_below(k, j))
                });
                if covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// Builds the full lattice: principal closures of every member of `B`,
/// closed under joins and meets, plus the bottom `{∅}`.
pub fn enumerate_hs(space: &LabelledSpace) -> Result<HSLattice> {
    let ix = space.index()?;
    let n = ix.len();
    let principal_sets: Vec<SubFamily> = (0..n)
        .map(|i| hs_closure_in(ix, &SubFamily::from_indices(n, [i])))
        .collect();
    let distinct_principals: Vec<SubFamily> = principal_sets
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut seen: BTreeSet<SubFamily> = BTreeSet::new();
    let mut work: Vec<SubFamily> = Vec::new();
    for h in core::iter::once(ix.bottom()).chain(distinct_principals.iter().cloned()) {
        if seen.insert(h.clone()) {
            work.push(h);
        }
    }
    // Every hereditary saturated H is the join of the principal closures of
    // its members, so joining with principals reaches all of them.
    let mut next = 0;
    while next < work.len() {
        let x = work[next].clone();
        for p in &distinct_principals {
            if p.is_subset(&x) {
                continue;
            }
            let j = hs_closure_in(ix, &x.union(p));
            if seen.insert(j.clone()) {
                work.push(j);
            }
        }
        next += 1;
    }
    // Meet closure; already satisfied when the join closure is complete.
    let mut i = 0;
    while i < work.len() {
        for j in 0..i {
            let m = work[i].intersection(&work[j]);
            if seen.insert(m.clone()) {
                work.push(m);
            }
        }
        i += 1;
    }

    let members: Vec<HSFamily> = seen.into_iter().map(HSFamily).collect();
    let lookup: BTreeMap<SubFamily, usize> = members
        .iter()
        .enumerate()
        .map(|(i, h)| (h.0.clone(), i))
        .collect();
    let principals = principal_sets.iter().map(|p| lookup[p]).collect();
    Ok(HSLattice {
        members,
        lookup,
        principals,
    })
}

fn union_of(ix: &SpaceIndex, h: &SubFamily) -> usize {
    h.iter().fold(ix.empty(), |acc, i| ix.union(acc, i))
}

/// `A ∼ B` iff `A ∪ W = B ∪ W` for some `W ∈ H`; decided with `W = ∪H`.
pub fn sim_equiv(space: &LabelledSpace, h: &HSFamily, a: usize, b: usize) -> Result<bool> {
    let ix = space.index()?;
    for i in [a, b] {
        if i >= ix.len() {
            return Err(Error::IndexOutOfRange { index: i, len: ix.len() });
        }
    }
    let w = union_of(ix, &h.0);
    Ok(ix.union(a, w) == ix.union(b, w))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientClass {
    /// Position of `A ∪ U_H`.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// The partition of `B` by `∼_H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    /// Position of `U_H = ∪H`.
    pub union: usize,
    /// Ordered by least member.
    pub classes: Vec<QuotientClass>,
    /// Relative ranges respect the classes.
    pub is_congruence: bool,
    /// Relative ranges of representatives distribute over intersections, modulo `∼`.
    pub is_weakly_left_resolving: bool,
}

impl QuotientSpace {
    pub fn class_of(&self, i: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&i))
    }
}

pub fn quotient(space: &LabelledSpace, h: &HSFamily) -> Result<QuotientSpace> {
    let ix = space.index()?;
    let w = union_of(ix, &h.0);
    let rep = |i: usize| ix.union(i, w);

    let mut by_rep: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..ix.len() {
        by_rep.entry(rep(i)).or_default().push(i);
    }
    let mut classes: Vec<QuotientClass> = by_rep
        .into_iter()
        .map(|(representative, members)| QuotientClass {
            representative,
            members,
        })
        .collect();
    classes.sort_by_key(|c| c.members[0]);

    let is_congruence = classes.iter().all(|c| {
        (0..ix.letters()).all(|a| {
            let target = rep(ix.step(c.representative, LabelId(a)));
            c.members.iter().all(|&m| rep(ix.step(m, LabelId(a))) == target)
        })
    });

    let reps: Vec<usize> = classes.iter().map(|c| c.representative).collect();
    let intersect = |p: usize, q: usize| ix.position(&ix.set(p).intersection(ix.set(q)));
    let is_weakly_left_resolving = reps.iter().all(|&p| {
        reps.iter().all(|&q| {
            let Some(pq) = intersect(p, q) else {
                return false;
            };
            (0..ix.letters()).all(|a| {
                let l = LabelId(a);
                let lhs = rep(ix.step(pq, l));
                match intersect(ix.step(p, l), ix.step(q, l)) {
                    Some(rhs) => lhs == rep(rhs),
                    None => false,
                }
            })
        })
    });

    Ok(QuotientSpace {
        union: w,
        classes,
        is_congruence,
        is_weakly_left_resolving,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::VertexSet;

    struct Ctx {
        space: LabelledSpace,
    }

    impl Ctx {
        fn g2() -> Self {
            Ctx {
                space: LabelledSpace::generated(fixtures::g2()).unwrap(),
            }
        }

        fn set(&self, names: &[&str]) -> VertexSet {
            self.space.graph().vertex_set(names).unwrap()
        }

        fn pos(&self, names: &[&str]) -> usize {
            self.space.position(&self.set(names)).unwrap()
        }

        fn fam(&self, sets: &[&[&str]]) -> SubFamily {
            let sets: Vec<VertexSet> = sets.iter().map(|n| self.set(n)).collect();
            self.space.select(sets.iter()).unwrap()
        }

        fn h1(&self) -> SubFamily {
            self.fam(&[&[], &["v"], &["w"], &["v", "w"]])
        }
    }

    #[test]
    fn hereditary_examples() {
        let c = Ctx::g2();
        assert!(is_hereditary(&c.space, &c.fam(&[&[], &["w"]])).unwrap());
        let v = hereditary_violation(&c.space, &c.fam(&[&[], &["v"]])).unwrap();
        assert_eq!(
            v,
            Some(HereditaryViolation::Range {
                set: c.pos(&["v"]),
                letter: c.space.graph().label("c").unwrap()
            })
        );
        assert!(is_hereditary(&c.space, &c.fam(&[&[]])).unwrap());
    }

    #[test]
    fn saturated_examples() {
        let c = Ctx::g2();
        assert_eq!(
            saturation_violation(&c.space, &c.fam(&[&[], &["w"]])).unwrap(),
            Some(c.pos(&["v"]))
        );
        assert!(is_saturated(&c.space, &c.h1()).unwrap());
        assert!(is_saturated(&c.space, &SubFamily::all(8)).unwrap());
    }

    #[test]
    fn feeds_into_examples() {
        let c = Ctx::g2();
        let hw = c.fam(&[&[], &["w"]]);
        assert!(feeds_into(&c.space, c.pos(&["v"]), &hw).unwrap());
        assert!(!feeds_into(&c.space, c.pos(&["u"]), &hw).unwrap());
        assert!(feeds_into(&c.space, c.pos(&[]), &c.fam(&[&[]])).unwrap());
    }

    #[test]
    fn saturate_examples() {
        let c = Ctx::g2();
        let s = saturate(&c.space, &c.fam(&[&[], &["w"]])).unwrap();
        assert_eq!(s.family.members(), &c.h1());
        assert_eq!(s.iterates.len(), 2);
        assert_eq!(s.iterates[1], c.h1());

        let s = saturate(&c.space, &c.fam(&[&[]])).unwrap();
        assert_eq!(s.family.members(), &c.fam(&[&[]]));

        let s = saturate(&c.space, &SubFamily::all(8)).unwrap();
        assert_eq!(s.family.len(), 8);

        let err = saturate(&c.space, &c.fam(&[&[], &["v"]])).unwrap_err();
        assert!(matches!(err, Error::NotHereditary(_)));
    }

    #[test]
    fn closure_examples() {
        let c = Ctx::g2();
        assert_eq!(hs_closure(&c.space, &c.fam(&[&["v"]])).unwrap().members(), &c.h1());
        assert_eq!(hs_closure(&c.space, &c.fam(&[&["u"]])).unwrap().len(), 8);
        assert_eq!(
            hs_closure(&c.space, &SubFamily::none(8)).unwrap().members(),
            &c.fam(&[&[]])
        );
    }

    #[test]
    fn g2_lattice() {
        let c = Ctx::g2();
        let lattice = enumerate_hs(&c.space).unwrap();
        assert_eq!(lattice.len(), 3);
        assert_eq!(lattice.member(0).members(), &c.fam(&[&[]]));
        assert_eq!(lattice.member(1).members(), &c.h1());
        assert_eq!(lattice.member(2).len(), 8);
        assert_eq!(lattice.hasse_edges(), [(0, 1), (1, 2)]);
        assert_eq!(lattice.meet(1, 2), 1);
        assert_eq!(lattice.join(0, 1), 1);
        assert_eq!(lattice.principal(c.pos(&["u"])), 2);
        assert_eq!(lattice.principal(c.pos(&["w"])), 1);
        assert_eq!(lattice.principal(c.pos(&[])), 0);
    }

    #[test]
    fn g3_lattice() {
        let space = LabelledSpace::generated(fixtures::g3()).unwrap();
        let lattice = enumerate_hs(&space).unwrap();
        assert_eq!(lattice.len(), 2);
    }

    #[test]
    fn meet_and_join() {
        let c = Ctx::g2();
        let h1 = HSFamily::new(&c.space, &c.h1()).unwrap();
        let top = HSFamily::new(&c.space, &SubFamily::all(8)).unwrap();
        let bottom = HSFamily::new(&c.space, &c.fam(&[&[]])).unwrap();
        assert_eq!(meet(&c.space, &h1, &top).unwrap(), h1);
        assert_eq!(meet(&c.space, &bottom, &h1).unwrap(), bottom);
        let pu = hs_closure(&c.space, &c.fam(&[&["u"]])).unwrap();
        assert_eq!(join(&c.space, &h1, &pu).unwrap(), top);
        assert!(HSFamily::new(&c.space, &c.fam(&[&[], &["w"]])).is_err());
    }

    #[test]
    fn equivalence_and_quotient() {
        let c = Ctx::g2();
        let h1 = HSFamily::new(&c.space, &c.h1()).unwrap();
        assert!(sim_equiv(&c.space, &h1, c.pos(&["u"]), c.pos(&["u", "v"])).unwrap());
        assert!(!sim_equiv(&c.space, &h1, c.pos(&["u"]), c.pos(&["v"])).unwrap());

        let q = quotient(&c.space, &h1).unwrap();
        assert_eq!(q.union, c.pos(&["v", "w"]));
        assert_eq!(q.classes.len(), 2);
        let mut first = q.classes[0].members.clone();
        first.sort();
        let mut expected = alloc::vec![c.pos(&[]), c.pos(&["v"]), c.pos(&["w"]), c.pos(&["v", "w"])];
        expected.sort();
        assert_eq!(first, expected);
        assert_eq!(q.classes[1].representative, c.pos(&["u", "v", "w"]));
        assert!(q.is_congruence && q.is_weakly_left_resolving);

        let bottom = HSFamily::new(&c.space, &c.fam(&[&[]])).unwrap();
        let q = quotient(&c.space, &bottom).unwrap();
        assert_eq!(q.classes.len(), 8);
        assert!(sim_equiv(&c.space, &bottom, 3, 3).unwrap());
        assert!(!sim_equiv(&c.space, &bottom, 3, 4).unwrap());

        let top = HSFamily::new(&c.space, &SubFamily::all(8)).unwrap();
        assert_eq!(quotient(&c.space, &top).unwrap().classes.len(), 1);
    }
}
