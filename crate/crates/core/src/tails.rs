//! The "sees" relation, maximal tails and their correspondence with prime
//! hereditary saturated families.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::UltimatelyPeriodicWord;
use crate::lattice::{hs_closure_in, HSFamily, HSLattice};
use crate::space::{LabelledSpace, SpaceIndex, SubFamily};

/// For each `A ∈ B`, the members of `B` reachable from `A` by nonempty
/// words and the members `A` sees.
#[derive(Debug, Clone, Default)]
pub struct ReachabilityIndex {
    reach: Vec<SubFamily>,
    sees: Vec<SubFamily>,
}

impl ReachabilityIndex {
    /// Breadth-first search of the single-letter step graph on `B`.
    pub(crate) fn build(ix: &SpaceIndex) -> Self {
        let n = ix.len();
        let mut reach = Vec::with_capacity(n);
        let mut sees = Vec::with_capacity(n);
        for start in 0..n {
            let mut seen = SubFamily::none(n);
            let mut queue: Vec<usize> = Vec::new();
            for s in ix.steps(start) {
                if seen.insert(s) {
                    queue.push(s);
                }
            }
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for s in ix.steps(x) {
                    if seen.insert(s) {
                        queue.push(s);
                    }
                }
            }
            let mut seen_below = SubFamily::none(n);
            for x in seen.iter() {
                seen_below.union_with(ix.subsets(x));
            }
            reach.push(seen);
            sees.push(seen_below);
        }
        Self { reach, sees }
    }

    /// `{r(A, α) : α nonempty}` for `A = B_i`.
    pub fn reachable(&self, i: usize) -> &SubFamily {
        &self.reach[i]
    }

    /// `{X ∈ B : B_i ≥ X}`.
    pub fn seen_by(&self, i: usize) -> &SubFamily {
        &self.sees[i]
    }

    #[inline]
    pub fn sees(&self, a: usize, b: usize) -> bool {
        self.sees[a].contains(b)
    }
}

fn check_index(ix: &SpaceIndex, i: usize) -> Result<()> {
    if i >= ix.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: ix.len(),
        });
    }
    Ok(())
}

/// `A ≥ B`: some nonempty word `α` has `B ⊆ r(A, α)`.
pub fn sees(space: &LabelledSpace, a: usize, b: usize) -> Result<bool> {
    let ix = space.index()?;
    check_index(ix, a)?;
    check_index(ix, b)?;
    Ok(ix.reachability().sees(a, b))
}

pub(crate) fn family_sees_in(ix: &SpaceIndex, s: &SubFamily, t: &SubFamily) -> bool {
    let r = ix.reachability();
    s.iter().all(|a| r.seen_by(a).intersects(t))
}

/// `S ≫ T`: every member of `S` sees some member of `T`.
pub fn family_sees(space: &LabelledSpace, s: &SubFamily, t: &SubFamily) -> Result<bool> {
    let ix = space.index()?;
    Ok(family_sees_in(ix, s, t))
}

/// Per-axiom outcome of a maximal-tail check; witnesses are positions in `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailReport {
    pub is_nonempty: bool,
    pub excludes_empty_set: bool,
    /// `(A, B)` in `D` with no common `C ∈ D` below both.
    pub axiom_a: Option<(usize, usize)>,
    /// `A ∈ D` with no single-letter range in `D`.
    pub axiom_b: Option<usize>,
    /// `(X, Y)` with `X ∉ D`, `Y ∈ D` and `X ≥ Y`.
    pub axiom_c: Option<(usize, usize)>,
}

impl TailReport {
    pub fn passes(&self) -> bool {
        self.is_nonempty
            && self.excludes_empty_set
            && self.axiom_a.is_none()
            && self.axiom_b.is_none()
            && self.axiom_c.is_none()
    }

    /// Names of the failed conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.is_nonempty {
            out.push("nonempty");
        }
        if !self.excludes_empty_set {
            out.push("excludes empty set");
        }
        if self.axiom_a.is_some() {
            out.push("axiom (a)");
        }
        if self.axiom_b.is_some() {
            out.push("axiom (b)");
        }
        if self.axiom_c.is_some() {
            out.push("axiom (c)");
        }
        out
    }
}

/// A candidate maximal tail together with its axiom report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tail {
    pub sets: SubFamily,
    pub report: TailReport,
}

impl Tail {
    pub fn is_verified(&self) -> bool {
        self.report.passes()
    }
}

pub(crate) fn tail_report_in(ix: &SpaceIndex, d: &SubFamily) -> TailReport {
    let r = ix.reachability();
    let members: Vec<usize> = d.iter().collect();

    let mut axiom_a = None;
    'outer: for (k, &a) in members.iter().enumerate() {
        let below_a = r.seen_by(a).intersection(d);
        for &b in &members[k..] {
            if !below_a.intersects(r.seen_by(b)) {
                axiom_a = Some((a, b));
                break 'outer;
            }
        }
    }
    let axiom_b = members
        .iter()
        .copied()
        .find(|&a| !ix.steps(a).any(|s| d.contains(s)));
    let axiom_c = (0..ix.len())
        .filter(|x| !d.contains(*x))
        .find_map(|x| r.seen_by(x).intersection(d).iter().next().map(|y| (x, y)));

    TailReport {
        is_nonempty: !members.is_empty(),
        excludes_empty_set: !d.contains(ix.empty()),
        axiom_a,
        axiom_b,
        axiom_c,
    }
}

/// Checks the maximal-tail axioms (a), (b), (c) on `d`, and that `d` is
/// nonempty and omits `∅`.
pub fn is_maximal_tail(space: &LabelledSpace, d: &SubFamily) -> Result<Tail> {
    let ix = space.index()?;
    if d.universe() != ix.len() {
        return Err(Error::WidthMismatch {
            expected: ix.len(),
            found: d.universe(),
        });
    }
    Ok(Tail {
        sets: d.clone(),
        report: tail_report_in(ix, d),
    })
}

/// A verified tail and the lattice id of its complement `B ∖ D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTail {
    pub tail: Tail,
    pub complement: usize,
}

/// The maximal tails whose complement is a lattice member, ordered by
/// complement id.
///
/// These are the tails that correspond to ideals. A family can satisfy the
/// tail axioms while its complement fails to be closed under unions (see
/// [`fixtures::split_loops`](crate::fixtures::split_loops)); such tails are
/// not listed here. [`scan_maximal_tails`] finds every tail by brute force.
pub fn enumerate_tails(space: &LabelledSpace, lattice: &HSLattice) -> Result<Vec<LatticeTail>> {
    let ix = space.index()?;
    let mut out = Vec::new();
    for (id, h) in lattice.members().iter().enumerate() {
        let d = h.members().complement();
        let report = tail_report_in(ix, &d);
        if report.passes() {
            out.push(LatticeTail {
                tail: Tail { sets: d, report },
                complement: id,
            });
        }
    }
    Ok(out)
}

/// Largest `|B|` accepted by [`scan_maximal_tails`].
pub const SCAN_LIMIT: usize = 20;

/// Every subfamily of `B` passing the tail checks, found by testing all
/// `2^|B|` candidates. Ordered by size, then lexicographically.
pub fn scan_maximal_tails(space: &LabelledSpace) -> Result<Vec<Tail>> {
    let ix = space.index()?;
    let n = ix.len();
    if n > SCAN_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "family size for a tail scan",
            limit: SCAN_LIMIT,
            actual: n,
        });
    }
    let mut out = Vec::new();
    for mask in 1u64..1 << n {
        if mask >> ix.empty() & 1 == 1 {
            continue;
        }
        let d = SubFamily::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        let report = tail_report_in(ix, &d);
        if report.passes() {
            out.push(Tail { sets: d, report });
        }
    }
    out.sort_by(|a, b| a.sets.cmp(&b.sets));
    Ok(out)
}

/// Primeness in the lattice: `H₁ ∩ H₂ ⊆ H` forces `H₁ ⊆ H` or `H₂ ⊆ H`.
pub fn is_prime_hs(space: &LabelledSpace, lattice: &HSLattice, id: usize) -> Result<bool> {
    space.index()?;
    if id >= lattice.len() {
        return Err(Error::IndexOutOfRange {
            index: id,
            len: lattice.len(),
        });
    }
    if id == lattice.top() {
        return Err(Error::TopFamily);
    }
    Ok(prime_in(lattice, id))
}

fn prime_in(lattice: &HSLattice, id: usize) -> bool {
    let h = lattice.member(id);
    let outside: Vec<&HSFamily> = lattice.members().iter().filter(|m| !m.is_subset(h)).collect();
    for (k, h1) in outside.iter().enumerate() {
        for h2 in &outside[k..] {
            if h1.members().intersection(h2.members()).is_subset(h.members()) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceEntry {
    pub lattice_id: usize,
    pub is_prime: bool,
    pub complement_is_tail: bool,
}

/// Pointwise comparison of primeness and the tail property of complements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimCorrespondence {
    pub entries: Vec<CorrespondenceEntry>,
    /// `(lattice id, tail position)` pairs for prime members.
    pub bijection: Vec<(usize, usize)>,
    pub holds: bool,
}

/// For every non-top lattice member `H`, checks `H` prime ⟺ `B ∖ H` is a maximal tail.
pub fn verify_prim_correspondence(space: &LabelledSpace, lattice: &HSLattice) -> Result<PrimCorrespondence> {
    let ix = space.index()?;
    let mut entries = Vec::new();
    let mut bijection = Vec::new();
    for id in 0..lattice.top() {
        let is_prime = prime_in(lattice, id);
        let complement_is_tail = tail_report_in(ix, &lattice.member(id).members().complement()).passes();
        if is_prime && complement_is_tail {
            bijection.push((id, bijection.len()));
        }
        entries.push(CorrespondenceEntry {
            lattice_id: id,
            is_prime,
            complement_is_tail,
        });
    }
    let holds = entries.iter().all(|e| e.is_prime == e.complement_is_tail);
    Ok(PrimCorrespondence {
        entries,
        bijection,
        holds,
    })
}

/// Trace of the word-driven tail construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailConstruction {
    /// `A, r(A, a₁), r(A, a₁a₂), …` in order of first appearance.
    pub prefix_ranges: Vec<usize>,
    /// `D₀, D₁, …` up to the fixpoint.
    pub stages: Vec<SubFamily>,
    pub tail: Tail,
}

/// Builds `D₀` from the prefix ranges of `word` starting at `A`, then grows
/// `D_{k+1} = D_k ∪ {X ∈ B : r(X, a) ∈ D_k for some a}` to a fixpoint and
/// checks the result against the tail axioms.
pub fn tail_from_word(space: &LabelledSpace, a: usize, word: &UltimatelyPeriodicWord) -> Result<TailConstruction> {
    let ix = space.index()?;
    check_index(ix, a)?;
    if a == ix.empty() {
        return Err(Error::EmptyStartSet);
    }
    let graph = space.graph();
    for &l in word.prefix().iter().chain(word.cycle()) {
        if l.0 >= ix.letters() {
            return Err(Error::UnknownLabel(alloc::format!("#{}", l.0)));
        }
    }

    let n = ix.len();
    let p = word.prefix().len();
    let c = word.cycle().len();
    let mut d0 = SubFamily::from_indices(n, [a]);
    let mut prefix_ranges = alloc::vec![a];
    // (phase, set) pairs already visited inside the periodic part
    let mut visited = SubFamily::none(n * c);
    let mut current = a;
    let mut pos = 0usize;
    loop {
        if pos >= p {
            let phase = (pos - p) % c;
            if !visited.insert(phase * n + current) {
                break;
            }
        }
        current = ix.step(current, word.letter_at(pos));
        pos += 1;
        if current == ix.empty() {
            let letters: Vec<_> = (0..pos).map(|k| word.letter_at(k)).collect();
            return Err(Error::WordNotRealizable {
                set: space.format_set_at(a),
                prefix: graph.format_letters(&letters),
            });
        }
        if d0.insert(current) {
            prefix_ranges.push(current);
        }
    }

    let mut stages = alloc::vec![d0.clone()];
    let mut d = d0;
    loop {
        let mut next = d.clone();
        for x in 0..n {
            if !next.contains(x) && ix.steps(x).any(|s| d.contains(s)) {
                next.insert(x);
            }
        }
        if next == d {
            break;
        }
        stages.push(next.clone());
        d = next;
    }
    let report = tail_report_in(ix, &d);
    Ok(TailConstruction {
        prefix_ranges,
        stages,
        tail: Tail { sets: d, report },
    })
}

/// Outcome of the reachability lemma check for one `(H, A)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    /// `K = {X ∈ B ∖ H : A ≥ X}`.
    pub k: SubFamily,
    /// The hereditary saturated closure of `K`.
    pub closure: SubFamily,
    /// `(Y, Z)` with `Y ∈ closure ∖ H`, `Z ∈ K` and `Y ≥ Z`.
    pub witnesses: Vec<(usize, usize)>,
    /// Nonempty members of the closure that lie in `H`. These are zero in the
    /// quotient by `H` and see nothing outside `H`, so they are not tested.
    pub inside_h: Vec<usize>,
    /// Members of `closure ∖ H` that see no member of `K`.
    pub failures: Vec<usize>,
}

impl LemmaReport {
    pub fn passes(&self) -> bool {
        !self.k.is_empty() && self.failures.is_empty()
    }
}

/// For `A ∉ H`, checks that every member `Y` of the closure of
/// `K = {X ∈ B ∖ H : A ≥ X}` that is nonzero modulo `H` sees some `Z ∈ K`.
pub fn lemma_br62_check(space: &LabelledSpace, h: &HSFamily, a: usize) -> Result<LemmaReport> {
    let ix = space.index()?;
    check_index(ix, a)?;
    if h.contains(a) {
        return Err(Error::SetInFamily(space.format_set_at(a)));
    }
    let r = ix.reachability();
    let outside = h.members().complement();
    let k = r.seen_by(a).intersection(&outside);
    let closure = hs_closure_in(ix, &k);

    let mut witnesses = Vec::new();
    let mut inside_h = Vec::new();
    let mut failures = Vec::new();
    for y in closure.iter() {
        if y == ix.empty() {
            continue;
        }
        if h.contains(y) {
            inside_h.push(y);
            continue;
        }
        match r.seen_by(y).intersection(&k).iter().next() {
            Some(z) => witnesses.push((y, z)),
            None => failures.push(y),
        }
    }
    Ok(LemmaReport {
        k,
        closure,
        witnesses,
        inside_h,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::fixtures;
    use crate::graph::VertexSet;
    use crate::lattice::enumerate_hs;

    struct Ctx {
        space: LabelledSpace,
    }

    impl Ctx {
        fn new(g: crate::graph::LabelledGraph) -> Self {
            Ctx {
                space: LabelledSpace::generated(g).unwrap(),
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

        fn word(&self, prefix: &[&str], cycle: &[&str]) -> UltimatelyPeriodicWord {
            let g = self.space.graph();
            let p = prefix.iter().map(|l| g.label(l).unwrap()).collect();
            let c = cycle.iter().map(|l| g.label(l).unwrap()).collect();
            UltimatelyPeriodicWord::new(p, c).unwrap()
        }

        fn d_full(&self) -> SubFamily {
            SubFamily::all(self.space.family().len()).difference(&self.fam(&[&[]]))
        }

        fn d_u(&self) -> SubFamily {
            self.fam(&[&["u"], &["u", "v"], &["u", "w"], &["u", "v", "w"]])
        }
    }

    #[test]
    fn sees_examples() {
        let c = Ctx::new(fixtures::g2());
        assert!(sees(&c.space, c.pos(&["u"]), c.pos(&["w"])).unwrap());
        assert!(!sees(&c.space, c.pos(&["w"]), c.pos(&["u"])).unwrap());
        for i in 0..8 {
            assert!(sees(&c.space, i, c.pos(&[])).unwrap());
        }
        let reach = c.space.index().unwrap().reachability().reachable(c.pos(&["u"]));
        assert_eq!(reach, &c.fam(&[&[], &["u"], &["v"], &["w"]]));
    }

    #[test]
    fn family_sees_examples() {
        let c = Ctx::new(fixtures::g2());
        assert!(family_sees(&c.space, &c.fam(&[&["u"]]), &c.fam(&[&["w"]])).unwrap());
        assert!(!family_sees(&c.space, &c.fam(&[&["w"]]), &c.fam(&[&["u"]])).unwrap());
        assert!(family_sees(&c.space, &SubFamily::none(8), &c.fam(&[&["u"]])).unwrap());
    }

    #[test]
    fn tail_axioms() {
        let c = Ctx::new(fixtures::g2());
        assert!(is_maximal_tail(&c.space, &c.d_full()).unwrap().is_verified());
        assert!(is_maximal_tail(&c.space, &c.d_u()).unwrap().is_verified());

        let t = is_maximal_tail(&c.space, &c.fam(&[&["v"], &["w"]])).unwrap();
        assert!(!t.is_verified());
        assert_eq!(t.report.failures(), ["axiom (c)"]);
        let (x, y) = t.report.axiom_c.unwrap();
        assert!(!t.sets.contains(x) && t.sets.contains(y));
        assert!(sees(&c.space, x, y).unwrap());

        let with_empty = c.d_full().union(&c.fam(&[&[]]));
        let t = is_maximal_tail(&c.space, &with_empty).unwrap();
        assert!(!t.report.excludes_empty_set);
        let t = is_maximal_tail(&c.space, &SubFamily::none(8)).unwrap();
        assert!(!t.report.is_nonempty);
    }

    #[test]
    fn g2_tails_and_primes() {
        let c = Ctx::new(fixtures::g2());
        let lattice = enumerate_hs(&c.space).unwrap();
        let tails = enumerate_tails(&c.space, &lattice).unwrap();
        assert_eq!(tails.len(), 2);
        assert_eq!(tails[0].tail.sets, c.d_full());
        assert_eq!(tails[0].complement, 0);
        assert_eq!(tails[1].tail.sets, c.d_u());
        assert_eq!(tails[1].complement, 1);

        assert!(is_prime_hs(&c.space, &lattice, 0).unwrap());
        assert!(is_prime_hs(&c.space, &lattice, 1).unwrap());
        assert_eq!(is_prime_hs(&c.space, &lattice, 2), Err(Error::TopFamily));

        let corr = verify_prim_correspondence(&c.space, &lattice).unwrap();
        assert!(corr.holds);
        assert_eq!(corr.bijection.len(), 2);
    }

    #[test]
    fn g3_tails() {
        let c = Ctx::new(fixtures::g3());
        let lattice = enumerate_hs(&c.space).unwrap();
        let tails = enumerate_tails(&c.space, &lattice).unwrap();
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].tail.sets.len(), 1);
        assert_eq!(verify_prim_correspondence(&c.space, &lattice).unwrap().bijection.len(), 1);
    }

    #[test]
    fn disjoint_loops_bottom_not_prime() {
        let c = Ctx::new(fixtures::two_loops());
        let lattice = enumerate_hs(&c.space).unwrap();
        assert_eq!(lattice.len(), 4);
        assert!(!is_prime_hs(&c.space, &lattice, 0).unwrap());
        let corr = verify_prim_correspondence(&c.space, &lattice).unwrap();
        assert!(corr.holds);
        assert!(!corr.entries[0].is_prime && !corr.entries[0].complement_is_tail);
        assert_eq!(corr.bijection.len(), 2);
    }

    #[test]
    fn word_construction() {
        let c = Ctx::new(fixtures::g2());
        let built = tail_from_word(&c.space, c.pos(&["v"]), &c.word(&["c"], &["d"])).unwrap();
        assert_eq!(built.stages[0], c.fam(&[&["v"], &["w"]]));
        assert_eq!(built.tail.sets, c.d_full());
        assert!(built.tail.is_verified());

        let built = tail_from_word(&c.space, c.pos(&["u"]), &c.word(&[], &["a"])).unwrap();
        assert_eq!(built.stages[0], c.fam(&[&["u"]]));
        assert_eq!(built.tail.sets, c.d_u());
        assert!(built.tail.is_verified());

        let err = tail_from_word(&c.space, c.pos(&["w"]), &c.word(&[], &["a"])).unwrap_err();
        assert_eq!(
            err.to_string(),
            "word not realizable from {w}: range of a is empty"
        );
        assert_eq!(
            tail_from_word(&c.space, c.pos(&[]), &c.word(&[], &["a"])),
            Err(Error::EmptyStartSet)
        );
    }

    #[test]
    fn lemma_examples() {
        let c = Ctx::new(fixtures::g2());
        let h1 = HSFamily::new(&c.space, &c.fam(&[&[], &["v"], &["w"], &["v", "w"]])).unwrap();
        let report = lemma_br62_check(&c.space, &h1, c.pos(&["u"])).unwrap();
        assert_eq!(report.k, c.fam(&[&["u"]]));
        assert!(report.passes());
        assert!(report.witnesses.iter().all(|&(_, z)| z == c.pos(&["u"])));
        assert_eq!(report.inside_h.len(), 3);

        let bottom = HSFamily::new(&c.space, &c.fam(&[&[]])).unwrap();
        let report = lemma_br62_check(&c.space, &bottom, c.pos(&["w"])).unwrap();
        assert_eq!(report.k, c.fam(&[&["w"]]));
        assert_eq!(report.closure, h1.members().clone());
        assert!(report.witnesses.contains(&(c.pos(&["v"]), c.pos(&["w"]))));
        assert!(report.passes());

        assert!(matches!(
            lemma_br62_check(&c.space, &h1, c.pos(&["v"])),
            Err(Error::SetInFamily(_))
        ));
    }

    #[test]
    fn tail_complement_need_not_be_hereditary() {
        let c = Ctx::new(fixtures::split_loops());
        let lattice = enumerate_hs(&c.space).unwrap();
        let all = scan_maximal_tails(&c.space).unwrap();
        let whole = c.fam(&[&["v", "w"]]);
        assert!(all.iter().any(|t| t.sets == whole));
        let complement = whole.complement();
        assert!(!crate::lattice::is_hereditary(&c.space, &complement).unwrap());
        assert_eq!(lattice.id_of(&complement), None);

        let listed: Vec<SubFamily> = enumerate_tails(&c.space, &lattice)
            .unwrap()
            .into_iter()
            .map(|t| t.tail.sets)
            .collect();
        assert!(!listed.contains(&whole));
        for d in &listed {
            assert!(all.iter().any(|t| &t.sets == d));
        }
    }

    #[test]
    fn scan_agrees_with_lattice_tails_on_g2() {
        let c = Ctx::new(fixtures::g2());
        let lattice = enumerate_hs(&c.space).unwrap();
        let mut listed: Vec<SubFamily> = enumerate_tails(&c.space, &lattice)
            .unwrap()
            .into_iter()
            .map(|t| t.tail.sets)
            .collect();
        listed.sort();
        let scanned: Vec<SubFamily> = scan_maximal_tails(&c.space).unwrap().into_iter().map(|t| t.sets).collect();
        assert_eq!(scanned, listed);
    }
}
