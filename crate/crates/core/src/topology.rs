//! The closure-operator topology on the set of maximal tails, and its
//! comparison with the hull-kernel closure on the complements.
//!
//! Subsets of the tail space are [`BitSet`]s over tail positions.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::lattice::HSLattice;
use crate::space::{LabelledSpace, SubFamily};
use crate::tails::{enumerate_tails, family_sees_in, LatticeTail};

/// Largest tail space verified by enumerating every subset.
pub const EXHAUSTIVE_LIMIT: usize = 20;
/// Subset pairs drawn in sampled mode.
pub const DEFAULT_SAMPLES: usize = 100_000;

/// The maximal tails of a space, ordered by the lattice id of their complements.
#[derive(Debug, Clone)]
pub struct TailSpace {
    tails: Vec<LatticeTail>,
    complements: Vec<SubFamily>,
}

impl TailSpace {
    pub fn new(space: &LabelledSpace, lattice: &HSLattice) -> Result<Self> {
        let tails = enumerate_tails(space, lattice)?;
        let complements = tails.iter().map(|t| t.tail.sets.complement()).collect();
        Ok(Self { tails, complements })
    }

    pub fn len(&self) -> usize {
        self.tails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    pub fn tails(&self) -> &[LatticeTail] {
        &self.tails
    }

    /// `H_D = B ∖ D` for the tail at `i`.
    pub fn complement(&self, i: usize) -> &SubFamily {
        &self.complements[i]
    }

    pub fn none(&self) -> BitSet {
        BitSet::new(self.len())
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.len())
    }

    fn check(&self, xi: &BitSet) -> Result<()> {
        if xi.universe() != self.len() {
            return Err(Error::WidthMismatch {
                expected: self.len(),
                found: xi.universe(),
            });
        }
        Ok(())
    }

    fn subset_from_mask(&self, mask: u64) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|i| mask >> i & 1 == 1))
    }
}

/// `cl(ξ) = {D ∈ χ : D ≫ ∪ξ}`, with `cl(∅) = ∅`.
pub fn tail_closure(space: &LabelledSpace, chi: &TailSpace, xi: &BitSet) -> Result<BitSet> {
    let ix = space.index()?;
    chi.check(xi)?;
    let mut out = chi.none();
    if xi.is_empty() {
        return Ok(out);
    }
    let mut union = ix.none();
    for t in xi.iter() {
        union.union_with(&chi.tails[t].tail.sets);
    }
    for (d, tail) in chi.tails.iter().enumerate() {
        if family_sees_in(ix, &tail.tail.sets, &union) {
            out.insert(d);
        }
    }
    Ok(out)
}

/// `{D ∈ χ : H_D ⊇ ∩_{T ∈ ξ} H_T}`, with the empty subset mapped to `∅`.
pub fn hull_kernel_closure(space: &LabelledSpace, chi: &TailSpace, xi: &BitSet) -> Result<BitSet> {
    let ix = space.index()?;
    chi.check(xi)?;
    let mut out = chi.none();
    if xi.is_empty() {
        return Ok(out);
    }
    let mut kernel = ix.top();
    for t in xi.iter() {
        kernel.intersect_with(&chi.complements[t]);
    }
    for d in 0..chi.len() {
        if kernel.is_subset(&chi.complements[d]) {
            out.insert(d);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Every subset (or subset pair) was examined.
    Exhaustive { subsets: usize },
    /// Random subsets and pairs drawn from the supplied generator.
    Sampled { samples: usize },
}

/// Outcome of the closure-axiom check; each `Option` holds a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiReport {
    pub mode: CheckMode,
    pub empty_closure_is_empty: bool,
    pub extensive_violation: Option<BitSet>,
    pub idempotence_violation: Option<BitSet>,
    pub additivity_violation: Option<(BitSet, BitSet)>,
}

impl KuratowskiReport {
    pub fn passes(&self) -> bool {
        self.empty_closure_is_empty
            && self.extensive_violation.is_none()
            && self.idempotence_violation.is_none()
            && self.additivity_violation.is_none()
    }
}

fn exhaustive_guard(chi: &TailSpace) -> Result<()> {
    if chi.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::UseSampledMode {
            count: chi.len(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    Ok(())
}

/// Closure of every subset, indexed by bit mask.
fn closure_table(space: &LabelledSpace, chi: &TailSpace) -> Result<Vec<u64>> {
    exhaustive_guard(chi)?;
    let count = 1usize << chi.len();
    let mut table = Vec::with_capacity(count);
    for mask in 0..count as u64 {
        let closed = tail_closure(space, chi, &chi.subset_from_mask(mask))?;
        table.push(closed.iter().fold(0u64, |m, i| m | 1 << i));
    }
    Ok(table)
}

/// Checks the four closure axioms over every subset of `χ`.
///
/// Additivity is checked as `cl(ξ) = cl(ξ ∖ {x}) ∪ cl({x})` with `x` the
/// lowest member of `ξ`, for every `ξ`. By induction on `|ξ|` this gives
/// `cl(ξ) = ∪_{x ∈ ξ} cl({x})`, which is equivalent to additivity over all
/// pairs given `cl(∅) = ∅`; a failure is itself a violating pair.
pub fn verify_kuratowski(space: &LabelledSpace, chi: &TailSpace) -> Result<KuratowskiReport> {
    let table = closure_table(space, chi)?;
    let empty_closure_is_empty = table[0] == 0;
    let mut extensive = None;
    let mut idempotent = None;
    let mut additive = None;
    for (mask, &closed) in table.iter().enumerate() {
        let mask = mask as u64;
        if extensive.is_none() && mask & !closed != 0 {
            extensive = Some(mask);
        }
        if idempotent.is_none() && table[closed as usize] != closed {
            idempotent = Some(mask);
        }
        if additive.is_none() && mask.count_ones() >= 2 {
            let low = mask & mask.wrapping_neg();
            let rest = mask & !low;
            if table[rest as usize] | table[low as usize] != closed {
                additive = Some((rest, low));
            }
        }
    }
    Ok(KuratowskiReport {
        mode: CheckMode::Exhaustive {
            subsets: table.len(),
        },
        empty_closure_is_empty,
        extensive_violation: extensive.map(|m| chi.subset_from_mask(m)),
        idempotence_violation: idempotent.map(|m| chi.subset_from_mask(m)),
        additivity_violation: additive.map(|(a, b)| (chi.subset_from_mask(a), chi.subset_from_mask(b))),
    })
}

fn random_subset<R: RngCore>(chi: &TailSpace, rng: &mut R) -> BitSet {
    let mut out = chi.none();
    let mut word = 0u64;
    for i in 0..chi.len() {
        if i % 64 == 0 {
            word = rng.next_u64();
        }
        if word >> (i % 64) & 1 == 1 {
            out.insert(i);
        }
    }
    out
}

/// Checks the closure axioms on `samples` random pairs `(ξ, ζ)`.
pub fn verify_kuratowski_sampled<R: RngCore>(
    space: &LabelledSpace,
    chi: &TailSpace,
    rng: &mut R,
    samples: usize,
) -> Result<KuratowskiReport> {
    let cl = |xi: &BitSet| tail_closure(space, chi, xi);
    let empty_closure_is_empty = cl(&chi.none())?.is_empty();
    let mut extensive = None;
    let mut idempotent = None;
    let mut additive = None;
    for _ in 0..samples {
        let xi = random_subset(chi, rng);
        let zeta = random_subset(chi, rng);
        let closed = cl(&xi)?;
        if extensive.is_none() && !xi.is_subset(&closed) {
            extensive = Some(xi.clone());
        }
        if idempotent.is_none() && cl(&closed)? != closed {
            idempotent = Some(xi.clone());
        }
        if additive.is_none() && cl(&xi.union(&zeta))? != closed.union(&cl(&zeta)?) {
            additive = Some((xi, zeta));
        }
    }
    Ok(KuratowskiReport {
        mode: CheckMode::Sampled { samples },
        empty_closure_is_empty,
        extensive_violation: extensive,
        idempotence_violation: idempotent,
        additivity_violation: additive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomeomorphismReport {
    pub mode: CheckMode,
    /// A subset whose two closures differ.
    pub mismatch: Option<BitSet>,
}

impl HomeomorphismReport {
    pub fn passes(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares [`tail_closure`] with [`hull_kernel_closure`] on every subset of `χ`.
pub fn verify_homeomorphism(space: &LabelledSpace, chi: &TailSpace) -> Result<HomeomorphismReport> {
    exhaustive_guard(chi)?;
    let count = 1u64 << chi.len();
    let mut mismatch = None;
    for mask in 0..count {
        let xi = chi.subset_from_mask(mask);
        if tail_closure(space, chi, &xi)? != hull_kernel_closure(space, chi, &xi)? {
            mismatch = Some(xi);
            break;
        }
    }
    Ok(HomeomorphismReport {
        mode: CheckMode::Exhaustive {
            subsets: count as usize,
        },
        mismatch,
    })
}

pub fn verify_homeomorphism_sampled<R: RngCore>(
    space: &LabelledSpace,
    chi: &TailSpace,
    rng: &mut R,
    samples: usize,
) -> Result<HomeomorphismReport> {
    let mut mismatch = None;
    for _ in 0..samples {
        let xi = random_subset(chi, rng);
        if tail_closure(space, chi, &xi)? != hull_kernel_closure(space, chi, &xi)? {
            mismatch = Some(xi);
            break;
        }
    }
    Ok(HomeomorphismReport {
        mode: CheckMode::Sampled { samples },
        mismatch,
    })
}

/// All closed subsets of `χ`, ordered by size then lexicographically.
pub fn closed_sets(space: &LabelledSpace, chi: &TailSpace) -> Result<Vec<BitSet>> {
    let table = closure_table(space, chi)?;
    let distinct: BTreeSet<u64> = table.into_iter().collect();
    let mut out: Vec<BitSet> = distinct.into_iter().map(|m| chi.subset_from_mask(m)).collect();
    out.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp_lex(b)));
    Ok(out)
}

/// The specialization preorder: `D → D′` iff `D′ ∈ cl({D})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationOrder {
    /// Includes the reflexive pairs.
    pub edges: Vec<(usize, usize)>,
    /// No two distinct tails have the same point closure.
    pub is_t0: bool,
}

impl SpecializationOrder {
    pub fn proper_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied().filter(|(a, b)| a != b)
    }
}

pub fn specialization_order(space: &LabelledSpace, chi: &TailSpace) -> Result<SpecializationOrder> {
    let mut closures = Vec::with_capacity(chi.len());
    let mut edges = Vec::new();
    for d in 0..chi.len() {
        let closed = tail_closure(space, chi, &BitSet::from_indices(chi.len(), [d]))?;
        edges.extend(closed.iter().map(|e| (d, e)));
        closures.push(closed);
    }
    let distinct: BTreeSet<Vec<usize>> = closures.iter().map(|c| c.iter().collect()).collect();
    Ok(SpecializationOrder {
        edges,
        is_t0: distinct.len() == closures.len(),
    })
}
