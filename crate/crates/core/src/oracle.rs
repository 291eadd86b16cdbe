//! Brute-force reference implementations.
//!
//! Nothing here touches [`SpaceIndex`](crate::space::SpaceIndex) or the
//! lattice code: tables are rebuilt from the graph's range primitive and the
//! family's vertex sets, and hereditary/saturated families are found by
//! testing every subfamily of `B` against the definitions.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::graph::{VertexSet, Word};
use crate::space::LabelledSpace;

/// Size limits the oracle refuses to exceed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_family_size: usize,
    /// `None` means `|B|`.
    pub max_word_length: Option<usize>,
    pub max_subfamily_bits: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_family_size: 16,
            max_word_length: None,
            max_subfamily_bits: 20,
        }
    }
}

/// Reference tables for one space. Subfamilies are `u32` masks over `B`.
pub struct Oracle<'a> {
    space: &'a LabelledSpace,
    sets: &'a [VertexSet],
    // ranges[i][a]: position of r(B_i, a), or None if it left B
    ranges: Vec<Vec<Option<usize>>>,
    unions: Vec<Vec<Option<usize>>>,
    subsets: Vec<u32>,
    empty: Option<usize>,
    word_length: usize,
    hs: Option<Vec<u32>>,
}

impl<'a> Oracle<'a> {
    pub fn new(space: &'a LabelledSpace, budget: OracleBudget) -> Result<Self> {
        let sets = space.family().sets();
        let n = sets.len();
        let limit = budget.max_family_size.min(budget.max_subfamily_bits).min(32);
        if n > limit {
            return Err(Error::BudgetExceeded {
                what: "family size",
                limit,
                actual: n,
            });
        }
        let graph = space.graph();
        let find = |s: &VertexSet| sets.iter().position(|t| t == s);
        let mut ranges = Vec::with_capacity(n);
        for s in sets {
            let mut row = Vec::new();
            for a in graph.alphabet() {
                let r = graph.relative_range(s, &Word::letter(a))?;
                row.push(find(&r));
            }
            ranges.push(row);
        }
        let unions = sets
            .iter()
            .map(|a| sets.iter().map(|b| find(&a.union(b))).collect())
            .collect();
        let subsets = sets
            .iter()
            .map(|outer| {
                sets.iter()
                    .enumerate()
                    .filter(|(_, inner)| inner.is_subset(outer))
                    .fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Ok(Self {
            space,
            sets,
            ranges,
            unions,
            subsets,
            empty: find(&graph.empty_set()),
            word_length: budget.max_word_length.unwrap_or(n),
            hs: None,
        })
    }

    fn len(&self) -> usize {
        self.sets.len()
    }

    fn has(mask: u32, i: Option<usize>) -> bool {
        matches!(i, Some(i) if mask >> i & 1 == 1)
    }

    fn members(mask: u32) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| mask >> i & 1 == 1)
    }

    /// Conditions (1)-(3) of the hereditary definition, letter by letter.
    pub fn is_hereditary_mask(&self, mask: u32) -> bool {
        for i in Self::members(mask) {
            if !self.ranges[i].iter().all(|&r| Self::has(mask, r)) {
                return false;
            }
            if self.subsets[i] & !mask != 0 {
                return false;
            }
            for j in Self::members(mask) {
                if !Self::has(mask, self.unions[i][j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_saturated_mask(&self, mask: u32) -> bool {
        (0..self.len())
            .filter(|i| mask >> i & 1 == 0)
            .all(|i| !self.ranges[i].iter().all(|&r| Self::has(mask, r)))
    }

    fn normalize(&self, mask: u32) -> u32 {
        match self.empty {
            Some(e) => mask | 1 << e,
            None => mask,
        }
    }

    fn all_masks(&self) -> impl Iterator<Item = u32> {
        let n = self.len();
        (0..(1u64 << n)).map(|m| m as u32)
    }

    fn to_family(&self, mask: u32) -> SetFamily {
        SetFamily::from_sets(Self::members(mask).map(|i| self.sets[i].clone()))
    }

    fn hs_masks(&mut self) -> &[u32] {
        if self.hs.is_none() {
            let found: BTreeSet<u32> = self
                .all_masks()
                .filter(|&m| self.is_hereditary_mask(m) && self.is_saturated_mask(m))
                .map(|m| self.normalize(m))
                .collect();
            self.hs = Some(found.into_iter().collect());
        }
        self.hs.as_deref().unwrap()
    }

    fn sorted(mut families: Vec<SetFamily>) -> Vec<SetFamily> {
        families.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        families
    }

    /// Every hereditary and saturated subfamily, normalized to contain `∅`,
    /// ordered by size then lexicographically.
    pub fn enumerate_hs(&mut self) -> Vec<SetFamily> {
        let masks = self.hs_masks().to_vec();
        Self::sorted(masks.into_iter().map(|m| self.to_family(m)).collect())
    }

    /// Every nonempty hereditary subfamily.
    pub fn hereditary_families(&self) -> Vec<SetFamily> {
        let found: BTreeSet<u32> = self
            .all_masks()
            .filter(|&m| m != 0 && self.is_hereditary_mask(m))
            .collect();
        Self::sorted(found.into_iter().map(|m| self.to_family(m)).collect())
    }

    fn mask_of(&self, family: &SetFamily) -> Result<u32> {
        let mut mask = 0;
        for s in family.iter() {
            let i = self
                .sets
                .iter()
                .position(|t| t == s)
                .ok_or_else(|| Error::NotInFamily(self.space.graph().format_set(s)))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Intersection of all hereditary saturated families containing `h`.
    pub fn saturate(&mut self, h: &SetFamily) -> Result<SetFamily> {
        let target = self.normalize(self.mask_of(h)?);
        let full = if self.len() == 32 { !0 } else { (1u32 << self.len()) - 1 };
        let meet = self
            .hs_masks()
            .iter()
            .filter(|&&m| m & target == target)
            .fold(full, |acc, &m| acc & m);
        Ok(self.to_family(meet))
    }

    /// Whether some word of length `1..=max_word_length` has `b ⊆ r(a, α)`.
    ///
    /// Words are enumerated length by length; at each length only the
    /// distinct ranges are carried forward, since two words with the same
    /// range have the same extensions.
    pub fn sees(&self, a: &VertexSet, b: &VertexSet) -> Result<bool> {
        let graph = self.space.graph();
        let mut layer: BTreeSet<VertexSet> = BTreeSet::new();
        layer.insert(a.clone());
        for _ in 0..self.word_length {
            let mut next = BTreeSet::new();
            for x in &layer {
                for l in graph.alphabet() {
                    next.insert(graph.relative_range(x, &Word::letter(l))?);
                }
            }
            if next.iter().any(|r| b.is_subset(r)) {
                return Ok(true);
            }
            layer = next;
        }
        Ok(false)
    }
}

pub fn oracle_enumerate_hs(space: &LabelledSpace, budget: OracleBudget) -> Result<Vec<SetFamily>> {
    Ok(Oracle::new(space, budget)?.enumerate_hs())
}

pub fn oracle_sees(space: &LabelledSpace, budget: OracleBudget, a: &VertexSet, b: &VertexSet) -> Result<bool> {
    Oracle::new(space, budget)?.sees(a, b)
}

pub fn oracle_saturate(space: &LabelledSpace, budget: OracleBudget, h: &SetFamily) -> Result<SetFamily> {
    Oracle::new(space, budget)?.saturate(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fam(space: &LabelledSpace, sets: &[&[&str]]) -> SetFamily {
        SetFamily::from_sets(sets.iter().map(|n| space.graph().vertex_set(n).unwrap()))
    }

    #[test]
    fn g2_oracle() {
        let space = LabelledSpace::generated(fixtures::g2()).unwrap();
        let budget = OracleBudget::default();
        let hs = oracle_enumerate_hs(&space, budget).unwrap();
        let h1 = fam(&space, &[&[], &["v"], &["w"], &["v", "w"]]);
        assert_eq!(hs.len(), 3);
        assert_eq!(hs[0], fam(&space, &[&[]]));
        assert_eq!(hs[1], h1);
        assert_eq!(hs[2], space.family().clone());
        assert!(!hs.contains(&fam(&space, &[&[], &["w"]])));

        let g = space.graph();
        let set = |n: &[&str]| g.vertex_set(n).unwrap();
        assert!(oracle_sees(&space, budget, &set(&["u"]), &set(&["w"])).unwrap());
        assert!(!oracle_sees(&space, budget, &set(&["w"]), &set(&["u"])).unwrap());
        assert!(oracle_sees(&space, budget, &set(&["w"]), &set(&[])).unwrap());

        assert_eq!(oracle_saturate(&space, budget, &fam(&space, &[&[], &["w"]])).unwrap(), h1);
        assert_eq!(
            oracle_saturate(&space, budget, &fam(&space, &[&["u"]])).unwrap(),
            space.family().clone()
        );
        assert_eq!(
            oracle_saturate(&space, budget, &fam(&space, &[&[]])).unwrap(),
            fam(&space, &[&[]])
        );
    }

    #[test]
    fn g3_oracle() {
        let space = LabelledSpace::generated(fixtures::g3()).unwrap();
        assert_eq!(oracle_enumerate_hs(&space, OracleBudget::default()).unwrap().len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let space = LabelledSpace::generated(fixtures::g2()).unwrap();
        let tight = OracleBudget {
            max_family_size: 4,
            ..OracleBudget::default()
        };
        assert!(matches!(
            Oracle::new(&space, tight),
            Err(Error::BudgetExceeded { actual: 8, .. })
        ));
    }
}
