//! Finite preorders and the free inf-lattice on a preorder.
//!
//! A finite subset `A` of the base names the meet of its elements. Two subsets
//! compare by `A <= B` iff every `b` in `B` lies above some `a` in `A`, which is
//! the same as `up(B) ⊆ up(A)`. Equivalence classes are therefore exactly the
//! up-closed subsets of the base.

use crate::bitset::GenSet;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_GENERATORS: usize = 16;
/// Hard ceiling for materializing the `2^k` classification table.
pub const HARD_MAX_GENERATORS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    names: Vec<String>,
    up: Vec<GenSet>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PreorderJson {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

impl Preorder {
    pub fn discrete(names: Vec<String>) -> Self {
        let up = (0..names.len()).map(GenSet::singleton).collect();
        Preorder { names, up }
    }

    pub fn empty() -> Self {
        Preorder::discrete(Vec::new())
    }

    /// Builds the preorder generated by `pairs` (reflexive-transitive closure).
    /// Returns the preorder and the number of pairs the closure had to add.
    pub fn closure_of(names: Vec<String>, pairs: &[[usize; 2]]) -> Result<(Self, usize)> {
        let n = names.len();
        let mut rel = vec![vec![false; n]; n];
        for (k, &[i, j]) in pairs.iter().enumerate() {
            if i >= n || j >= n {
                return Err(Error::input(format!("leq[{k}]"), format!("index out of range for {n} elements")));
            }
            rel[i][j] = true;
        }
        let given: usize = rel.iter().flatten().filter(|&&b| b).count();
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        let total: usize = rel.iter().flatten().filter(|&&b| b).count();
        let up = rel
            .iter()
            .map(|row| GenSet::from_indices((0..n).filter(|&j| row[j])))
            .collect();
        Ok((Preorder { names, up }, total - given))
    }

    /// Builds a preorder from an explicit relation that must already be
    /// reflexive and transitive.
    pub fn new(names: Vec<String>, pairs: &[[usize; 2]]) -> Result<Self> {
        let (p, added) = Preorder::closure_of(names, pairs)?;
        let listed: std::collections::HashSet<_> = pairs.iter().copied().collect();
        if added > 0 {
            for i in 0..p.len() {
                for j in p.up[i].iter() {
                    if !listed.contains(&[i, j]) {
                        return Err(Error::input(
                            "leq",
                            format!("relation is not reflexive and transitive: missing ({i}, {j})"),
                        ));
                    }
                }
            }
        }
        Ok(p)
    }

    /// Preorder given directly by up-sets; `up[i]` must contain `i` and be
    /// closed (checked).
    pub fn from_up_sets(names: Vec<String>, up: Vec<GenSet>) -> Result<Self> {
        for (i, u) in up.iter().enumerate() {
            if !u.contains(i) {
                return Err(Error::Validation(format!("element {i} is not below itself")));
            }
            for j in u.iter() {
                if j >= up.len() {
                    return Err(Error::Validation(format!("element {j} out of range")));
                }
                if !up[j].is_subset(u) {
                    return Err(Error::Validation(format!("relation not transitive through {i} <= {j}")));
                }
            }
        }
        Ok(Preorder { names, up })
    }

    pub fn from_json(doc: &PreorderJson) -> Result<(Self, usize)> {
        Preorder::closure_of(doc.elements.clone(), &doc.leq)
    }

    pub fn to_json(&self) -> PreorderJson {
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                leq.push([i, j]);
            }
        }
        PreorderJson { elements: self.names.clone(), leq }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up_of(&self, i: usize) -> &GenSet {
        &self.up[i]
    }

    /// Up-closure of a subset.
    pub fn up_closure(&self, a: &GenSet) -> GenSet {
        let mut out = GenSet::new();
        for i in a.iter() {
            out.union_with(&self.up[i]);
        }
        out
    }

    pub fn is_up_closed(&self, a: &GenSet) -> bool {
        a.iter().all(|i| self.up[i].is_subset(a))
    }

    pub fn disjoint_union(&self, other: &Preorder) -> Preorder {
        let off = self.len();
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut up = self.up.clone();
        up.extend(other.up.iter().map(|u| u.shifted(off)));
        Preorder { names, up }
    }

    /// All strict comparabilities `i <= j`, `i != j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.up[i].iter().filter(move |&j| j != i).map(move |j| (i, j)))
    }
}

/// The σ-rule: `[A] <= [B]` iff every `b` in `B` is above some `a` in `A`.
pub fn free_leq(a: &GenSet, b: &GenSet, p: &Preorder) -> bool {
    b.iter().all(|j| a.iter().any(|i| p.leq(i, j)))
}

/// The free inf-lattice on a preorder, materialized over all `2^k` subsets.
#[derive(Clone, Debug)]
pub struct FreeInfLattice {
    base: Preorder,
    /// Canonical subset of each element, as a mask.
    reps: Vec<u32>,
    /// Up-closure of each element's subset.
    ups: Vec<u32>,
    /// Element index of every subset mask.
    class_of: Vec<u32>,
    eta: Vec<usize>,
}

impl FreeInfLattice {
    pub fn new(base: &Preorder, max_generators: usize) -> Result<Self> {
        let k = base.len();
        let bound = max_generators.min(HARD_MAX_GENERATORS);
        if k > bound {
            return Err(Error::capacity("free inf-lattice base", k, bound));
        }
        let size = 1usize << k;
        let upm: Vec<u32> = (0..k).map(|i| base.up_of(i).to_mask() as u32).collect();
        let mut up_of_mask = vec![0u32; size];
        for m in 1..size {
            let low = m.trailing_zeros() as usize;
            up_of_mask[m] = up_of_mask[m & (m - 1)] | upm[low];
        }
        // Each class is one up-closed mask; its representative is the least
        // subset by (popcount, mask).
        let mut best = vec![u32::MAX; size];
        for m in 0..size {
            let u = up_of_mask[m] as usize;
            let b = best[u];
            if b == u32::MAX || (m.count_ones(), m) < (b.count_ones(), b as usize) {
                best[u] = m as u32;
            }
        }
        let mut reps: Vec<u32> = best.iter().copied().filter(|&b| b != u32::MAX).collect();
        reps.sort_by_key(|&r| (r.count_ones(), r));
        let mut index_of_up = vec![u32::MAX; size];
        let mut ups = Vec::with_capacity(reps.len());
        for (idx, &r) in reps.iter().enumerate() {
            let u = up_of_mask[r as usize];
            index_of_up[u as usize] = idx as u32;
            ups.push(u);
        }
        let class_of = up_of_mask.iter().map(|&u| index_of_up[u as usize]).collect();
        let mut lattice = FreeInfLattice { base: base.clone(), reps, ups, class_of, eta: Vec::new() };
        lattice.eta = (0..k).map(|i| lattice.class_of_mask(1 << i)).collect();
        Ok(lattice)
    }

    pub fn base(&self) -> &Preorder {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn top(&self) -> usize {
        0
    }

    /// Index of the class of the generator `i`.
    pub fn eta(&self, i: usize) -> usize {
        self.eta[i]
    }

    pub fn class_of_mask(&self, mask: u32) -> usize {
        self.class_of[mask as usize] as usize
    }

    pub fn class_of(&self, subset: &GenSet) -> usize {
        self.class_of_mask(subset.to_mask() as u32)
    }

    pub fn representative(&self, i: usize) -> GenSet {
        GenSet::from_mask(self.reps[i] as u64)
    }

    pub fn rep_mask(&self, i: usize) -> u32 {
        self.reps[i]
    }

    pub fn up_mask(&self, i: usize) -> u32 {
        self.ups[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.ups[j] & !self.ups[i] == 0
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.class_of_mask(self.ups[i] | self.ups[j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("g{i}")).collect()
    }

    #[test]
    fn discrete_pair_has_four_classes() {
        let p = Preorder::discrete(names(2));
        let l = FreeInfLattice::new(&p, 16).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.representative(l.top()), GenSet::new());
        assert_eq!(l.representative(3), GenSet::from_indices([0, 1]));
    }

    #[test]
    fn chain_identifies_meet_with_bottom_generator() {
        let (p, _) = Preorder::closure_of(names(2), &[[0, 1]]).unwrap();
        let l = FreeInfLattice::new(&p, 16).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.class_of(&GenSet::from_indices([0, 1])), l.eta(0));
        assert!(l.leq(l.eta(0), l.eta(1)));
        assert!(!l.leq(l.eta(1), l.eta(0)));
    }

    #[test]
    fn empty_base_is_single_top() {
        let l = FreeInfLattice::new(&Preorder::empty(), 16).unwrap();
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn capacity_is_reported() {
        let p = Preorder::discrete(names(17));
        match FreeInfLattice::new(&p, 16) {
            Err(Error::Capacity { bound, size, .. }) => assert_eq!((size, bound), (17, 16)),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn sigma_rule_examples() {
        let p = Preorder::discrete(names(2));
        let a = GenSet::singleton(0);
        let ab = GenSet::from_indices([0, 1]);
        assert!(free_leq(&ab, &a, &p));
        assert!(!free_leq(&a, &ab, &p));
        assert!(free_leq(&a, &GenSet::new(), &p));
    }

    #[test]
    fn closure_is_reported_and_strict_relation_checked() {
        let (p, added) = Preorder::closure_of(names(3), &[[0, 1], [1, 2]]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(added, 4);
        assert!(Preorder::new(names(3), &[[0, 1], [1, 2]]).is_err());
        let full = p.to_json();
        assert_eq!(Preorder::new(full.elements.clone(), &full.leq).unwrap(), p);
    }
}
