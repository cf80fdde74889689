//! Fully materialized frames: saturated downsets of the free inf-lattice,
//! stored as bitsets over lattice indices.

use super::{Join, Site};
use crate::bitset::{Bits, GenSet};
use crate::error::{Error, Result};
use crate::order::FreeInfLattice;
use std::sync::atomic::{AtomicU64, Ordering};

static NEXT_FRAME_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrameElement {
    frame: u64,
    bits: Bits,
}

impl FrameElement {
    pub fn bits(&self) -> &Bits {
        &self.bits
    }
}

#[derive(Debug)]
pub struct Frame {
    id: u64,
    site: Site,
    lattice: FreeInfLattice,
    /// Lattice indices, lowest elements first (largest up-closure first).
    order: Vec<u32>,
    /// Elements sent to zero by an empty pulled-back cover.
    forced: Vec<bool>,
    /// Non-trivial pulled-back covers of each element.
    rules: Vec<Vec<Box<[u32]>>>,
    zero: Bits,
}

impl Frame {
    pub fn new(site: &Site, max_generators: usize) -> Result<Self> {
        let lattice = FreeInfLattice::new(site.base(), max_generators)?;
        let n = lattice.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(lattice.up_mask(i as usize).count_ones()), i));
        let covers: Vec<(u32, Vec<u32>)> = site
            .covers()
            .iter()
            .map(|c| (c.target.to_mask() as u32, c.family.iter().map(|f| f.to_mask() as u32).collect()))
            .collect();
        let mut forced = vec![false; n];
        let mut rules: Vec<Vec<Box<[u32]>>> = vec![Vec::new(); n];
        for c in 0..n {
            let up = lattice.up_mask(c);
            for (target, family) in &covers {
                if target & !up != 0 {
                    continue;
                }
                if family.is_empty() {
                    forced[c] = true;
                    break;
                }
                let mut pulled: Vec<u32> = Vec::with_capacity(family.len());
                let mut trivial = false;
                for f in family {
                    let p = lattice.class_of_mask(up | f) as u32;
                    if p as usize == c {
                        trivial = true;
                        break;
                    }
                    pulled.push(p);
                }
                if !trivial {
                    pulled.sort_unstable();
                    pulled.dedup();
                    rules[c].push(pulled.into_boxed_slice());
                }
            }
            if forced[c] {
                rules[c].clear();
            }
        }
        let mut frame = Frame {
            id: NEXT_FRAME_ID.fetch_add(1, Ordering::Relaxed),
            site: site.clone(),
            lattice,
            order,
            forced,
            rules,
            zero: Bits::zeros(0),
        };
        frame.zero = frame.saturate_indices(&[]);
        Ok(frame)
    }

    pub fn site(&self) -> &Site {
        &self.site
    }

    pub fn lattice(&self) -> &FreeInfLattice {
        &self.lattice
    }

    fn wrap(&self, bits: Bits) -> FrameElement {
        FrameElement { frame: self.id, bits }
    }

    fn same(&self, a: &FrameElement) -> Result<()> {
        if a.frame == self.id {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// The nucleus applied to the downward closure of `seed`.
    ///
    /// Elements are visited lowest first; every pulled-back family member is
    /// strictly lower than the element it covers, so one pass reaches the
    /// least fixpoint.
    pub fn saturate_indices(&self, seed: &[usize]) -> Bits {
        let n = self.lattice.len();
        let k = self.site.generator_count();
        let below_seed: Box<dyn Fn(usize) -> bool> = if seed.len() <= 8 {
            let ups: Vec<u32> = seed.iter().map(|&s| self.lattice.up_mask(s)).collect();
            Box::new(move |c| {
                let uc = self.lattice.up_mask(c);
                ups.iter().any(|&u| u & !uc == 0)
            })
        } else {
            let mut mark = vec![false; 1usize << k];
            for &s in seed {
                mark[self.lattice.up_mask(s) as usize] = true;
            }
            for b in 0..k {
                let bit = 1usize << b;
                for m in 0..mark.len() {
                    if m & bit == 0 && mark[m] {
                        mark[m | bit] = true;
                    }
                }
            }
            Box::new(move |c| mark[self.lattice.up_mask(c) as usize])
        };
        let mut out = Bits::zeros(n);
        for &c in &self.order {
            let c = c as usize;
            let member = self.forced[c]
                || below_seed(c)
                || self.rules[c].iter().any(|r| r.iter().all(|&p| out.get(p as usize)));
            if member {
                out.set(c);
            }
        }
        out
    }

    pub fn saturate(&self, seed: &[usize]) -> FrameElement {
        self.wrap(self.saturate_indices(seed))
    }

    pub fn top(&self) -> FrameElement {
        self.saturate(&[self.lattice.top()])
    }

    pub fn zero(&self) -> FrameElement {
        self.wrap(self.zero.clone())
    }

    /// The frame element generated by a single meet of generators.
    pub fn principal(&self, term: &GenSet) -> FrameElement {
        self.saturate(&[self.lattice.class_of(term)])
    }

    pub fn from_join(&self, j: &Join) -> FrameElement {
        let seed: Vec<usize> = j.terms.iter().map(|t| self.lattice.class_of(t)).collect();
        self.saturate(&seed)
    }

    pub fn join(&self, a: &FrameElement, b: &FrameElement) -> Result<FrameElement> {
        self.same(a)?;
        self.same(b)?;
        let mut u = a.bits.clone();
        u.or_with(&b.bits);
        let seed: Vec<usize> = u.ones().collect();
        Ok(self.saturate(&seed))
    }

    pub fn meet(&self, a: &FrameElement, b: &FrameElement) -> Result<FrameElement> {
        self.same(a)?;
        self.same(b)?;
        let mut m = a.bits.clone();
        m.and_with(&b.bits);
        Ok(self.wrap(m))
    }

    pub fn leq(&self, a: &FrameElement, b: &FrameElement) -> Result<bool> {
        self.same(a)?;
        self.same(b)?;
        Ok(a.bits.is_subset(&b.bits))
    }

    pub fn is_zero(&self, a: &FrameElement) -> Result<bool> {
        self.same(a)?;
        Ok(a.bits == self.zero)
    }

    pub fn contains(&self, a: &FrameElement, term: &GenSet) -> Result<bool> {
        self.same(a)?;
        Ok(a.bits.get(self.lattice.class_of(term)))
    }

    /// Does `[term] <= join(family)` hold in the frame?
    pub fn entails(&self, term: &GenSet, family: &[GenSet]) -> bool {
        let seed: Vec<usize> = family.iter().map(|t| self.lattice.class_of(t)).collect();
        self.saturate_indices(&seed).get(self.lattice.class_of(term))
    }

    /// Is a set of lattice indices downward closed and cover-saturated?
    pub fn is_saturated(&self, bits: &Bits) -> bool {
        let n = self.lattice.len();
        for c in bits.ones() {
            for d in 0..n {
                if self.lattice.leq(d, c) && !bits.get(d) {
                    return false;
                }
            }
        }
        (0..n).all(|c| {
            bits.get(c) || !(self.forced[c] || self.rules[c].iter().any(|r| r.iter().all(|&p| bits.get(p as usize))))
        })
    }

    /// Maximal members of an element, as canonical generator subsets.
    pub fn generators_of(&self, a: &FrameElement) -> Vec<GenSet> {
        let members: Vec<usize> = a.bits.ones().collect();
        members
            .iter()
            .filter(|&&c| !members.iter().any(|&d| d != c && self.lattice.leq(c, d)))
            .map(|&c| self.lattice.representative(c))
            .collect()
    }

    /// Wraps raw bits (used by property tests on the nucleus).
    pub fn element_from_bits(&self, bits: Bits) -> Result<FrameElement> {
        if bits.len() != self.lattice.len() {
            return Err(Error::FrameMismatch);
        }
        Ok(self.wrap(bits))
    }
}
