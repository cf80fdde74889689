//! Lazy entailment for sites too large to materialize.
//!
//! Nodes are up-closed generator subsets (meets). A node is derived when it
//! lies below a member of the goal family, or when some applicable cover has
//! all of its pullbacks derived. Pullbacks are strictly lower than the node
//! they cover, so the search space is acyclic and plain memoized recursion
//! computes the least fixpoint on the reachable part.

use super::{Cover, Site};
use crate::bitset::GenSet;
use crate::report::Verdict;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Lazy {
    site: Site,
    budget: u64,
    /// Covers ordered so that empty and small families are tried first.
    covers: Vec<Cover>,
}

struct Search<'a> {
    covers: &'a [Cover],
    goals: Vec<GenSet>,
    memo: HashMap<GenSet, bool>,
    expansions: u64,
    budget: u64,
}

impl Lazy {
    pub fn new(site: &Site, budget: u64) -> Self {
        let mut covers = site.covers().to_vec();
        covers.sort_by_key(|c| c.family.len());
        Lazy { site: site.clone(), budget, covers }
    }

    pub fn site(&self) -> &Site {
        &self.site
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Decides `[term] <= join(family)`.
    pub fn entails(&self, term: &GenSet, family: &[GenSet]) -> Verdict {
        self.entails_counted(term, family).0
    }

    /// Like [`Lazy::entails`], also returning the number of node expansions.
    pub fn entails_counted(&self, term: &GenSet, family: &[GenSet]) -> (Verdict, u64) {
        let base = self.site.base();
        let mut s = Search {
            covers: &self.covers,
            goals: family.iter().map(|f| base.up_closure(f)).collect(),
            memo: HashMap::new(),
            expansions: 0,
            budget: self.budget,
        };
        let root = base.up_closure(term);
        let v = s.derive(&root);
        (v, s.expansions)
    }
}

impl Search<'_> {
    fn derive(&mut self, node: &GenSet) -> Verdict {
        if let Some(&b) = self.memo.get(node) {
            return b.into();
        }
        if self.goals.iter().any(|g| g.is_subset(node)) {
            self.memo.insert(node.clone(), true);
            return Verdict::Pass;
        }
        if self.expansions >= self.budget {
            return Verdict::Undecided;
        }
        self.expansions += 1;
        let mut result = Verdict::Fail;
        let covers = self.covers;
        for c in covers {
            if !c.target.is_subset(node) {
                continue;
            }
            if c.family.iter().any(|f| f.is_subset(node)) {
                continue;
            }
            let mut all = Verdict::Pass;
            for f in &c.family {
                let pulled = node.union(f);
                match self.derive(&pulled) {
                    Verdict::Fail => {
                        all = Verdict::Fail;
                        break;
                    }
                    Verdict::Undecided => all = Verdict::Undecided,
                    Verdict::Pass => {}
                }
            }
            result = result.or(all);
            if result == Verdict::Pass {
                break;
            }
        }
        if result != Verdict::Undecided {
            self.memo.insert(node.clone(), result.is_pass());
        }
        result
    }
}
