//! Finitely presented locales: sites on free inf-lattices and their frames.

mod engine;
mod frame;
mod lazy;
mod morphism;
mod points;

pub use engine::{EngineChoice, EngineConfig, Prover, DEFAULT_BUDGET};
pub use frame::{Frame, FrameElement};
pub use lazy::Lazy;
pub use morphism::{codiagonal, twist, FrameMorphism};
pub use points::{enumerate_points, points_bounded};

use crate::bitset::GenSet;
use crate::error::{Error, Result};
use crate::order::{free_leq, Preorder, PreorderJson};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// A basic cover: the meet of `target` is covered by the meets in `family`.
/// Both are stored up-closed in the base preorder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cover {
    pub target: GenSet,
    pub family: Vec<GenSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    base: Preorder,
    covers: Vec<Cover>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoverJson {
    pub target: Vec<usize>,
    pub family: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SiteJson {
    pub base: PreorderJson,
    pub covers: Vec<CoverJson>,
}

impl Site {
    /// Builds a site. Covers are normalized (up-closed, family sorted) and
    /// identical covers are kept once. Every family member must lie below the
    /// target.
    pub fn new(base: Preorder, covers: Vec<Cover>) -> Result<Self> {
        let n = base.len();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (ci, c) in covers.into_iter().enumerate() {
            for g in c.target.iter().chain(c.family.iter().flat_map(|f| f.iter())) {
                if g >= n {
                    return Err(Error::input(format!("covers[{ci}]"), format!("generator {g} out of range")));
                }
            }
            for (fi, f) in c.family.iter().enumerate() {
                if !free_leq(f, &c.target, &base) {
                    return Err(Error::input(
                        format!("covers[{ci}].family[{fi}]"),
                        "family member is not below the cover target",
                    ));
                }
            }
            let target = base.up_closure(&c.target);
            let mut family: Vec<GenSet> = c.family.iter().map(|f| base.up_closure(f)).collect();
            family.sort();
            family.dedup();
            let cover = Cover { target, family };
            if seen.insert(cover.clone()) {
                out.push(cover);
            }
        }
        Ok(Site { base, covers: out })
    }

    pub fn free(base: Preorder) -> Self {
        Site { base, covers: Vec::new() }
    }

    /// The presentation of the two-element frame (no generators).
    pub fn two() -> Self {
        Site::free(Preorder::empty())
    }

    /// Presentation of the discrete locale on `names`: one generator per
    /// point, pairwise disjoint, jointly covering the top.
    pub fn discrete(names: Vec<String>) -> Self {
        let n = names.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                covers.push(Cover { target: GenSet::from_indices([a, b]), family: vec![] });
            }
        }
        covers.push(Cover { target: GenSet::new(), family: (0..n).map(GenSet::singleton).collect() });
        Site::new(Preorder::discrete(names), covers).expect("discrete site is well formed")
    }

    pub fn base(&self) -> &Preorder {
        &self.base
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn generator_count(&self) -> usize {
        self.base.len()
    }

    pub fn generator_name(&self, i: usize) -> &str {
        self.base.name(i)
    }

    /// Tensor of presentations: disjoint union of bases, both coverages
    /// imported. Generators of `other` are shifted by `self.generator_count()`.
    pub fn tensor(&self, other: &Site) -> Site {
        let off = self.base.len();
        let base = self.base.disjoint_union(&other.base);
        let mut covers = self.covers.clone();
        covers.extend(other.covers.iter().map(|c| Cover {
            target: c.target.shifted(off),
            family: c.family.iter().map(|f| f.shifted(off)).collect(),
        }));
        Site { base, covers }
    }

    pub fn describe(&self, term: &GenSet) -> String {
        let names: Vec<&str> = term.iter().map(|g| self.base.name(g)).collect();
        format!("[{}]", names.join(","))
    }

    pub fn describe_cover(&self, c: &Cover) -> String {
        let fam: Vec<String> = c.family.iter().map(|f| self.describe(f)).collect();
        format!("{} <| {{{}}}", self.describe(&c.target), fam.join(", "))
    }

    pub fn from_json(doc: &SiteJson) -> Result<(Self, usize)> {
        let (base, added) = Preorder::from_json(&doc.base)?;
        let covers = doc
            .covers
            .iter()
            .map(|c| Cover {
                target: GenSet::from_indices(c.target.iter().copied()),
                family: c.family.iter().map(|f| GenSet::from_indices(f.iter().copied())).collect(),
            })
            .collect();
        Ok((Site::new(base, covers)?, added))
    }

    pub fn to_json(&self) -> SiteJson {
        SiteJson {
            base: self.base.to_json(),
            covers: self
                .covers
                .iter()
                .map(|c| CoverJson {
                    target: c.target.iter().collect(),
                    family: c.family.iter().map(|f| f.iter().collect()).collect(),
                })
                .collect(),
        }
    }
}

/// A join of finite meets of generators (disjunctive normal form).
/// The empty join is the bottom; a join containing the empty meet is the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Join {
    pub terms: Vec<GenSet>,
}

impl Join {
    pub fn zero() -> Self {
        Join { terms: Vec::new() }
    }

    pub fn top() -> Self {
        Join { terms: vec![GenSet::new()] }
    }

    pub fn generator(g: usize) -> Self {
        Join { terms: vec![GenSet::singleton(g)] }
    }

    pub fn term(t: GenSet) -> Self {
        Join { terms: vec![t] }
    }

    pub fn of_generators<I: IntoIterator<Item = usize>>(gens: I) -> Self {
        Join { terms: gens.into_iter().map(GenSet::singleton).collect() }
    }

    pub fn is_syntactic_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn join(&self, other: &Join) -> Join {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Join { terms }
    }

    /// Meet by distribution; the result is normalized against `base`.
    pub fn meet(&self, other: &Join, base: &Preorder) -> Join {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.union(b));
            }
        }
        Join { terms }.normalize(base)
    }

    /// Up-closes terms and drops terms lying below another term.
    pub fn normalize(&self, base: &Preorder) -> Join {
        let mut terms: Vec<GenSet> = self.terms.iter().map(|t| base.up_closure(t)).collect();
        terms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        terms.dedup();
        let mut kept: Vec<GenSet> = Vec::new();
        for t in terms {
            if !kept.iter().any(|k| k.is_subset(&t)) {
                kept.push(t);
            }
        }
        kept.sort();
        Join { terms: kept }
    }

    pub fn shifted(&self, offset: usize) -> Join {
        Join { terms: self.terms.iter().map(|t| t.shifted(offset)).collect() }
    }

    pub fn describe(&self, site: &Site) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.terms.iter().map(|t| site.describe(t)).collect();
        parts.join(" v ")
    }
}
