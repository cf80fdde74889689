//! Frame morphisms given on generators.
//!
//! A morphism sends each generator of the source presentation to a join of
//! meets of target generators. It extends to meets by distribution, and it is
//! a frame morphism exactly when it is monotone on the base preorder and every
//! basic cover `t <| F` satisfies `f(t) <= join f(F)` in the target frame.

use super::{Join, Prover, Site};
use crate::bitset::GenSet;
use crate::error::{Error, Result};
use crate::report::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameMorphism {
    source: Site,
    target: Site,
    images: Vec<Join>,
}

/// Outcome of checking a morphism or an equation of morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub witness: String,
}

impl FrameMorphism {
    pub fn new(source: Site, target: Site, images: Vec<Join>) -> Result<Self> {
        if images.len() != source.generator_count() {
            return Err(Error::Validation(format!(
                "assignment has {} images for {} generators",
                images.len(),
                source.generator_count()
            )));
        }
        let k = target.generator_count();
        for (g, j) in images.iter().enumerate() {
            if j.terms.iter().flat_map(|t| t.iter()).any(|i| i >= k) {
                return Err(Error::Validation(format!(
                    "image of {} names a generator outside the target",
                    source.generator_name(g)
                )));
            }
        }
        let images = images.iter().map(|j| j.normalize(target.base())).collect();
        Ok(FrameMorphism { source, target, images })
    }

    pub fn identity(site: &Site) -> Self {
        let images = (0..site.generator_count()).map(Join::generator).collect();
        FrameMorphism::new(site.clone(), site.clone(), images).expect("identity is well formed")
    }

    pub fn source(&self) -> &Site {
        &self.source
    }

    pub fn target(&self) -> &Site {
        &self.target
    }

    pub fn images(&self) -> &[Join] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &Join {
        &self.images[g]
    }

    pub fn image_of_term(&self, term: &GenSet) -> Join {
        let base = self.target.base();
        term.iter().fold(Join::top(), |acc, g| acc.meet(&self.images[g], base))
    }

    pub fn image_of_join(&self, j: &Join) -> Join {
        let mut out = Join::zero();
        for t in &j.terms {
            out = out.join(&self.image_of_term(t));
        }
        out.normalize(self.target.base())
    }

    /// `next ∘ self`: apply `self`, then `next`.
    pub fn then(&self, next: &FrameMorphism) -> Result<FrameMorphism> {
        if self.target != next.source {
            return Err(Error::Validation("composed morphisms do not share a site".into()));
        }
        let images = self.images.iter().map(|j| next.image_of_join(j)).collect();
        FrameMorphism::new(self.source.clone(), next.target.clone(), images)
    }

    /// `self ⊗ other` between tensor presentations.
    pub fn tensor(&self, other: &FrameMorphism) -> FrameMorphism {
        let off = self.target.generator_count();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|j| j.shifted(off)));
        FrameMorphism::new(self.source.tensor(&other.source), self.target.tensor(&other.target), images)
            .expect("tensor of morphisms is well formed")
    }

    /// Checks monotonicity on the base and the image of every basic cover.
    /// The prover must be built on the target site.
    pub fn validate(&self, prover: &Prover) -> Outcome {
        debug_assert_eq!(prover.site(), &self.target);
        let mut verdict = Verdict::Pass;
        let mut witness = String::new();
        let base = self.source.base();
        for (i, j) in base.pairs() {
            let v = prover.leq(&self.images[i], &self.images[j]);
            if v != Verdict::Pass && witness.is_empty() {
                witness = format!("order pair {} <= {} is not preserved", base.name(i), base.name(j));
            }
            verdict = verdict.and(v);
            if verdict == Verdict::Fail {
                return Outcome { verdict, witness };
            }
        }
        for c in self.source.covers() {
            let lhs = self.image_of_term(&c.target);
            let rhs = c.family.iter().fold(Join::zero(), |acc, f| acc.join(&self.image_of_term(f)));
            let v = prover.leq(&lhs, &rhs);
            if v != Verdict::Pass && (witness.is_empty() || v == Verdict::Fail) {
                witness = format!("cover {} is not sent to a cover", self.source.describe_cover(c));
            }
            verdict = verdict.and(v);
            if verdict == Verdict::Fail {
                break;
            }
        }
        Outcome { verdict, witness }
    }

    /// Compares two morphisms with the same source and target generator by
    /// generator, as frame elements of the target.
    pub fn equals(&self, other: &FrameMorphism, prover: &Prover) -> Outcome {
        let mut verdict = Verdict::Pass;
        let mut witness = String::new();
        if self.source != other.source || self.target != other.target {
            return Outcome { verdict: Verdict::Fail, witness: "morphisms have different sites".into() };
        }
        for g in 0..self.source.generator_count() {
            let v = prover.equal(&self.images[g], &other.images[g]);
            if v != Verdict::Pass && (witness.is_empty() || v == Verdict::Fail) {
                witness = format!(
                    "generator {}: {} vs {}",
                    self.source.generator_name(g),
                    self.images[g].describe(&self.target),
                    other.images[g].describe(&self.target)
                );
            }
            verdict = verdict.and(v);
            if verdict == Verdict::Fail {
                break;
            }
        }
        Outcome { verdict, witness }
    }
}

/// The fold map `S ⊗ S -> S` sending both copies of a generator to it.
pub fn codiagonal(site: &Site) -> FrameMorphism {
    let k = site.generator_count();
    let images = (0..2 * k).map(|g| Join::generator(g % k)).collect();
    FrameMorphism::new(site.tensor(site), site.clone(), images).expect("codiagonal is well formed")
}

/// The symmetry `A ⊗ B -> B ⊗ A`.
pub fn twist(a: &Site, b: &Site) -> FrameMorphism {
    let ka = a.generator_count();
    let kb = b.generator_count();
    let images = (0..ka + kb)
        .map(|g| if g < ka { Join::generator(kb + g) } else { Join::generator(g - ka) })
        .collect();
    FrameMorphism::new(a.tensor(b), b.tensor(a), images).expect("twist is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locale::{Cover, EngineConfig};
    use crate::order::Preorder;

    fn gen_site(covers: Vec<Cover>) -> Site {
        Site::new(Preorder::discrete(vec!["g".into()]), covers).unwrap()
    }

    #[test]
    fn identity_is_valid() {
        let s = Site::discrete(vec!["a".into(), "b".into(), "c".into()]);
        let p = Prover::new(&s, &EngineConfig::full()).unwrap();
        assert_eq!(FrameMorphism::identity(&s).validate(&p).verdict, Verdict::Pass);
    }

    #[test]
    fn everything_to_top_respects_covers_of_top() {
        let s = Site::discrete(vec!["a".into()]);
        let two = Site::two();
        let p = Prover::new(&two, &EngineConfig::full()).unwrap();
        let m = FrameMorphism::new(s, two, vec![Join::top()]).unwrap();
        assert_eq!(m.validate(&p).verdict, Verdict::Pass);
    }

    #[test]
    fn empty_cover_cannot_go_to_nonzero() {
        let s = gen_site(vec![Cover { target: GenSet::singleton(0), family: vec![] }]);
        let two = Site::two();
        let p = Prover::new(&two, &EngineConfig::full()).unwrap();
        let m = FrameMorphism::new(s, two, vec![Join::top()]).unwrap();
        let out = m.validate(&p);
        assert_eq!(out.verdict, Verdict::Fail);
        assert!(out.witness.contains("cover [g]"));
    }

    #[test]
    fn twist_twice_is_identity() {
        let a = Site::discrete(vec!["a".into(), "b".into()]);
        let b = gen_site(vec![]);
        let tt = twist(&a, &b).then(&twist(&b, &a)).unwrap();
        let p = Prover::new(&a.tensor(&b), &EngineConfig::full()).unwrap();
        assert_eq!(tt.equals(&FrameMorphism::identity(&a.tensor(&b)), &p).verdict, Verdict::Pass);
    }
}
