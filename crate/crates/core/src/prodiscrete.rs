//! Finite towers of groups with surjective transitions: restriction
//! functors, the germ colimit site and factoring of transitive actions.
//!
//! Everything here is the finite shadow of the prodiscrete picture: a tower
//! `G_1 <- G_2 <- ... <- G_n` stands in for its inverse limit, and "open
//! subgroup" means "contains the kernel of some projection".

use crate::category::{transitive_representatives, SiteCategory};
use crate::error::{Error, Result};
use crate::group::{elems, FiniteGroup, GroupHom, GroupJson};
use crate::gset::GSet;
use crate::report::Report;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

const SCOPE_NOTE: &str = "finite truncation: checks run on the listed stages, not on the inverse limit";

#[derive(Clone, Debug)]
pub struct GroupChain {
    stages: Vec<Arc<FiniteGroup>>,
    /// `transitions[i]: stages[i + 1] -> stages[i]`
    transitions: Vec<GroupHom>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainJson {
    pub stages: Vec<GroupJson>,
    pub transitions: Vec<Vec<usize>>,
}

impl GroupChain {
    pub fn new(stages: Vec<Arc<FiniteGroup>>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::input("stages", "a chain needs at least one stage"));
        }
        if maps.len() + 1 != stages.len() {
            return Err(Error::input(
                "transitions",
                format!("{} stages need {} transitions, got {}", stages.len(), stages.len() - 1, maps.len()),
            ));
        }
        let mut transitions = Vec::new();
        for (i, map) in maps.into_iter().enumerate() {
            let t = GroupHom::new(stages[i + 1].clone(), stages[i].clone(), map)
                .map_err(|e| Error::input(format!("transitions[{i}]"), e.to_string()))?;
            if let Some(g) = t.missing_from_image() {
                return Err(Error::input(
                    format!("transitions[{i}]"),
                    format!("not surjective: {} is not in the image", stages[i].label(g)),
                ));
            }
            transitions.push(t);
        }
        Ok(GroupChain { stages, transitions })
    }

    /// `G = G = ... = G` with `n` stages.
    pub fn constant(group: Arc<FiniteGroup>, n: usize) -> Result<Self> {
        let id: Vec<usize> = (0..group.order()).collect();
        GroupChain::new(vec![group; n], vec![id; n.saturating_sub(1)])
    }

    /// `Z/m <- Z/(m k) <- ...` with reduction maps, for the given orders.
    pub fn cyclic(orders: &[usize]) -> Result<Self> {
        let stages: Vec<Arc<FiniteGroup>> = orders.iter().map(|&n| FiniteGroup::cyclic(n).map(Arc::new)).collect::<Result<_>>()?;
        let maps = orders.windows(2).map(|w| (0..w[1]).map(|k| k % w[0]).collect()).collect();
        GroupChain::new(stages, maps)
    }

    pub fn from_json(doc: &ChainJson) -> Result<Self> {
        let stages = doc
            .stages
            .iter()
            .enumerate()
            .map(|(i, g)| FiniteGroup::from_json(g).map(Arc::new).map_err(|e| Error::input(format!("stages[{i}]"), e.to_string())))
            .collect::<Result<_>>()?;
        GroupChain::new(stages, doc.transitions.clone())
    }

    pub fn to_json(&self) -> ChainJson {
        ChainJson {
            stages: self.stages.iter().map(|g| g.to_json()).collect(),
            transitions: self.transitions.iter().map(|t| t.map().to_vec()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn stage(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.stages[i]
    }

    pub fn top(&self) -> &Arc<FiniteGroup> {
        self.stages.last().expect("non-empty chain")
    }

    pub fn transition(&self, i: usize) -> &GroupHom {
        &self.transitions[i]
    }

    /// The composite `G_j -> G_i` for `i <= j`.
    pub fn projection(&self, j: usize, i: usize) -> GroupHom {
        assert!(i <= j && j < self.len());
        let mut t = GroupHom::identity(self.stages[j].clone());
        for k in (i..j).rev() {
            t = t.then(&self.transitions[k]);
        }
        t
    }

    pub fn describe(&self) -> String {
        let names: Vec<&str> = self.stages.iter().map(|g| g.name()).collect();
        names.join(" <- ")
    }
}

/// `B(t)*(X)` for a surjection `t`.
pub fn restrict_along(t: &GroupHom, x: &GSet) -> Result<GSet> {
    if let Some(g) = t.missing_from_image() {
        return Err(Error::Precondition(format!(
            "{} -> {} is not surjective: {} is not in the image",
            t.source().name(),
            t.target().name(),
            t.target().label(g)
        )));
    }
    x.restrict_along(t)
}

/// Restriction along a surjection sends transitive objects to transitive
/// objects, fully and faithfully.
pub fn verify_bt_star(t: &GroupHom) -> Result<Report> {
    let mut r = Report::new(format!("B(t)* for t: {} -> {}", t.source().name(), t.target().name()));
    r.engine = "exhaustive".into();
    let below = transitive_representatives(t.target())?;
    let above: Vec<GSet> = below.iter().map(|x| restrict_along(t, x)).collect::<Result<_>>()?;
    let bad = above.iter().find(|x| !x.is_transitive());
    r.check("transitive objects restrict to transitive objects", bad.is_none(), bad.map(|x| x.name().to_string()).unwrap_or_default());
    let mut faithful = String::new();
    let mut full = String::new();
    for (i, x) in below.iter().enumerate() {
        for (j, y) in below.iter().enumerate() {
            // The underlying maps do not change, so faithfulness is inclusion.
            let h = x.homs(y)?;
            let still = h.iter().all(|m| above[i].is_equivariant(&above[j], m));
            if !still && faithful.is_empty() {
                faithful = format!("a map {} -> {} stops being equivariant", x.name(), y.name());
            }
            let n = above[i].homs(&above[j])?.len();
            if n != h.len() && full.is_empty() {
                full = format!("|hom({}, {})| = {} below but {n} above", x.name(), y.name(), h.len());
            }
        }
    }
    r.check("restriction is faithful", faithful.is_empty(), faithful);
    r.check("restriction is full (hom counts)", full.is_empty(), full);
    r.note(format!("{} transitive objects compared", below.len()));
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct Germ {
    pub stage: usize,
    pub object: GSet,
    /// The object pulled back to the top stage.
    pub at_top: GSet,
}

#[derive(Clone, Debug)]
pub struct ColimitSite {
    pub chain: GroupChain,
    pub germs: Vec<Germ>,
    /// Germ-equality class of each germ.
    pub class_of: Vec<usize>,
    /// First germ of each class.
    pub representatives: Vec<usize>,
    /// The category on class representatives, computed at the top stage.
    pub site: SiteCategory,
}

impl ColimitSite {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Germs from stage `i` and `j` are equal when they agree once pulled
    /// back to the later of the two stages.
    pub fn germ_equal(&self, a: usize, b: usize) -> Result<bool> {
        let (ga, gb) = (&self.germs[a], &self.germs[b]);
        let s = ga.stage.max(gb.stage);
        let pa = self.chain.projection(s, ga.stage);
        let pb = self.chain.projection(s, gb.stage);
        ga.object.restrict_along(&pa)?.is_isomorphic(&gb.object.restrict_along(&pb)?)
    }

    /// Classes coming from stage `i`.
    pub fn stage_classes(&self, i: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.germs.len()).filter(|&g| self.germs[g].stage == i).map(|g| self.class_of[g]).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn verify(&self) -> Result<Report> {
        let mut r = Report::new(format!("colimit site of {}", self.chain.describe()));
        r.engine = "exhaustive".into();
        r.note(SCOPE_NOTE);
        let mut equiv = String::new();
        for a in 0..self.germs.len() {
            for b in 0..self.germs.len() {
                if self.germ_equal(a, b)? != (self.class_of[a] == self.class_of[b]) && equiv.is_empty() {
                    equiv = format!("germ equality of {a} and {b} disagrees with the classes");
                }
            }
        }
        r.check("germ equality is an equivalence matching the classes", equiv.is_empty(), equiv);
        let mut nested = String::new();
        for i in 1..self.chain.len() {
            let (lo, hi) = (self.stage_classes(i - 1), self.stage_classes(i));
            if !lo.iter().all(|c| hi.contains(c)) && nested.is_empty() {
                nested = format!("stage {} is not included in stage {}", i, i + 1);
            }
        }
        r.check("the stages form a filtered union", nested.is_empty(), nested);
        for i in 0..self.chain.len() - 1 {
            let mut sub = verify_bt_star(self.chain.transition(i))?;
            sub.command = format!("inclusion of stage {} into stage {}", i + 1, i + 2);
            sub.notes.clear();
            r.absorb(sub);
        }
        for i in 0..self.chain.len() {
            r.note(format!("stage {}: {} classes", i + 1, self.stage_classes(i).len()));
        }
        Ok(r)
    }
}

pub fn colimit_site(chain: &GroupChain) -> Result<ColimitSite> {
    let top = chain.len() - 1;
    let mut germs = Vec::new();
    for i in 0..chain.len() {
        let p = chain.projection(top, i);
        for x in transitive_representatives(chain.stage(i))? {
            let at_top = x.restrict_along(&p)?;
            germs.push(Germ { stage: i, object: x, at_top });
        }
    }
    let mut class_of = Vec::with_capacity(germs.len());
    let mut representatives: Vec<usize> = Vec::new();
    for g in 0..germs.len() {
        let mut found = None;
        for (c, &rep) in representatives.iter().enumerate() {
            if germs[rep].at_top.is_isomorphic(&germs[g].at_top)? {
                found = Some(c);
                break;
            }
        }
        class_of.push(found.unwrap_or_else(|| {
            representatives.push(g);
            representatives.len() - 1
        }));
    }
    let objects = representatives
        .iter()
        .map(|&g| {
            let germ = &germs[g];
            if chain.len() == 1 {
                germ.at_top.clone()
            } else {
                germ.at_top.clone().with_name(format!("{}@{}", germ.object.name(), germ.stage + 1))
            }
        })
        .collect();
    let site = SiteCategory::from_gsets(objects)?;
    Ok(ColimitSite { chain: chain.clone(), germs, class_of, representatives, site })
}

#[derive(Clone, Debug)]
pub struct Factoring {
    /// 0-based stage index; reports print it 1-based.
    pub stage: usize,
    /// The factored `G_stage`-set.
    pub object: GSet,
    /// `B(t)*(Z) -> X` on underlying points.
    pub epi: Vec<usize>,
}

/// The least stage through which a transitive top-stage action factors.
pub fn factor_transitive(chain: &GroupChain, x: &GSet) -> Result<Factoring> {
    let top = chain.len() - 1;
    if !crate::gset::same_group(x.group(), chain.top()) {
        return Err(Error::GroupMismatch(format!("{} does not act through the top stage", x.name())));
    }
    if !x.is_transitive() {
        return Err(Error::Precondition(format!("{} is not transitive", x.name())));
    }
    let kernel = x.kernel();
    let stage = (0..=top)
        .find(|&i| chain.projection(top, i).kernel() & !kernel == 0)
        .expect("the top stage always factors");
    let p = chain.projection(top, stage);
    let g = chain.stage(stage);
    let mut act = vec![Vec::new(); g.order()];
    for k in 0..chain.top().order() {
        act[p.apply(k)] = (0..x.len()).map(|pt| x.act(k, pt)).collect();
    }
    let object = GSet::new(g.clone(), x.name(), act, x.labels().to_vec())?;
    let epi: Vec<usize> = (0..x.len()).collect();
    debug_assert!(object.restrict_along(&p)?.is_equivariant(x, &epi));
    Ok(Factoring { stage, object, epi })
}

/// Which subgroups of the top group are preimages of subgroups at which
/// stage; a subgroup is reachable at stage `i` when it contains the kernel
/// of the projection to `G_i`.
pub fn cofinal_subgroups(chain: &GroupChain) -> Result<Report> {
    let top = chain.len() - 1;
    let g = chain.top();
    let mut r = Report::new(format!("cofinal subgroups of {}", chain.describe()));
    r.engine = "exhaustive".into();
    r.note(SCOPE_NOTE);
    let mut mismatch = String::new();
    let mut unreachable = Vec::new();
    for u in g.subgroups()? {
        let mut stages = Vec::new();
        for i in 0..=top {
            let p = chain.projection(top, i);
            let contains = p.kernel() & !u == 0;
            let w = p.image(u);
            let is_preimage = p.preimage(w) == u;
            if contains != is_preimage && mismatch.is_empty() {
                mismatch = format!("kernel containment and preimage disagree for {} at stage {}", g.describe_subgroup(u), i + 1);
            }
            if is_preimage {
                stages.push((i + 1).to_string());
            }
        }
        if stages.is_empty() {
            unreachable.push(g.describe_subgroup(u));
        }
        r.note(format!("{} (order {}): stages {}", g.describe_subgroup(u), elems(u).len(), stages.join(", ")));
    }
    r.check("preimages are exactly the subgroups containing a stage kernel", mismatch.is_empty(), mismatch);
    r.check("every subgroup of the top stage is reachable", unreachable.is_empty(), unreachable.join(", "));
    Ok(r)
}

/// All the chain checks together.
pub fn verify_chain(chain: &GroupChain) -> Result<Report> {
    let mut r = Report::new(format!("chain {}", chain.describe()));
    r.engine = "exhaustive".into();
    r.note(SCOPE_NOTE);
    let colim = colimit_site(chain)?;
    r.absorb(colim.verify()?);
    r.absorb(cofinal_subgroups(chain)?);
    let top = chain.len() - 1;
    let mut comp = String::new();
    for x in transitive_representatives(chain.top())? {
        let f = factor_transitive(chain, &x)?;
        let back = f.object.restrict_along(&chain.projection(top, f.stage))?;
        if !back.is_equivariant(&x, &f.epi) || !back.is_isomorphic(&x)? {
            comp = format!("{} does not come back from stage {}", x.name(), f.stage + 1);
        }
        r.note(format!("{} factors through stage {}", x.name(), f.stage + 1));
    }
    r.check("factoring then restricting recovers each transitive object", comp.is_empty(), comp);
    r.note(format!("{} germ classes", colim.class_count()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn z2_z4_z8() {
        let chain = GroupChain::cyclic(&[2, 4, 8]).unwrap();
        let c = colimit_site(&chain).unwrap();
        assert_eq!(c.class_count(), 4);
        assert_eq!(c.stage_classes(0).len(), 2);
        let r = verify_chain(&chain).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass, "{}", r.to_text());
        let reg = GSet::regular(chain.top().clone());
        assert_eq!(factor_transitive(&chain, &reg).unwrap().stage, 2);
        let pt = GSet::point(chain.top().clone());
        assert_eq!(factor_transitive(&chain, &pt).unwrap().stage, 0);
    }

    #[test]
    fn z4_to_z2_restriction() {
        let chain = GroupChain::cyclic(&[2, 4]).unwrap();
        let x = restrict_along(chain.transition(0), &GSet::regular(chain.stage(0).clone())).unwrap();
        assert_eq!(x.len(), 2);
        assert!(x.is_transitive());
        let r = cofinal_subgroups(&chain).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass);
        assert!(r.notes.iter().any(|n| n.starts_with("1 (order 1): stages 2")), "{:?}", r.notes);
    }

    #[test]
    fn non_surjective_rejected() {
        let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let z4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let err = GroupChain::new(vec![z4, z2], vec![vec![0, 0]]).unwrap_err();
        assert!(err.to_string().contains("not surjective"), "{err}");
    }

    #[test]
    fn constant_chain_is_tbg() {
        let s3 = Arc::new(FiniteGroup::builtin("S3").unwrap());
        let c = colimit_site(&GroupChain::constant(s3.clone(), 3).unwrap()).unwrap();
        let tbg = crate::category::build_tbg_site(&s3, 24).unwrap();
        assert_eq!(c.site.gsets, tbg.gsets);
        assert!(c.site.category.same_shape(&tbg.category));
    }
}
