//! Locales of relations, functions and bijections between finite sets, their
//! groupoid structure maps, and finite group actions presented through them.

use crate::bitset::GenSet;
use crate::error::{Error, Result};
use crate::group::{elems, ElemSet, FiniteGroup};
use crate::gset::GSet;
use crate::locale::{codiagonal, twist, Cover, EngineConfig, FrameMorphism, Join, Prover, Site};
use crate::order::Preorder;
use crate::report::{Report, Verdict};
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Relations,
    Functions,
    Bijections,
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rel" | "relations" => Ok(Kind::Relations),
            "func" | "functions" => Ok(Kind::Functions),
            "bij" | "bijections" => Ok(Kind::Bijections),
            other => Err(Error::input("--kind", format!("unknown kind `{other}` (rel, func, bij)"))),
        }
    }
}

/// Default point labels `0..n`.
pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The site presenting `lRel`, `lFunc` or `lBij` from `xs` to `ys`.
/// Generator `<x|y>` sits at index `x * |ys| + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WraithSite {
    pub kind: Kind,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
    pub site: Site,
}

impl WraithSite {
    pub fn new(kind: Kind, xs: &[String], ys: &[String]) -> Self {
        let (nx, ny) = (xs.len(), ys.len());
        let gen = |x: usize, y: usize| x * ny + y;
        let names = (0..nx).flat_map(|x| (0..ny).map(move |y| (x, y))).map(|(x, y)| format!("<{}|{}>", xs[x], ys[y])).collect();
        let mut covers = Vec::new();
        if kind != Kind::Relations {
            for x in 0..nx {
                for y in 0..ny {
                    for y2 in y + 1..ny {
                        covers.push(Cover { target: GenSet::from_indices([gen(x, y), gen(x, y2)]), family: vec![] });
                    }
                }
                covers.push(Cover { target: GenSet::new(), family: (0..ny).map(|y| GenSet::singleton(gen(x, y))).collect() });
            }
        }
        if kind == Kind::Bijections {
            for y in 0..ny {
                for x in 0..nx {
                    for x2 in x + 1..nx {
                        covers.push(Cover { target: GenSet::from_indices([gen(x, y), gen(x2, y)]), family: vec![] });
                    }
                }
                covers.push(Cover { target: GenSet::new(), family: (0..nx).map(|x| GenSet::singleton(gen(x, y))).collect() });
            }
        }
        let site = Site::new(Preorder::discrete(names), covers).expect("wraith covers are well formed");
        WraithSite { kind, xs: xs.to_vec(), ys: ys.to_vec(), site }
    }

    pub fn sized(kind: Kind, nx: usize, ny: usize) -> Self {
        WraithSite::new(kind, &labels(nx), &labels(ny))
    }

    pub fn gen(&self, x: usize, y: usize) -> usize {
        x * self.ys.len() + y
    }

    /// Decodes a point (set of accepted generators) into the relation it names.
    pub fn relation_of(&self, point: &GenSet) -> Vec<(usize, usize)> {
        point.iter().map(|g| (g / self.ys.len(), g % self.ys.len())).collect()
    }
}

/// `m*[<x|y>] = ⋁_z [<x|z>] ⊗ [<z|y>]` from `W(X,Y)` to `W(X,Z) ⊗ W(Z,Y)`.
/// With `corrupt`, the term through the first `z` is dropped from the image of
/// the first generator.
pub fn multiplication(kind: Kind, xs: &[String], zs: &[String], ys: &[String], corrupt: bool) -> FrameMorphism {
    let src = WraithSite::new(kind, xs, ys);
    let left = WraithSite::new(kind, xs, zs);
    let right = WraithSite::new(kind, zs, ys);
    let off = left.site.generator_count();
    let mut images = Vec::new();
    for x in 0..xs.len() {
        for y in 0..ys.len() {
            let terms = (0..zs.len())
                .filter(|&z| !(corrupt && x == 0 && y == 0 && z == 0))
                .map(|z| GenSet::from_indices([left.gen(x, z), off + right.gen(z, y)]))
                .collect();
            images.push(Join { terms });
        }
    }
    FrameMorphism::new(src.site, left.site.tensor(&right.site), images).expect("multiplication is well formed")
}

/// `e*[<x|y>] = 1` iff `x = y`, into the two-element frame.
pub fn unit(kind: Kind, xs: &[String]) -> FrameMorphism {
    let src = WraithSite::new(kind, xs, xs);
    let n = xs.len();
    let images = (0..n * n).map(|g| if g / n == g % n { Join::top() } else { Join::zero() }).collect();
    FrameMorphism::new(src.site, Site::two(), images).expect("unit is well formed")
}

/// `ι*[<x|y>] = [<y|x>]` from `W(X,Y)` to `W(Y,X)`.
pub fn inverse(kind: Kind, xs: &[String], ys: &[String]) -> FrameMorphism {
    let src = WraithSite::new(kind, xs, ys);
    let dst = WraithSite::new(kind, ys, xs);
    let images = (0..xs.len()).flat_map(|x| (0..ys.len()).map(move |y| (x, y))).map(|(x, y)| Join::generator(dst.gen(y, x))).collect();
    FrameMorphism::new(src.site, dst.site, images).expect("inverse is well formed")
}

/// The unique frame map out of the two-element frame.
fn from_two(target: &Site) -> FrameMorphism {
    FrameMorphism::new(Site::two(), target.clone(), vec![]).expect("initial map is well formed")
}

/// Which structure map to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    M,
    E,
    Iota,
}

/// Builds and validates a structure map on sets of the given sizes.
pub fn structure_map(which: Structure, kind: Kind, nx: usize, ny: usize, nz: usize, cfg: &EngineConfig) -> Result<FrameMorphism> {
    let (xs, ys, zs) = (labels(nx), labels(ny), labels(nz));
    let m = match which {
        Structure::M => multiplication(kind, &xs, &zs, &ys, false),
        Structure::E => unit(kind, &xs),
        Structure::Iota => {
            if kind != Kind::Bijections {
                return Err(Error::Precondition("the inverse exists only on locales of bijections".into()));
            }
            inverse(kind, &xs, &ys)
        }
    };
    let prover = Prover::new(m.target(), cfg)?;
    let out = m.validate(&prover);
    match out.verdict {
        Verdict::Pass => Ok(m),
        Verdict::Fail => Err(Error::Validation(out.witness)),
        Verdict::Undecided => Err(Error::Undecided(out.witness)),
    }
}

fn law(report: &mut Report, name: &str, lhs: &FrameMorphism, rhs: &FrameMorphism, cfg: &EngineConfig) -> Result<Verdict> {
    let prover = Prover::new(lhs.target(), cfg)?;
    let out = lhs.equals(rhs, &prover);
    let engine = prover.describe();
    let witness = if out.witness.is_empty() || out.verdict == Verdict::Pass {
        format!("engine {engine}")
    } else {
        format!("{}; engine {engine}", out.witness)
    };
    report.check(name, out.verdict, witness);
    Ok(out.verdict)
}

fn valid(report: &mut Report, name: &str, m: &FrameMorphism, cfg: &EngineConfig) -> Result<()> {
    let prover = Prover::new(m.target(), cfg)?;
    let out = m.validate(&prover);
    report.check(name, out.verdict, out.witness);
    Ok(())
}

/// Checks the localic groupoid laws on the sets `X`, `Y`, `Z` of the given
/// sizes. Coassociativity is checked through `X -> Z -> Z' -> Y` with `Z'` a
/// copy of `Z`. The inverse laws apply to bijections only.
pub fn verify_groupoid_laws(kind: Kind, nx: usize, ny: usize, nz: usize, cfg: &EngineConfig, corrupt: bool) -> Result<Report> {
    let mut r = Report::new(format!("groupoid laws for {kind:?} with |X|={nx}, |Y|={ny}, |Z|={nz}").to_lowercase());
    let xs: Vec<String> = (0..nx).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (0..ny).map(|i| format!("y{i}")).collect();
    let zs: Vec<String> = (0..nz).map(|i| format!("z{i}")).collect();
    let zs2: Vec<String> = (0..nz).map(|i| format!("w{i}")).collect();
    let m = |a: &[String], b: &[String], c: &[String]| multiplication(kind, a, b, c, corrupt);

    valid(&mut r, "m* is a frame morphism", &m(&xs, &zs, &ys), cfg)?;
    valid(&mut r, "e* is a frame morphism", &unit(kind, &xs), cfg)?;

    let id = |a: &[String], b: &[String]| FrameMorphism::identity(&WraithSite::new(kind, a, b).site);
    let lhs = m(&xs, &zs2, &ys).then(&m(&xs, &zs, &zs2).tensor(&id(&zs2, &ys)))?;
    let rhs = m(&xs, &zs, &ys).then(&id(&xs, &zs).tensor(&m(&zs, &zs2, &ys)))?;
    law(&mut r, "coassociativity", &lhs, &rhs, cfg)?;

    let lhs = m(&xs, &xs, &ys).then(&unit(kind, &xs).tensor(&id(&xs, &ys)))?;
    law(&mut r, "left counit", &lhs, &id(&xs, &ys), cfg)?;
    let rhs = m(&xs, &ys, &ys).then(&id(&xs, &ys).tensor(&unit(kind, &ys)))?;
    law(&mut r, "right counit", &rhs, &id(&xs, &ys), cfg)?;

    if kind == Kind::Bijections {
        valid(&mut r, "iota* is a frame morphism", &inverse(kind, &xs, &ys), cfg)?;
        let wxy = WraithSite::new(kind, &xs, &ys).site;
        let lhs = m(&xs, &ys, &xs).then(&id(&xs, &ys).tensor(&inverse(kind, &ys, &xs)))?.then(&codiagonal(&wxy))?;
        let rhs = unit(kind, &xs).then(&from_two(&wxy))?;
        law(&mut r, "left inverse", &lhs, &rhs, cfg)?;
        let lhs = m(&ys, &xs, &ys).then(&inverse(kind, &ys, &xs).tensor(&id(&xs, &ys)))?.then(&codiagonal(&wxy))?;
        let rhs = unit(kind, &ys).then(&from_two(&wxy))?;
        law(&mut r, "right inverse", &lhs, &rhs, cfg)?;

        let lhs = inverse(kind, &ys, &xs).then(&m(&xs, &zs, &ys))?;
        let wyz = WraithSite::new(kind, &ys, &zs).site;
        let wzx = WraithSite::new(kind, &zs, &xs).site;
        let rhs = m(&ys, &zs, &xs)
            .then(&twist(&wyz, &wzx))?
            .then(&inverse(kind, &zs, &xs).tensor(&inverse(kind, &ys, &zs)))?;
        law(&mut r, "inverse reverses products", &lhs, &rhs, cfg)?;
        let lhs = inverse(kind, &xs, &ys).then(&inverse(kind, &ys, &xs))?;
        law(&mut r, "inverse is an involution", &lhs, &id(&xs, &ys), cfg)?;
    }
    let engines: Vec<String> = r.checks.iter().filter_map(|c| c.witness.strip_prefix("engine ").map(str::to_string)).collect();
    r.engine = if engines.iter().all(|e| e.starts_with("full")) {
        "full".into()
    } else if engines.iter().all(|e| e.starts_with("lazy")) {
        engines[0].clone()
    } else {
        "mixed".into()
    };
    if corrupt {
        r.note("m* corrupted: the term through z0 is dropped from m*[<x0|y0>]");
    }
    Ok(r)
}

/// A finite group action presented by `μ*[<x|y>] ⊆ G` in the discrete
/// locale on `G`.
#[derive(Clone, Debug)]
pub struct ActionPresentation {
    group: Arc<FiniteGroup>,
    labels: Vec<String>,
    mu: Vec<Vec<ElemSet>>,
}

impl ActionPresentation {
    /// `μ*(x, y) = {g : g x = y}`; the G-set axioms were checked when `a`
    /// was built.
    pub fn from_gset(a: &GSet) -> Self {
        let n = a.len();
        let mu = (0..n).map(|x| (0..n).map(|y| a.transporter(x, y)).collect()).collect();
        ActionPresentation { group: a.group().clone(), labels: a.labels().to_vec(), mu }
    }

    /// An arbitrary assignment, to be checked with [`Self::verify_equations`].
    pub fn from_mu(group: Arc<FiniteGroup>, labels: Vec<String>, mu: Vec<Vec<ElemSet>>) -> Self {
        ActionPresentation { group, labels, mu }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn mu(&self, x: usize, y: usize) -> ElemSet {
        self.mu[x][y]
    }

    /// The three equations of a morphism of localic groups `G -> lAut(X)`,
    /// evaluated in the powerset frames of `G`, `G x G` and `1`.
    pub fn verify_equations(&self) -> Report {
        let g = &self.group;
        let n = g.order();
        let k = self.len();
        let mut r = Report::new("action equations");
        r.engine = "discrete".into();
        let pairs = |s: &dyn Fn(usize, usize) -> bool| -> Vec<bool> { (0..n * n).map(|p| s(p / n, p % n)).collect() };
        let mut mult = Verdict::Pass;
        let mut mult_w = String::new();
        let mut inv = Verdict::Pass;
        let mut inv_w = String::new();
        let mut unit = Verdict::Pass;
        let mut unit_w = String::new();
        for x in 0..k {
            for y in 0..k {
                let target = self.mu[x][y];
                // m_G*(S) = {(g, h) : h g ∈ S}: first g, then h.
                let lhs = pairs(&|a, b| target & (1 << g.mul(b, a)) != 0);
                let rhs = pairs(&|a, b| (0..k).any(|z| self.mu[x][z] & (1 << a) != 0 && self.mu[z][y] & (1 << b) != 0));
                if lhs != rhs && mult.is_pass() {
                    mult = Verdict::Fail;
                    mult_w = format!("at <{}|{}>", self.labels[x], self.labels[y]);
                }
                let inverted = elems(target).iter().fold(0u64, |acc, &a| acc | 1 << g.inv(a));
                if inverted != self.mu[y][x] && inv.is_pass() {
                    inv = Verdict::Fail;
                    inv_w = format!("at <{}|{}>", self.labels[x], self.labels[y]);
                }
                let has_e = target & (1 << g.identity()) != 0;
                if has_e != (x == y) && unit.is_pass() {
                    unit = Verdict::Fail;
                    unit_w = format!("at <{}|{}>", self.labels[x], self.labels[y]);
                }
            }
        }
        r.check("m* mu* = (mu* (x) mu*) m*", mult, mult_w);
        r.check("mu* iota* = iota* mu*", inv, inv_w);
        r.check("e* mu* = e*", unit, unit_w);
        r
    }

    /// `lFix(x) = μ*[<x|x>]`, checked to be a subgroup.
    pub fn l_fix(&self, x: usize) -> Result<ElemSet> {
        let s = self.mu[x][x];
        if !self.group.is_subgroup(s) {
            return Err(Error::Validation(format!("lFix({}) is not a subgroup", self.labels[x])));
        }
        Ok(s)
    }

    pub fn is_transitive(&self) -> bool {
        self.mu.iter().all(|row| row.iter().all(|&s| s != 0))
    }
}

/// Presentation of an action together with the check of its equations.
pub fn action_from_gset(a: &GSet) -> (ActionPresentation, Report) {
    let p = ActionPresentation::from_gset(a);
    let r = p.verify_equations();
    (p, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locale::enumerate_points;

    #[test]
    fn site_shapes() {
        let rel = WraithSite::sized(Kind::Relations, 2, 2);
        assert_eq!(rel.site.generator_count(), 4);
        assert!(rel.site.covers().is_empty());
        let f = WraithSite::sized(Kind::Functions, 1, 2);
        assert_eq!(f.site.covers().len(), 2);
        let b = WraithSite::sized(Kind::Bijections, 2, 2);
        assert_eq!(b.site.covers().len(), 8);
    }

    #[test]
    fn point_counts_small() {
        assert_eq!(enumerate_points(&WraithSite::sized(Kind::Functions, 2, 3).site).unwrap().len(), 9);
        assert_eq!(enumerate_points(&WraithSite::sized(Kind::Bijections, 3, 3).site).unwrap().len(), 6);
        assert_eq!(enumerate_points(&WraithSite::sized(Kind::Relations, 2, 2).site).unwrap().len(), 16);
    }

    #[test]
    fn unit_sends_diagonal_to_top() {
        let e = structure_map(Structure::E, Kind::Functions, 2, 2, 2, &EngineConfig::full()).unwrap();
        assert_eq!(e.image(0), &Join::top());
        assert_eq!(e.image(1), &Join::zero());
        assert!(structure_map(Structure::Iota, Kind::Functions, 2, 2, 2, &EngineConfig::full()).is_err());
    }

    #[test]
    fn regular_z2_presentation() {
        let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let (p, r) = action_from_gset(&GSet::regular(z2.clone()));
        assert_eq!(p.mu(0, 1), 0b10);
        assert_eq!(p.mu(0, 0), 0b01);
        assert_eq!(r.verdict(), Verdict::Pass);
        let (t, _) = action_from_gset(&GSet::trivial(z2, 2));
        assert_eq!(t.mu(0, 1), 0);
        assert!(!t.is_transitive());
    }

    #[test]
    fn broken_presentation_fails() {
        let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let p = ActionPresentation::from_mu(z2, labels(2), vec![vec![0b01, 0b10], vec![0b10, 0b11]]);
        assert_eq!(p.verify_equations().verdict(), Verdict::Fail);
    }
}
