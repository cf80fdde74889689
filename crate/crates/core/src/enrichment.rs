//! Locales of natural relations, transformations and bijections between
//! finite set-valued functors, the localic Yoneda isomorphisms, the localic
//! group `lAut(F)` with its action, and the transitivity and lifting
//! statements for atomic sites.

use crate::bitset::GenSet;
use crate::category::{verify_atomic_site, FiniteCategory, FunctorData, SiteCategory};
use crate::error::{Error, Result};
use crate::galois::automorphism_group_op;
use crate::group::FiniteGroup;
use crate::locale::{enumerate_points, Cover, EngineConfig, FrameMorphism, Join, Prover, Site};
use crate::order::{free_leq, Preorder};
use crate::report::{Report, Verdict};
use crate::wraith::{Kind, WraithSite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// The site presenting `lRel(F, G)`, `lFunc(F, G)` or `lBij(F, G)`.
///
/// Generators are the pairs `(X, <a|b>)` with `a ∈ FX`, `b ∈ GX`, ordered by
/// `(X, <a|b>) ≤ (Y, <Ff a|Gf b>)` for every arrow `f: X -> Y`.
#[derive(Clone, Debug)]
pub struct NatLocale {
    pub kind: Kind,
    pub cat: FiniteCategory,
    pub f: FunctorData,
    pub g: FunctorData,
    pub site: Site,
    offsets: Vec<usize>,
}

impl NatLocale {
    pub fn new(kind: Kind, cat: &FiniteCategory, f: &FunctorData, g: &FunctorData) -> Result<Self> {
        for (name, fun) in [("F", f), ("G", g)] {
            if let Some(p) = fun.problem(cat) {
                return Err(Error::Validation(format!("{name}: {p}")));
            }
        }
        let mut offsets = Vec::with_capacity(cat.object_count());
        let mut names = Vec::new();
        for x in 0..cat.object_count() {
            offsets.push(names.len());
            for a in 0..f.values[x] {
                for b in 0..g.values[x] {
                    names.push(format!("({},<{a}|{b}>)", cat.objects()[x]));
                }
            }
        }
        let gen = |x: usize, a: usize, b: usize| offsets[x] + a * g.values[x] + b;
        let mut pairs = Vec::new();
        for (k, arr) in cat.arrows().iter().enumerate() {
            for a in 0..f.values[arr.src] {
                for b in 0..g.values[arr.src] {
                    pairs.push([gen(arr.src, a, b), gen(arr.dst, f.maps[k][a], g.maps[k][b])]);
                }
            }
        }
        let (base, _) = Preorder::closure_of(names, &pairs)?;
        let mut covers = Vec::new();
        if kind != Kind::Relations {
            for x in 0..cat.object_count() {
                for z in 0..f.values[x] {
                    for b in 0..g.values[x] {
                        for b2 in b + 1..g.values[x] {
                            covers.push(Cover { target: GenSet::from_indices([gen(x, z, b), gen(x, z, b2)]), family: vec![] });
                        }
                    }
                    let family = (0..g.values[x]).map(|b| GenSet::singleton(gen(x, z, b))).collect();
                    covers.push(Cover { target: GenSet::new(), family });
                }
            }
        }
        if kind == Kind::Bijections {
            for x in 0..cat.object_count() {
                for z in 0..g.values[x] {
                    for a in 0..f.values[x] {
                        for a2 in a + 1..f.values[x] {
                            covers.push(Cover { target: GenSet::from_indices([gen(x, a, z), gen(x, a2, z)]), family: vec![] });
                        }
                    }
                    let family = (0..f.values[x]).map(|a| GenSet::singleton(gen(x, a, z))).collect();
                    covers.push(Cover { target: GenSet::new(), family });
                }
            }
        }
        let site = Site::new(base, covers)?;
        Ok(NatLocale { kind, cat: cat.clone(), f: f.clone(), g: g.clone(), site, offsets })
    }

    pub fn gen(&self, x: usize, a: usize, b: usize) -> usize {
        self.offsets[x] + a * self.g.values[x] + b
    }

    /// `(object, a, b)` of a generator.
    pub fn decode(&self, i: usize) -> (usize, usize, usize) {
        let x = self.offsets.partition_point(|&o| o <= i) - 1;
        let r = i - self.offsets[x];
        (x, r / self.g.values[x], r % self.g.values[x])
    }

    pub fn generator_count(&self) -> usize {
        self.site.generator_count()
    }

    /// Splits a point into one relation `FX -> GX` per object.
    pub fn relation_of(&self, point: &GenSet) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.cat.object_count()];
        for i in point.iter() {
            let (x, a, b) = self.decode(i);
            out[x].push((a, b));
        }
        out
    }

    /// Whether a family of relations is natural, and functional or
    /// bijective as the kind demands.
    pub fn is_admissible(&self, rel: &[Vec<(usize, usize)>]) -> bool {
        for (k, arr) in self.cat.arrows().iter().enumerate() {
            for &(a, b) in &rel[arr.src] {
                if !rel[arr.dst].contains(&(self.f.maps[k][a], self.g.maps[k][b])) {
                    return false;
                }
            }
        }
        let counts = |x: usize, by_source: bool| -> Vec<usize> {
            let n = if by_source { self.f.values[x] } else { self.g.values[x] };
            let mut c = vec![0; n];
            for &(a, b) in &rel[x] {
                c[if by_source { a } else { b }] += 1;
            }
            c
        };
        (0..self.cat.object_count()).all(|x| {
            let functional = self.kind == Kind::Relations || counts(x, true).iter().all(|&c| c == 1);
            let bijective = self.kind != Kind::Bijections || counts(x, false).iter().all(|&c| c == 1);
            functional && bijective
        })
    }
}

/// Points of a natural-relation locale, with a check that each decodes to a
/// natural relation of the right kind.
pub fn nat_points(nat: &NatLocale) -> Result<(Vec<GenSet>, Report)> {
    let points = enumerate_points(&nat.site)?;
    let mut r = Report::new(format!("points of the locale of natural {}", kind_noun(nat.kind)));
    r.engine = "point search".into();
    let bad = points.iter().find(|p| !nat.is_admissible(&nat.relation_of(p)));
    r.check(
        format!("every point is a natural {}", kind_singular(nat.kind)),
        bad.is_none(),
        bad.map(|p| nat.site.describe(p)).unwrap_or_default(),
    );
    r.note(format!("{} generators, {} covers, {} points", nat.generator_count(), nat.site.covers().len(), points.len()));
    Ok((points, r))
}

fn kind_noun(kind: Kind) -> &'static str {
    match kind {
        Kind::Relations => "relations",
        Kind::Functions => "transformations",
        Kind::Bijections => "bijections",
    }
}

fn kind_singular(kind: Kind) -> &'static str {
    match kind {
        Kind::Relations => "relation",
        Kind::Functions => "transformation",
        Kind::Bijections => "bijection",
    }
}

fn record(r: &mut Report, name: &str, v: Verdict, witness: String) {
    r.check(name, v, witness);
}

/// `φ: lFunc([A,-], F) -> FA` and its inverse `λ`, both as frame maps, with
/// the two round trips checked as frame equalities.
pub fn yoneda_verify(cat: &FiniteCategory, a: usize, f: &FunctorData, cfg: &EngineConfig) -> Result<Report> {
    let rep = FunctorData::representable(cat, a);
    let nat = NatLocale::new(Kind::Functions, cat, &rep, f)?;
    let homs: Vec<Vec<usize>> = (0..cat.object_count()).map(|x| cat.hom(a, x)).collect();
    let fa = Site::discrete((0..f.values[a]).map(|e| e.to_string()).collect());
    let mut phi_images = Vec::with_capacity(nat.generator_count());
    for i in 0..nat.generator_count() {
        let (x, u, y) = nat.decode(i);
        let arrow = homs[x][u];
        phi_images.push(Join::of_generators((0..f.values[a]).filter(|&e| f.maps[arrow][e] == y)));
    }
    let phi = FrameMorphism::new(nat.site.clone(), fa.clone(), phi_images)?;
    let id_pos = homs[a].iter().position(|&u| u == cat.identity(a)).expect("identity in hom");
    let lam_images = (0..f.values[a]).map(|e| Join::generator(nat.gen(a, id_pos, e))).collect();
    let lam = FrameMorphism::new(fa.clone(), nat.site.clone(), lam_images)?;
    let on_nat = Prover::new(&nat.site, cfg)?;
    let on_fa = Prover::new(&fa, cfg)?;
    let mut r = Report::new(format!("localic Yoneda at {}", cat.objects()[a]));
    r.engine = on_nat.describe();
    let o = phi.validate(&on_fa);
    record(&mut r, "phi is a frame map", o.verdict, o.witness);
    let o = lam.validate(&on_nat);
    record(&mut r, "lambda is a frame map", o.verdict, o.witness);
    let o = lam.then(&phi)?.equals(&FrameMorphism::identity(&fa), &on_fa);
    record(&mut r, "phi lambda = id", o.verdict, o.witness);
    let o = phi.then(&lam)?.equals(&FrameMorphism::identity(&nat.site), &on_nat);
    record(&mut r, "lambda phi = id", o.verdict, o.witness);
    r.note(format!("{} generators on the functor side, |FA| = {}", nat.generator_count(), f.values[a]));
    Ok(r)
}

/// `m_G*`, `e_G*`, `ι_G*` for a discrete group, with `m_G*(S) = {(g, h) : h g ∈ S}`.
pub fn discrete_group_maps(group: &FiniteGroup) -> Result<(Site, FrameMorphism, FrameMorphism, FrameMorphism)> {
    let site = Site::discrete(group.labels().to_vec());
    let n = group.order();
    let m_images = (0..n)
        .map(|c| Join {
            terms: (0..n)
                .flat_map(|g| (0..n).map(move |h| (g, h)))
                .filter(|&(g, h)| group.mul(h, g) == c)
                .map(|(g, h)| GenSet::from_indices([g, n + h]))
                .collect(),
        })
        .collect();
    let m = FrameMorphism::new(site.clone(), site.tensor(&site), m_images)?;
    let e_images = (0..n).map(|c| if c == group.identity() { Join::top() } else { Join::zero() }).collect();
    let e = FrameMorphism::new(site.clone(), Site::two(), e_images)?;
    let i_images = (0..n).map(|c| Join::generator(group.inv(c))).collect();
    let iota = FrameMorphism::new(site.clone(), site.clone(), i_images)?;
    Ok((site, m, e, iota))
}

/// The localic group `lAut(F)` with its structure maps on generators.
#[derive(Clone, Debug)]
pub struct LAut {
    pub nat: NatLocale,
    pub m: FrameMorphism,
    pub e: FrameMorphism,
    pub iota: FrameMorphism,
}

pub fn laut_f(cat: &FiniteCategory, f: &FunctorData) -> Result<LAut> {
    let nat = NatLocale::new(Kind::Bijections, cat, f, f)?;
    let off = nat.generator_count();
    let mut m_images = Vec::with_capacity(off);
    let mut e_images = Vec::with_capacity(off);
    let mut i_images = Vec::with_capacity(off);
    for i in 0..off {
        let (x, a, b) = nat.decode(i);
        let terms = (0..f.values[x]).map(|z| GenSet::from_indices([nat.gen(x, a, z), off + nat.gen(x, z, b)])).collect();
        m_images.push(Join { terms });
        e_images.push(if a == b { Join::top() } else { Join::zero() });
        i_images.push(Join::generator(nat.gen(x, b, a)));
    }
    let m = FrameMorphism::new(nat.site.clone(), nat.site.tensor(&nat.site), m_images)?;
    let e = FrameMorphism::new(nat.site.clone(), Site::two(), e_images)?;
    let iota = FrameMorphism::new(nat.site.clone(), nat.site.clone(), i_images)?;
    Ok(LAut { nat, m, e, iota })
}

impl LAut {
    /// `μ*: lAut(FX) -> lAut(F)`, `<a|b> -> #[(X, <a|b>)]`.
    pub fn mu_action(&self, x: usize) -> Result<FrameMorphism> {
        let n = self.nat.f.values[x];
        let w = WraithSite::sized(Kind::Bijections, n, n);
        let images = (0..n * n).map(|k| Join::generator(self.nat.gen(x, k / n, k % n))).collect();
        FrameMorphism::new(w.site, self.nat.site.clone(), images)
    }

    /// Checks `μ_X*[<a|b>] ≤ μ_Y*[<Ff a|Ff b>]` for every arrow, with arrow
    /// maps taken from `maps` (normally the functor's own).
    pub fn verify_action_morphisms(&self, maps: &[Vec<usize>], prover: &Prover) -> Report {
        let cat = &self.nat.cat;
        let f = &self.nat.f;
        let mut r = Report::new("arrows of C act as morphisms of lAut(F)-actions");
        r.engine = prover.describe();
        let mut verdict = Verdict::Pass;
        let mut witness = String::new();
        for (k, arr) in cat.arrows().iter().enumerate() {
            for a in 0..f.values[arr.src] {
                for b in 0..f.values[arr.src] {
                    let lhs = Join::generator(self.nat.gen(arr.src, a, b));
                    let (fa, fb) = (maps[k][a], maps[k][b]);
                    if fa >= f.values[arr.dst] || fb >= f.values[arr.dst] {
                        verdict = Verdict::Fail;
                        witness = format!("arrow {} leaves F({})", arr.name, cat.objects()[arr.dst]);
                        continue;
                    }
                    let rhs = Join::generator(self.nat.gen(arr.dst, fa, fb));
                    let v = prover.leq(&lhs, &rhs);
                    if v != Verdict::Pass && witness.is_empty() {
                        witness = format!("arrow {} at <{a}|{b}>", arr.name);
                    }
                    verdict = verdict.and(v);
                }
            }
        }
        r.check("every arrow is a morphism of actions", verdict, witness);
        r
    }

    /// Validates the structure maps and the action maps.
    pub fn verify(&self, cfg: &EngineConfig) -> Result<Report> {
        let mut r = Report::new("lAut(F) structure");
        let on = Prover::new(&self.nat.site, cfg)?;
        let on2 = Prover::new(self.m.target(), cfg)?;
        r.engine = on.describe();
        let o = self.m.validate(&on2);
        record(&mut r, "m* is a frame map", o.verdict, o.witness);
        let o = self.e.validate(&Prover::new(&Site::two(), cfg)?);
        record(&mut r, "e* is a frame map", o.verdict, o.witness);
        let o = self.iota.validate(&on);
        record(&mut r, "iota* is a frame map", o.verdict, o.witness);
        for x in 0..self.nat.cat.object_count() {
            let o = self.mu_action(x)?.validate(&on);
            record(&mut r, &format!("mu* on {} is a frame map", self.nat.cat.objects()[x]), o.verdict, o.witness);
        }
        r.absorb(self.verify_action_morphisms(&self.nat.f.maps, &on));
        Ok(r)
    }
}

/// `φ: lBij([A,-], [B,-]) -> Iso[B, A]` and its inverse; for non-invertible
/// `a: B -> A` the generator `(A, <id|a>)` must be zero. When `A = B` the
/// structure maps of `lAut([A,-])` are compared with those of `Aut(A)^op`.
pub fn yoneda_auto_verify(cat: &FiniteCategory, a: usize, b: usize, cfg: &EngineConfig) -> Result<Report> {
    let fa = FunctorData::representable(cat, a);
    let fb = FunctorData::representable(cat, b);
    let nat = NatLocale::new(Kind::Bijections, cat, &fa, &fb)?;
    let homs_a: Vec<Vec<usize>> = (0..cat.object_count()).map(|x| cat.hom(a, x)).collect();
    let homs_b: Vec<Vec<usize>> = (0..cat.object_count()).map(|x| cat.hom(b, x)).collect();
    let isos: Vec<usize> = homs_b[a].iter().copied().filter(|&u| cat.is_iso(u)).collect();
    let iso_site = Site::discrete(isos.iter().map(|&u| cat.arrow(u).name.clone()).collect());
    let mut phi_images = Vec::with_capacity(nat.generator_count());
    for i in 0..nat.generator_count() {
        let (x, p, q) = nat.decode(i);
        let (u, v) = (homs_a[x][p], homs_b[x][q]);
        phi_images.push(Join::of_generators((0..isos.len()).filter(|&k| cat.compose(u, isos[k]) == Some(v))));
    }
    let phi = FrameMorphism::new(nat.site.clone(), iso_site.clone(), phi_images)?;
    let id_pos = homs_a[a].iter().position(|&u| u == cat.identity(a)).expect("identity in hom");
    let pos_b = |u: usize| homs_b[a].iter().position(|&w| w == u).expect("arrow in hom");
    let lam_images = isos.iter().map(|&u| Join::generator(nat.gen(a, id_pos, pos_b(u)))).collect();
    let lam = FrameMorphism::new(iso_site.clone(), nat.site.clone(), lam_images)?;
    let on_nat = Prover::new(&nat.site, cfg)?;
    let on_iso = Prover::new(&iso_site, cfg)?;
    let mut r = Report::new(format!("localic Yoneda for isomorphisms {} -> {}", cat.objects()[b], cat.objects()[a]));
    r.engine = on_nat.describe();
    let o = phi.validate(&on_iso);
    record(&mut r, "phi is a frame map", o.verdict, o.witness);
    let o = lam.validate(&on_nat);
    record(&mut r, "lambda is a frame map", o.verdict, o.witness);
    let o = lam.then(&phi)?.equals(&FrameMorphism::identity(&iso_site), &on_iso);
    record(&mut r, "phi lambda = id", o.verdict, o.witness);
    let o = phi.then(&lam)?.equals(&FrameMorphism::identity(&nat.site), &on_nat);
    record(&mut r, "lambda phi = id", o.verdict, o.witness);
    let mut zero = Verdict::Pass;
    let mut zero_w = String::new();
    for &u in homs_b[a].iter().filter(|&&u| !cat.is_iso(u)) {
        let v = on_nat.is_zero(&GenSet::singleton(nat.gen(a, id_pos, pos_b(u))));
        if v != Verdict::Pass && zero_w.is_empty() {
            zero_w = format!("(A,<id|{}>) is not zero", cat.arrow(u).name);
        }
        zero = zero.and(v);
    }
    record(&mut r, "non-isomorphisms give zero", zero, zero_w);
    r.note(format!("|Iso[B, A]| = {}, {} generators", isos.len(), nat.generator_count()));
    if a == b {
        let laut = laut_f(cat, &fa)?;
        let (group, autos) = automorphism_group_op(cat, a)?;
        debug_assert_eq!(autos, isos);
        let (_, mg, eg, ig) = discrete_group_maps(&group)?;
        let on_pair = Prover::new(mg.target(), cfg)?;
        let lhs = laut.m.then(&phi.tensor(&phi))?;
        let o = lhs.equals(&phi.then(&mg)?, &on_pair);
        record(&mut r, "phi carries m* to the multiplication of Aut(A)^op", o.verdict, o.witness);
        let o = laut.e.equals(&phi.then(&eg)?, &Prover::new(&Site::two(), cfg)?);
        record(&mut r, "phi carries e* to the unit", o.verdict, o.witness);
        let o = laut.iota.then(&phi)?.equals(&phi.then(&ig)?, &on_iso);
        record(&mut r, "phi carries iota* to the inverse", o.verdict, o.witness);
        r.note(format!("Aut(A)^op = {} of order {}", group.name(), group.order()));
    }
    Ok(r)
}

fn require_nonempty_values(site: &SiteCategory) -> Result<()> {
    if let Some(x) = site.functor.values.iter().position(|&v| v == 0) {
        return Err(Error::Precondition(format!("F({}) is empty; the site is not atomic", site.category.objects()[x])));
    }
    Ok(())
}

fn atomic_note(r: &mut Report, site: &SiteCategory) {
    let atomic = verify_atomic_site(site);
    r.note(format!("atomic site checker: {}", atomic.verdict()));
}

/// `#[(X, <x0|x1>)] ≠ 0` for every generator, one verdict per generator.
pub fn transitivity_verdicts(nat: &NatLocale, prover: &Prover) -> Vec<Verdict> {
    (0..nat.generator_count()).map(|i| prover.is_zero(&GenSet::singleton(i)).negate()).collect()
}

/// The action of `lAut(F)` on each `FX` is transitive.
pub fn verify_transitivity(site: &SiteCategory, cfg: &EngineConfig) -> Result<Report> {
    require_nonempty_values(site)?;
    let cat = &site.category;
    let nat = NatLocale::new(Kind::Bijections, cat, &site.functor, &site.functor)?;
    let prover = Prover::new(&nat.site, cfg)?;
    let mut r = Report::new("transitivity of lAut(F) on each FX");
    r.engine = prover.describe();
    atomic_note(&mut r, site);
    let verdicts = transitivity_verdicts(&nat, &prover);
    let mut undecided = Vec::new();
    for x in 0..cat.object_count() {
        let mut v = Verdict::Pass;
        let mut witness = String::new();
        for i in (0..nat.generator_count()).filter(|&i| nat.decode(i).0 == x) {
            if verdicts[i] == Verdict::Fail && witness.is_empty() {
                witness = format!("{} is zero", nat.site.generator_name(i));
            }
            if verdicts[i] == Verdict::Undecided {
                undecided.push(nat.site.generator_name(i).to_string());
            }
            v = v.and(verdicts[i]);
        }
        r.check(format!("transitive on F({})", cat.objects()[x]), v, witness);
    }
    if let Some(objs) = &site.gsets {
        let mut disagree = Vec::new();
        for (i, &v) in verdicts.iter().enumerate() {
            let (x, a, b) = nat.decode(i);
            let oracle = objs[x].transporter(a, b) != 0;
            if v != Verdict::Undecided && v.is_pass() != oracle {
                disagree.push(nat.site.generator_name(i).to_string());
            }
        }
        r.check("agrees with the group action", disagree.is_empty(), disagree.join(", "));
    }
    if !undecided.is_empty() {
        r.note(format!("undecided within budget: {}", undecided.join(", ")));
    }
    r.note(format!("{} generators", nat.generator_count()));
    Ok(r)
}

/// `#[p] ≤ #[q]` for every ordered pair of generators, row-major.
pub fn lifting_verdicts(nat: &NatLocale, prover: &Prover) -> Vec<Verdict> {
    let n = nat.generator_count();
    let mut out = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            out.push(prover.entails(&GenSet::singleton(p), &[GenSet::singleton(q)]));
        }
    }
    out
}

fn lifting_arrows(nat: &NatLocale, p: usize, q: usize) -> usize {
    let cat = &nat.cat;
    let f = &nat.f;
    let (x, x0, x1) = nat.decode(p);
    let (y, y0, y1) = nat.decode(q);
    cat.hom(x, y).into_iter().filter(|&k| f.maps[k][x0] == y0 && f.maps[k][x1] == y1).count()
}

/// `#[(X,<x0|x1>)] ≤ #[(Y,<y0|y1>)]` holds iff an arrow carries `(x0, x1)`
/// to `(y0, y1)`; between stabilizers the arrow is unique.
pub fn verify_lifting(site: &SiteCategory, cfg: &EngineConfig) -> Result<Report> {
    require_nonempty_values(site)?;
    let nat = NatLocale::new(Kind::Bijections, &site.category, &site.functor, &site.functor)?;
    let prover = Prover::new(&nat.site, cfg)?;
    let mut r = Report::new("lifting of frame inequalities to arrows");
    r.engine = prover.describe();
    atomic_note(&mut r, site);
    let n = nat.generator_count();
    let verdicts = lifting_verdicts(&nat, &prover);
    let mut forward = (Verdict::Pass, String::new());
    let mut backward = (Verdict::Pass, String::new());
    let mut unique = (Verdict::Pass, String::new());
    let mut undecided = 0usize;
    for p in 0..n {
        for q in 0..n {
            let v = verdicts[p * n + q];
            let arrows = lifting_arrows(&nat, p, q);
            let name = || format!("{} vs {}", nat.site.generator_name(p), nat.site.generator_name(q));
            match v {
                Verdict::Undecided => {
                    undecided += 1;
                    forward.0 = forward.0.and(Verdict::Undecided);
                }
                Verdict::Pass if arrows == 0 => {
                    forward.0 = Verdict::Fail;
                    if forward.1.is_empty() {
                        forward.1 = format!("{}: below but no arrow", name());
                    }
                }
                Verdict::Fail if arrows > 0 => {
                    backward.0 = Verdict::Fail;
                    if backward.1.is_empty() {
                        backward.1 = format!("{}: an arrow exists but not below", name());
                    }
                }
                _ => {}
            }
            let (_, x0, x1) = nat.decode(p);
            let (_, y0, y1) = nat.decode(q);
            if x0 == x1 && y0 == y1 && v == Verdict::Pass && arrows != 1 {
                unique.0 = Verdict::Fail;
                if unique.1.is_empty() {
                    unique.1 = format!("{}: {arrows} arrows", name());
                }
            }
        }
    }
    r.check("frame order implies an arrow", forward.0, forward.1);
    r.check("an arrow implies frame order", backward.0, backward.1);
    r.check("lFix(x) <= lFix(y) gives a unique arrow", unique.0, unique.1);
    if undecided > 0 {
        r.note(format!("{undecided} comparisons undecided within budget"));
    }
    r.note(format!("{} generators, {} comparisons", n, n * n));
    Ok(r)
}

/// Runs transitivity and lifting with both engines and compares verdicts.
pub fn engine_agreement(site: &SiteCategory, budget: u64) -> Result<Report> {
    require_nonempty_values(site)?;
    let nat = NatLocale::new(Kind::Bijections, &site.category, &site.functor, &site.functor)?;
    let full = Prover::new(&nat.site, &EngineConfig::full())?;
    let lazy = Prover::new(&nat.site, &EngineConfig { budget, ..EngineConfig::lazy() })?;
    let mut r = Report::new("full and lazy engines agree");
    r.engine = "full and lazy".into();
    for (name, a, b) in [
        ("transitivity", transitivity_verdicts(&nat, &full), transitivity_verdicts(&nat, &lazy)),
        ("lifting", lifting_verdicts(&nat, &full), lifting_verdicts(&nat, &lazy)),
    ] {
        let undecided = b.iter().filter(|&&v| v == Verdict::Undecided).count();
        let disagree = a.iter().zip(&b).filter(|(x, y)| **y != Verdict::Undecided && x != y).count();
        r.check(format!("{name}: no disagreements"), disagree == 0, format!("{disagree} of {}", a.len()));
        r.check(format!("{name}: lazy engine decides every query"), undecided == 0, format!("{undecided} undecided"));
    }
    Ok(r)
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl CatFunctor {
    pub fn new(src: &FiniteCategory, dst: &FiniteCategory, objects: Vec<usize>, arrows: Vec<usize>) -> Result<Self> {
        if objects.len() != src.object_count() || arrows.len() != src.arrows().len() {
            return Err(Error::Validation("functor tables have the wrong length".into()));
        }
        for (k, a) in src.arrows().iter().enumerate() {
            let t = dst.arrow(arrows[k]);
            if t.src != objects[a.src] || t.dst != objects[a.dst] {
                return Err(Error::Validation(format!("arrow {} is sent outside its hom-set", a.name)));
            }
        }
        for o in 0..src.object_count() {
            if arrows[src.identity(o)] != dst.identity(objects[o]) {
                return Err(Error::Validation(format!("identity of {} is not preserved", src.objects()[o])));
            }
        }
        for g in 0..src.arrows().len() {
            for f in 0..src.arrows().len() {
                if let Some(h) = src.compose(g, f) {
                    if dst.compose(arrows[g], arrows[f]) != Some(arrows[h]) {
                        return Err(Error::Validation(format!("composite {} o {} not preserved", src.arrow(g).name, src.arrow(f).name)));
                    }
                }
            }
        }
        Ok(CatFunctor { objects, arrows })
    }

    /// The inclusion of a full subcategory given by `full_subcategory`.
    pub fn inclusion(src: &FiniteCategory, dst: &FiniteCategory, keep: &[usize], old_arrows: Vec<usize>) -> Result<Self> {
        CatFunctor::new(src, dst, keep.to_vec(), old_arrows)
    }

    pub fn then(&self, next: &CatFunctor) -> CatFunctor {
        CatFunctor {
            objects: self.objects.iter().map(|&o| next.objects[o]).collect(),
            arrows: self.arrows.iter().map(|&a| next.arrows[a]).collect(),
        }
    }
}

/// `aut(T)*: lAut(F) -> lAut(G)` on frames (a locale map `lAut(G) -> lAut(F)`)
/// for `T: C -> D` and a natural isomorphism `θ: F => G T`.
pub fn aut_transition(
    c: &FiniteCategory,
    f: &FunctorData,
    d: &FiniteCategory,
    g: &FunctorData,
    t: &CatFunctor,
    theta: &[Vec<usize>],
) -> Result<FrameMorphism> {
    for x in 0..c.object_count() {
        let th = &theta[x];
        let tx = t.objects[x];
        if th.len() != f.values[x] || g.values[tx] != f.values[x] || !crate::gset::is_bijective(th, g.values[tx]) {
            return Err(Error::Validation(format!("theta at {} is not a bijection", c.objects()[x])));
        }
    }
    for (k, arr) in c.arrows().iter().enumerate() {
        for a in 0..f.values[arr.src] {
            if theta[arr.dst][f.maps[k][a]] != g.maps[t.arrows[k]][theta[arr.src][a]] {
                return Err(Error::Validation(format!("theta is not natural at {} on element {a}", arr.name)));
            }
        }
    }
    let src = NatLocale::new(Kind::Bijections, c, f, f)?;
    let dst = NatLocale::new(Kind::Bijections, d, g, g)?;
    let images = (0..src.generator_count())
        .map(|i| {
            let (x, a, b) = src.decode(i);
            Join::generator(dst.gen(t.objects[x], theta[x][a], theta[x][b]))
        })
        .collect();
    FrameMorphism::new(src.site, dst.site, images)
}

/// The map on points induced by a frame map whose images are single
/// generators or constants.
pub fn map_points(m: &FrameMorphism, point: &GenSet) -> GenSet {
    (0..m.source().generator_count()).filter(|&i| m.image(i).terms.iter().any(|t| t.is_subset(point))).collect()
}

fn identity_theta(f: &FunctorData) -> Vec<Vec<usize>> {
    f.values.iter().map(|&n| (0..n).collect()).collect()
}

/// For nested full subcategories `small ⊆ large` of `site`, the transition
/// `lAut(F|large) -> lAut(F|small)` is validated and checked surjective on
/// points.
pub fn verify_inclusion_transition(site: &SiteCategory, small: &[usize], large: &[usize], cfg: &EngineConfig) -> Result<Report> {
    if !small.iter().all(|o| large.contains(o)) {
        return Err(Error::Precondition("the smaller object set is not contained in the larger".into()));
    }
    let (s, t) = (site.restrict(small), site.restrict(large));
    let pos: Vec<usize> = small.iter().map(|o| large.iter().position(|p| p == o).expect("contained")).collect();
    let (_, arrows) = t.category.full_subcategory(&pos);
    let inc = CatFunctor::new(&s.category, &t.category, pos, arrows)?;
    let m = aut_transition(&s.category, &s.functor, &t.category, &t.functor, &inc, &identity_theta(&s.functor))?;
    let mut r = Report::new("transition along an inclusion of subcategories");
    let prover = Prover::new(m.target(), cfg)?;
    r.engine = prover.describe();
    let o = m.validate(&prover);
    record(&mut r, "aut(T)* is a frame map", o.verdict, o.witness);
    let big_points = enumerate_points(m.target())?;
    let small_points = enumerate_points(m.source())?;
    let mut hit: Vec<GenSet> = big_points.iter().map(|p| map_points(&m, p)).collect();
    hit.sort();
    hit.dedup();
    let lands = hit.iter().all(|p| small_points.contains(p));
    r.check("points map to points", lands, "");
    r.check(
        "surjective on points",
        lands && hit.len() == small_points.len(),
        format!("{} points onto {}", big_points.len(), small_points.len()),
    );
    Ok(r)
}

/// `aut(S)* ∘ aut(R)* = aut(R S)*` for a chain of three nested subcategories
/// (as frame maps, `aut` of the composite equals the composite of `aut`s).
pub fn verify_transition_functoriality(site: &SiteCategory, chain: [&[usize]; 3], cfg: &EngineConfig) -> Result<Report> {
    let subs: Vec<SiteCategory> = chain.iter().map(|k| site.restrict(k)).collect();
    let inc = |i: usize, j: usize| -> Result<CatFunctor> {
        let pos: Vec<usize> = chain[i].iter().map(|o| chain[j].iter().position(|p| p == o)).collect::<Option<_>>().ok_or_else(|| {
            Error::Precondition("subcategories are not nested".into())
        })?;
        let (_, arrows) = subs[j].category.full_subcategory(&pos);
        CatFunctor::new(&subs[i].category, &subs[j].category, pos, arrows)
    };
    let (r01, r12) = (inc(0, 1)?, inc(1, 2)?);
    let r02 = r01.then(&r12);
    let tr = |i: usize, j: usize, t: &CatFunctor| {
        aut_transition(&subs[i].category, &subs[i].functor, &subs[j].category, &subs[j].functor, t, &identity_theta(&subs[i].functor))
    };
    let composite = tr(0, 1, &r01)?.then(&tr(1, 2, &r12)?)?;
    let direct = tr(0, 2, &r02)?;
    let prover = Prover::new(direct.target(), cfg)?;
    let mut r = Report::new("transitions compose");
    r.engine = prover.describe();
    let o = composite.equals(&direct, &prover);
    record(&mut r, "aut of the composite inclusion is the composite of the auts", o.verdict, o.witness);
    Ok(r)
}

/// For a chain of full subcategories `C_1 ⊆ ... ⊆ C_n`, checks that the
/// base preorders embed, that the last stage is the union, and that its
/// covers are generated by the stage covers.
pub fn colimit_inflattices(site: &SiteCategory, stages: &[Vec<usize>], seed: u64) -> Result<Report> {
    if stages.is_empty() {
        return Err(Error::Precondition("no stages".into()));
    }
    let subs: Vec<SiteCategory> = stages.iter().map(|k| site.restrict(k)).collect();
    let nats: Vec<NatLocale> = subs
        .iter()
        .map(|s| NatLocale::new(Kind::Bijections, &s.category, &s.functor, &s.functor))
        .collect::<Result<_>>()?;
    let last = nats.last().expect("non-empty");
    let index: HashMap<&str, usize> = last.site.base().names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut r = Report::new(format!("colimit of {} inf-lattices", stages.len()));
    r.engine = "exhaustive".into();
    let mut nested = true;
    for w in stages.windows(2) {
        nested &= w[0].iter().all(|o| w[1].contains(o));
    }
    r.check("stages are nested", nested, "");
    let mut embed = String::new();
    let mut covers_ok = String::new();
    let mut covered = vec![false; last.generator_count()];
    let mut pushed = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (s, nat) in nats.iter().enumerate() {
        let map: Vec<usize> = nat.site.base().names().iter().map(|n| index[n.as_str()]).collect();
        for &m in &map {
            covered[m] = true;
        }
        for (p, q) in (0..map.len()).flat_map(|p| (0..map.len()).map(move |q| (p, q))) {
            if nat.site.base().leq(p, q) != last.site.base().leq(map[p], map[q]) && embed.is_empty() {
                embed = format!("stage {}: order between {} and {} changes", s + 1, nat.site.generator_name(p), nat.site.generator_name(q));
            }
        }
        for _ in 0..100 {
            let pick = |rng: &mut ChaCha8Rng| -> GenSet { (0..map.len()).filter(|_| rng.gen_bool(0.3)).collect() };
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            let lift = |x: &GenSet| -> GenSet { x.iter().map(|i| map[i]).collect() };
            if free_leq(&a, &b, nat.site.base()) != free_leq(&lift(&a), &lift(&b), last.site.base()) && embed.is_empty() {
                embed = format!("stage {}: the free inf-lattice does not embed", s + 1);
            }
        }
        for c in nat.site.covers() {
            pushed.push(Cover {
                target: c.target.iter().map(|i| map[i]).collect(),
                family: c.family.iter().map(|f| f.iter().map(|i| map[i]).collect()).collect(),
            });
        }
    }
    let generated = Site::new(last.site.base().clone(), pushed)?;
    let mut a: Vec<&Cover> = generated.covers().iter().collect();
    let mut b: Vec<&Cover> = last.site.covers().iter().collect();
    a.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
    b.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
    if a != b {
        covers_ok = format!("{} stage covers against {} covers in the union", a.len(), b.len());
    }
    r.check("each stage embeds in the union (order and sampled meets)", embed.is_empty(), embed);
    r.check("the union is covered by the stages", covered.iter().all(|&c| c), "");
    r.check("covers of the union are generated by the stage covers", covers_ok.is_empty(), covers_ok);
    for (s, nat) in nats.iter().enumerate() {
        r.note(format!("stage {}: {} generators", s + 1, nat.generator_count()));
    }
    Ok(r)
}
