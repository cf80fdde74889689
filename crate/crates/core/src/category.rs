//! Finite categories, set-valued functors, and sites built from G-sets.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::gset::{is_surjective, GSet};
use crate::order::Preorder;
use crate::report::Report;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    /// `compose[g][f] = g ∘ f` when `dst f = src g`.
    compose: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: Vec<usize>,
    /// Triples `[g, f, g∘f]`.
    pub compose: Vec<[usize; 3]>,
}

impl FiniteCategory {
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, identities: Vec<usize>, triples: &[[usize; 3]]) -> Result<Self> {
        let n = arrows.len();
        let loc = |what: &str| Error::input("category", what.to_string());
        for a in &arrows {
            if a.src >= objects.len() || a.dst >= objects.len() {
                return Err(loc(&format!("arrow {} has an endpoint out of range", a.name)));
            }
        }
        if identities.len() != objects.len() {
            return Err(loc("one identity per object is required"));
        }
        for (o, &i) in identities.iter().enumerate() {
            if i >= n || arrows[i].src != o || arrows[i].dst != o {
                return Err(loc(&format!("identity of object {} is not an endomorphism of it", objects[o])));
            }
        }
        let mut compose = vec![vec![None; n]; n];
        for (k, &[g, f, h]) in triples.iter().enumerate() {
            if g >= n || f >= n || h >= n {
                return Err(Error::input(format!("compose[{k}]"), "arrow index out of range"));
            }
            if arrows[f].dst != arrows[g].src || arrows[h].src != arrows[f].src || arrows[h].dst != arrows[g].dst {
                return Err(Error::input(format!("compose[{k}]"), "endpoints do not match"));
            }
            if compose[g][f].is_some_and(|old| old != h) {
                return Err(Error::input(format!("compose[{k}]"), "composite given twice with different values"));
            }
            compose[g][f] = Some(h);
        }
        for (o, &i) in identities.iter().enumerate() {
            for (f, a) in arrows.iter().enumerate() {
                if a.dst == o && compose[i][f].is_none() {
                    compose[i][f] = Some(f);
                }
                if a.src == o && compose[f][i].is_none() {
                    compose[f][i] = Some(f);
                }
            }
        }
        let cat = FiniteCategory { objects, arrows, identities, compose };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        let n = self.arrows.len();
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[f].dst == self.arrows[g].src;
                if composable != self.compose[g][f].is_some() {
                    return Err(Error::input(
                        "category",
                        format!("composite of {} after {} is missing", self.arrows[g].name, self.arrows[f].name),
                    ));
                }
            }
        }
        for (o, &i) in self.identities.iter().enumerate() {
            for f in 0..n {
                if self.arrows[f].dst == o && self.compose[i][f] != Some(f) || self.arrows[f].src == o && self.compose[f][i] != Some(f) {
                    return Err(Error::input("category", format!("identity law fails for {}", self.arrows[f].name)));
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                let Some(hg) = self.compose[h][g] else { continue };
                for f in 0..n {
                    let Some(gf) = self.compose[g][f] else { continue };
                    if self.compose[hg][f] != self.compose[h][gf] {
                        return Err(Error::input("category", "composition is not associative"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(doc: &CategoryJson) -> Result<Self> {
        FiniteCategory::new(doc.objects.clone(), doc.arrows.clone(), doc.identities.clone(), &doc.compose)
    }

    pub fn to_json(&self) -> CategoryJson {
        let mut compose = Vec::new();
        for g in 0..self.arrows.len() {
            for f in 0..self.arrows.len() {
                if let Some(h) = self.compose[g][f] {
                    compose.push([g, f, h]);
                }
            }
        }
        CategoryJson { objects: self.objects.clone(), arrows: self.arrows.clone(), identities: self.identities.clone(), compose }
    }

    /// Equal up to the names of objects and arrows.
    pub fn same_shape(&self, other: &FiniteCategory) -> bool {
        self.objects.len() == other.objects.len()
            && self.identities == other.identities
            && self.compose == other.compose
            && self.arrows.iter().zip(&other.arrows).all(|(a, b)| a.src == b.src && a.dst == b.dst)
            && self.arrows.len() == other.arrows.len()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].src == x && self.arrows[f].dst == y).collect()
    }

    pub fn is_iso(&self, f: usize) -> bool {
        let a = &self.arrows[f];
        self.hom(a.dst, a.src).into_iter().any(|g| {
            self.compose[g][f] == Some(self.identities[a.src]) && self.compose[f][g] == Some(self.identities[a.dst])
        })
    }

    /// Full subcategory on the listed objects (in the given order).
    pub fn full_subcategory(&self, keep: &[usize]) -> (FiniteCategory, Vec<usize>) {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let old: Vec<usize> = (0..self.arrows.len()).filter(|&f| pos.contains_key(&self.arrows[f].src) && pos.contains_key(&self.arrows[f].dst)).collect();
        let new_of: HashMap<usize, usize> = old.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let arrows = old
            .iter()
            .map(|&f| Arrow { name: self.arrows[f].name.clone(), src: pos[&self.arrows[f].src], dst: pos[&self.arrows[f].dst] })
            .collect();
        let compose = old.iter().map(|&g| old.iter().map(|&f| self.compose[g][f].map(|h| new_of[&h])).collect()).collect();
        let cat = FiniteCategory {
            objects: keep.iter().map(|&o| self.objects[o].clone()).collect(),
            arrows,
            identities: keep.iter().map(|&o| new_of[&self.identities[o]]).collect(),
            compose,
        };
        (cat, old)
    }
}

/// A functor into finite sets: the size of each value and the map of each arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    pub values: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub category: CategoryJson,
    pub values: Vec<usize>,
    pub arrow_maps: Vec<Vec<usize>>,
}

impl FunctorData {
    pub fn new(cat: &FiniteCategory, values: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self> {
        let f = FunctorData { values, maps };
        if let Some(problem) = f.problem(cat) {
            return Err(Error::Validation(problem));
        }
        Ok(f)
    }

    /// Describes the first failure of functoriality, if any.
    pub fn problem(&self, cat: &FiniteCategory) -> Option<String> {
        if self.values.len() != cat.object_count() || self.maps.len() != cat.arrows().len() {
            return Some("value or arrow table has the wrong length".into());
        }
        for (f, a) in cat.arrows().iter().enumerate() {
            if self.maps[f].len() != self.values[a.src] || self.maps[f].iter().any(|&v| v >= self.values[a.dst]) {
                return Some(format!("arrow {} is not sent to a function between its values", a.name));
            }
        }
        for o in 0..cat.object_count() {
            let i = cat.identity(o);
            if self.maps[i].iter().enumerate().any(|(x, &y)| x != y) {
                return Some(format!("identity of {} is not sent to an identity", cat.objects()[o]));
            }
        }
        for g in 0..cat.arrows().len() {
            for f in 0..cat.arrows().len() {
                if let Some(h) = cat.compose(g, f) {
                    if (0..self.values[cat.arrow(f).src]).any(|x| self.maps[h][x] != self.maps[g][self.maps[f][x]]) {
                        return Some(format!("composite {} after {} is not preserved", cat.arrow(g).name, cat.arrow(f).name));
                    }
                }
            }
        }
        None
    }

    pub fn from_json(doc: &FunctorJson) -> Result<(FiniteCategory, Self)> {
        let cat = FiniteCategory::from_json(&doc.category)?;
        let f = FunctorData::new(&cat, doc.values.clone(), doc.arrow_maps.clone()).map_err(|e| Error::input("arrow_maps", e.to_string()))?;
        Ok((cat, f))
    }

    pub fn to_json(&self, cat: &FiniteCategory) -> FunctorJson {
        FunctorJson { category: cat.to_json(), values: self.values.clone(), arrow_maps: self.maps.clone() }
    }

    /// The representable functor `[a, -]`; the value at `x` lists `hom(a, x)`
    /// in arrow order.
    pub fn representable(cat: &FiniteCategory, a: usize) -> Self {
        let homs: Vec<Vec<usize>> = (0..cat.object_count()).map(|x| cat.hom(a, x)).collect();
        let values = homs.iter().map(|h| h.len()).collect();
        let maps = cat
            .arrows()
            .iter()
            .enumerate()
            .map(|(f, arr)| {
                homs[arr.src]
                    .iter()
                    .map(|&g| {
                        let fg = cat.compose(f, g).expect("composable");
                        homs[arr.dst].iter().position(|&h| h == fg).expect("composite lies in the hom-set")
                    })
                    .collect()
            })
            .collect();
        FunctorData { values, maps }
    }

    pub fn constant(cat: &FiniteCategory, n: usize) -> Self {
        FunctorData { values: vec![n; cat.object_count()], maps: vec![(0..n).collect(); cat.arrows().len()] }
    }
}

/// A finite category with a set-valued functor `F`, optionally realized by
/// G-sets (then arrows are equivariant maps and `F` is the underlying set).
#[derive(Clone, Debug)]
pub struct SiteCategory {
    pub category: FiniteCategory,
    pub functor: FunctorData,
    pub gsets: Option<Vec<GSet>>,
}

impl SiteCategory {
    pub fn abstract_site(category: FiniteCategory, functor: FunctorData) -> Result<Self> {
        if let Some(p) = functor.problem(&category) {
            return Err(Error::Validation(p));
        }
        Ok(SiteCategory { category, functor, gsets: None })
    }

    /// The full subcategory of G-sets on `objects`, with every equivariant map.
    pub fn from_gsets(objects: Vec<GSet>) -> Result<Self> {
        let mut arrows = Vec::new();
        let mut maps = Vec::new();
        let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                for (k, m) in x.homs(y)?.into_iter().enumerate() {
                    index.insert((i, j, m.clone()), arrows.len());
                    arrows.push(Arrow { name: format!("{}->{}#{k}", x.name(), y.name()), src: i, dst: j });
                    maps.push(m);
                }
            }
        }
        let identities = (0..objects.len()).map(|i| index[&(i, i, (0..objects[i].len()).collect::<Vec<_>>())]).collect();
        let mut triples = Vec::new();
        for g in 0..arrows.len() {
            for f in 0..arrows.len() {
                if arrows[f].dst == arrows[g].src {
                    let m: Vec<usize> = maps[f].iter().map(|&x| maps[g][x]).collect();
                    triples.push([g, f, index[&(arrows[f].src, arrows[g].dst, m)]]);
                }
            }
        }
        let names = objects.iter().map(|x| x.name().to_string()).collect();
        let category = FiniteCategory::new(names, arrows, identities, &triples)?;
        let functor = FunctorData { values: objects.iter().map(|x| x.len()).collect(), maps };
        Ok(SiteCategory { category, functor, gsets: Some(objects) })
    }

    pub fn object_count(&self) -> usize {
        self.category.object_count()
    }

    /// Full subcategory on the listed objects, keeping `F`.
    pub fn restrict(&self, keep: &[usize]) -> SiteCategory {
        let (category, old) = self.category.full_subcategory(keep);
        let functor = FunctorData {
            values: keep.iter().map(|&o| self.functor.values[o]).collect(),
            maps: old.iter().map(|&f| self.functor.maps[f].clone()).collect(),
        };
        let gsets = self.gsets.as_ref().map(|g| keep.iter().map(|&o| g[o].clone()).collect());
        SiteCategory { category, functor, gsets }
    }
}

/// One representative `G/H` per conjugacy class of subgroups, ordered by
/// size, with all equivariant maps between them.
pub fn transitive_representatives(group: &Arc<FiniteGroup>) -> Result<Vec<GSet>> {
    let mut out = Vec::new();
    for class in group.subgroup_classes()? {
        out.push(GSet::cosets(group.clone(), class[0])?);
    }
    Ok(out)
}

pub fn build_tbg_site(group: &Arc<FiniteGroup>, max_order: usize) -> Result<SiteCategory> {
    if group.order() > max_order {
        return Err(Error::capacity(format!("group {}", group.name()), group.order(), max_order));
    }
    SiteCategory::from_gsets(transitive_representatives(group)?)
}

/// The category of elements of `F` and its poset collapse.
#[derive(Clone, Debug)]
pub struct Diagram {
    /// `(object, element)` pairs.
    pub nodes: Vec<(usize, usize)>,
    /// `(from, to, arrow of C)`.
    pub edges: Vec<(usize, usize, usize)>,
    pub order: Preorder,
}

impl Diagram {
    pub fn node(&self, o: usize, x: usize) -> Option<usize> {
        self.nodes.iter().position(|&n| n == (o, x))
    }

    pub fn arrows_between(&self, p: usize, q: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == p && e.1 == q).map(|e| e.2).collect()
    }

    pub fn is_poset(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|e| seen.insert((e.0, e.1)))
    }

    /// Nodes with exactly one arrow to every node.
    pub fn initial_objects(&self) -> Vec<usize> {
        let n = self.nodes.len();
        (0..n)
            .filter(|&p| {
                let mut count = vec![0usize; n];
                for e in self.edges.iter().filter(|e| e.0 == p) {
                    count[e.1] += 1;
                }
                count.iter().all(|&c| c == 1)
            })
            .collect()
    }

    /// Cofilteredness of the category of elements; the error describes a
    /// witness of failure.
    pub fn cofiltered(&self, cat: &FiniteCategory) -> std::result::Result<(), String> {
        let n = self.nodes.len();
        if n == 0 {
            return Err("the diagram is empty".into());
        }
        for p in 0..n {
            for q in p + 1..n {
                if !(0..n).any(|r| self.order.leq(r, p) && self.order.leq(r, q)) {
                    return Err(format!("no object maps to both {} and {}", self.describe(cat, p), self.describe(cat, q)));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                let par = self.arrows_between(p, q);
                for (i, &u) in par.iter().enumerate() {
                    for &v in &par[i + 1..] {
                        let equalized = self.edges.iter().filter(|e| e.1 == p).any(|e| cat.compose(u, e.2) == cat.compose(v, e.2));
                        if !equalized {
                            return Err(format!(
                                "arrows {} and {} out of {} are not equalized",
                                cat.arrow(u).name,
                                cat.arrow(v).name,
                                self.describe(cat, p)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Cofilteredness of the poset collapse alone.
    pub fn poset_cofiltered(&self) -> bool {
        let n = self.nodes.len();
        n > 0 && (0..n).all(|p| (0..n).all(|q| (0..n).any(|r| self.order.leq(r, p) && self.order.leq(r, q))))
    }

    pub fn describe(&self, cat: &FiniteCategory, p: usize) -> String {
        let (o, x) = self.nodes[p];
        format!("({}, {x})", cat.objects()[o])
    }
}

pub fn diagram_of(cat: &FiniteCategory, f: &FunctorData) -> Diagram {
    let mut nodes = Vec::new();
    for o in 0..cat.object_count() {
        for x in 0..f.values[o] {
            nodes.push((o, x));
        }
    }
    let pos: HashMap<(usize, usize), usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut edges = Vec::new();
    let mut pairs = Vec::new();
    for (a, arr) in cat.arrows().iter().enumerate() {
        for x in 0..f.values[arr.src] {
            let p = pos[&(arr.src, x)];
            let q = pos[&(arr.dst, f.maps[a][x])];
            edges.push((p, q, a));
            pairs.push([p, q]);
        }
    }
    let names = nodes.iter().map(|&(o, x)| format!("({},{x})", cat.objects()[o])).collect();
    let (order, _) = Preorder::closure_of(names, &pairs).expect("indices are in range");
    Diagram { nodes, edges, order }
}

/// Checks the atomic-site axioms and the structural facts that follow from
/// them. "Strict epimorphism" is read as surjectivity of the underlying map
/// for G-set sites and as right-cancellability otherwise.
pub fn verify_atomic_site(site: &SiteCategory) -> Report {
    let cat = &site.category;
    let f = &site.functor;
    let mut r = Report::new("atomic site axioms");
    r.engine = "exhaustive".into();

    let mut w = String::new();
    for (a, arr) in cat.arrows().iter().enumerate() {
        let ok = match &site.gsets {
            Some(objs) => is_surjective(&f.maps[a], objs[arr.dst].len()),
            None => is_epi(cat, a),
        };
        if !ok {
            w = format!("arrow {} is not a strict epimorphism", arr.name);
            break;
        }
    }
    r.check("(i) every arrow is a strict epimorphism", w.is_empty(), w);

    let empty = (0..cat.object_count()).find(|&o| f.values[o] == 0);
    r.check("(ii) F is non-empty on every object", empty.is_none(), empty.map(|o| format!("F({}) is empty", cat.objects()[o])).unwrap_or_default());

    let bad = (0..cat.arrows().len()).find(|&a| !is_surjective(&f.maps[a], f.values[cat.arrow(a).dst]));
    r.check(
        "(iii) F sends arrows to surjections",
        bad.is_none(),
        bad.map(|a| format!("F({}) is not surjective", cat.arrow(a).name)).unwrap_or_default(),
    );

    let d = diagram_of(cat, f);
    let cof = d.cofiltered(cat);
    r.check("(iv) the diagram of F is cofiltered", cof.is_ok(), cof.err().unwrap_or_default());
    r.check("the diagram of F is a poset", d.is_poset(), "");
    r.check("the poset collapse of the diagram is cofiltered", d.poset_cofiltered(), "");

    let mut faithful = String::new();
    for x in 0..cat.object_count() {
        for y in 0..cat.object_count() {
            let hom = cat.hom(x, y);
            for (i, &u) in hom.iter().enumerate() {
                if let Some(&v) = hom[i + 1..].iter().find(|&&v| f.maps[v] == f.maps[u]) {
                    faithful = format!("{} and {} have the same image", cat.arrow(u).name, cat.arrow(v).name);
                }
            }
        }
    }
    r.check("F is faithful", faithful.is_empty(), faithful);
    let refl = (0..cat.arrows().len()).find(|&a| {
        let arr = cat.arrow(a);
        f.values[arr.src] == f.values[arr.dst] && crate::gset::is_bijective(&f.maps[a], f.values[arr.dst]) && !cat.is_iso(a)
    });
    r.check(
        "F reflects isomorphisms",
        refl.is_none(),
        refl.map(|a| format!("F({}) is bijective but the arrow is not invertible", cat.arrow(a).name)).unwrap_or_default(),
    );
    let init = d.initial_objects();
    r.note(match init.first() {
        Some(&p) => format!("the diagram of F has an initial object {}", d.describe(cat, p)),
        None => "the diagram of F has no initial object".to_string(),
    });
    if site.gsets.is_some() {
        r.note("strict epimorphisms are checked as surjective equivariant maps");
    }
    r
}

fn is_epi(cat: &FiniteCategory, f: usize) -> bool {
    let arr = cat.arrow(f);
    (0..cat.object_count()).all(|z| {
        let hom = cat.hom(arr.dst, z);
        hom.iter().enumerate().all(|(i, &g)| hom[i + 1..].iter().all(|&h| cat.compose(g, f) != cat.compose(h, f)))
    })
}
