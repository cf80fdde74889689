//! Galois objects among finite G-sets, Galois closures, split subcategories
//! and the discrete fundamental theorem.

use crate::category::{build_tbg_site, diagram_of, transitive_representatives, FiniteCategory, SiteCategory};
use crate::error::{Error, Result};
use crate::group::{elems, ElemSet, FiniteGroup};
use crate::gset::{is_bijective, GSet};
use crate::report::Report;
use std::collections::HashMap;
use std::sync::Arc;

/// Evidence for (or against) an object being Galois.
#[derive(Clone, Debug)]
pub struct GaloisCertificate {
    pub object: GSet,
    pub is_galois: bool,
    pub reason: String,
    /// Automorphisms as maps on the carrier.
    pub automorphisms: Vec<Vec<usize>>,
    /// `(x, h) -> (x, h(x))`, indexed `[x][h]`.
    pub torsor_table: Vec<Vec<(usize, usize)>>,
    pub torsor_bijective: bool,
    pub base_point: usize,
    /// `h -> h(a)` for the base point `a`.
    pub astar: Vec<usize>,
    pub astar_bijective: bool,
}

pub fn is_galois(x: &GSet) -> Result<GaloisCertificate> {
    if x.is_empty() {
        return Err(Error::Precondition("a Galois object must be non-empty".into()));
    }
    let automorphisms = x.automorphisms();
    let n = x.len();
    let torsor_table: Vec<Vec<(usize, usize)>> = (0..n).map(|p| automorphisms.iter().map(|h| (p, h[p])).collect()).collect();
    let mut images: Vec<(usize, usize)> = torsor_table.iter().flatten().copied().collect();
    images.sort_unstable();
    images.dedup();
    let torsor_bijective = automorphisms.len() == n && images.len() == n * n;
    let astar: Vec<usize> = automorphisms.iter().map(|h| h[0]).collect();
    let astar_bijective = is_bijective(&astar, n);
    let connected = x.is_transitive();
    let (is_galois, reason) = if !connected {
        (false, format!("not connected ({} orbits)", x.orbits().len()))
    } else if automorphisms.len() != n {
        (false, format!("|Aut|={} but |X|={}", automorphisms.len(), n))
    } else if !torsor_bijective {
        (false, "the torsor map is not bijective".to_string())
    } else {
        (true, format!("|Aut|={} = |X|, torsor map bijective", automorphisms.len()))
    };
    Ok(GaloisCertificate {
        object: x.clone(),
        is_galois,
        reason,
        automorphisms,
        torsor_table,
        torsor_bijective,
        base_point: 0,
        astar,
        astar_bijective,
    })
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub source: GSet,
    pub closure: GSet,
    /// Index of the distinguished tuple `(x)_x` in the closure.
    pub base_point: usize,
    /// `projections[x]` maps the closure onto the source with `a -> x`.
    pub projections: Vec<Vec<usize>>,
    pub certificate: GaloisCertificate,
}

/// The orbit of the tuple `(x)_{x ∈ X}` inside `∏_{x ∈ X} X`.
pub fn galois_closure(x: &GSet) -> Result<ClosureResult> {
    if x.is_empty() || !x.is_transitive() {
        return Err(Error::Precondition(format!("{} must be non-empty and connected", x.name())));
    }
    let factors: Vec<&GSet> = vec![x; x.len()];
    let tuple: Vec<usize> = (0..x.len()).collect();
    let (orbit, points) = GSet::tuple_orbit(&factors, &tuple)?;
    let closure = orbit.with_name(format!("closure({})", x.name()));
    let projections = (0..x.len()).map(|i| points.iter().map(|t| t[i]).collect()).collect();
    let certificate = is_galois(&closure)?;
    if !certificate.is_galois {
        return Err(Error::Validation(format!("closure of {} is not Galois: {}", x.name(), certificate.reason)));
    }
    Ok(ClosureResult { source: x.clone(), closure, base_point: 0, projections, certificate })
}

/// `X` is split by the cover `U` when each orbit stabilizer of `U` acts
/// trivially on `X`.
pub fn split_by(u: &GSet, x: &GSet) -> Result<bool> {
    if u.is_empty() {
        return Err(Error::Precondition("an empty G-set is not a cover".into()));
    }
    let kernel = x.kernel();
    Ok(u.orbits().iter().all(|o| u.stabilizer(o[0]) & !kernel == 0))
}

/// Indices of the objects of `site` split by `u`.
pub fn split_objects(u: &GSet, site: &SiteCategory) -> Result<Vec<usize>> {
    let objs = site.gsets.as_ref().ok_or_else(|| Error::Precondition("site is not made of G-sets".into()))?;
    let mut keep = Vec::new();
    for (i, x) in objs.iter().enumerate() {
        if split_by(u, x)? {
            keep.push(i);
        }
    }
    Ok(keep)
}

pub fn split_category(u: &GSet, site: &SiteCategory) -> Result<SiteCategory> {
    Ok(site.restrict(&split_objects(u, site)?))
}

fn object_names(site: &SiteCategory, idx: &[usize]) -> String {
    let names: Vec<&str> = idx.iter().map(|&i| site.category.objects()[i].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Finds `A` representing the point of `Split(U)` (an initial object of the
/// diagram of `F` on `Split(U)`), then checks `Split(U) = Split(A)` and
/// `Split(A) ≃ tB(G/N)` with `N` the kernel of the action on `A`.
pub fn verify_split_eq(u: &GSet, max_order: usize) -> Result<Report> {
    let group = u.group().clone();
    let tbg = build_tbg_site(&group, max_order)?;
    let objs = tbg.gsets.clone().expect("tBG is made of G-sets");
    let mut r = Report::new(format!("split categories for U = {}", u.name()));
    r.engine = "exhaustive".into();
    let split_u = split_objects(u, &tbg)?;
    let sub = tbg.restrict(&split_u);
    let d = diagram_of(&sub.category, &sub.functor);
    let Some(&init) = d.initial_objects().first() else {
        r.check("the point of Split(U) is representable", false, "no initial object in the diagram of F");
        return Ok(r);
    };
    let a_obj = split_u[d.nodes[init].0];
    let a = &objs[a_obj];
    r.check("the point of Split(U) is representable", true, format!("by {}", a.name()));
    let cert = is_galois(a)?;
    r.check("the representing object is Galois", cert.is_galois, cert.reason.clone());
    let split_a = split_objects(a, &tbg)?;
    r.check(
        "Split(U) = Split(A) objectwise",
        split_u == split_a,
        format!("Split(U) = {}, Split(A) = {}", object_names(&tbg, &split_u), object_names(&tbg, &split_a)),
    );
    let n = a.kernel();
    let proj = group.quotient(n)?;
    let quotient = proj.target().clone();
    let q_objs = transitive_representatives(&quotient)?;
    let restricted: Vec<GSet> = q_objs.iter().map(|x| x.restrict_along(&proj)).collect::<Result<_>>()?;
    let mut hit = vec![false; split_a.len()];
    let mut lands = true;
    for y in &restricted {
        match split_a.iter().position(|&i| y.is_isomorphic(&objs[i]).unwrap_or(false)) {
            Some(p) => hit[p] = true,
            None => lands = false,
        }
    }
    r.check("restriction along G -> G/N lands in Split(A)", lands, format!("G/N = {}", quotient.name()));
    r.check("restriction is essentially surjective onto Split(A)", hit.iter().all(|&h| h), "");
    let mut full = String::new();
    for (i, x) in q_objs.iter().enumerate() {
        for (j, y) in q_objs.iter().enumerate() {
            let below = x.homs(y)?.len();
            let above = restricted[i].homs(&restricted[j])?.len();
            if below != above && full.is_empty() {
                full = format!("|hom({}, {})| = {below} but {above} after restriction", x.name(), y.name());
            }
        }
    }
    r.check("restriction is fully faithful (hom counts)", full.is_empty(), full);
    if u.is_transitive() {
        let cl = galois_closure(u)?;
        let same = split_objects(&cl.closure, &tbg)? == split_u;
        r.note(format!(
            "the cotensor closure of U has {} points and {} the same split objects",
            cl.closure.len(),
            if same { "has" } else { "does not have" }
        ));
    }
    Ok(r)
}

/// Objects `X` of `site` for which `a*: [A, X] -> X`, `f -> f(a)`, is a bijection.
pub fn c_a_subcategory(a: &GSet, base: usize, site: &SiteCategory) -> Result<(SiteCategory, Report)> {
    let cert = is_galois(a)?;
    if !cert.is_galois {
        return Err(Error::Precondition(format!("{} is not Galois: {}", a.name(), cert.reason)));
    }
    let objs = site.gsets.as_ref().ok_or_else(|| Error::Precondition("site is not made of G-sets".into()))?;
    let mut keep = Vec::new();
    let mut nonempty = Vec::new();
    for (i, x) in objs.iter().enumerate() {
        let homs = a.homs(x)?;
        let astar: Vec<usize> = homs.iter().map(|f| f[base]).collect();
        if is_bijective(&astar, x.len()) {
            keep.push(i);
        }
        if !homs.is_empty() {
            nonempty.push(i);
        }
    }
    let mut r = Report::new(format!("C_A for A = {}", a.name()));
    r.engine = "exhaustive".into();
    r.check(
        "C_A = {X : hom(A, X) non-empty}",
        keep == nonempty,
        format!("C_A = {}", object_names(site, &keep)),
    );
    Ok((site.restrict(&keep), r))
}

/// Checks that `C_A ⊆ C_B` whenever there is an arrow `B -> A`.
pub fn verify_c_a_inclusion(b: &GSet, a: &GSet, site: &SiteCategory) -> Result<Report> {
    let mut r = Report::new(format!("C_A inside C_B for A = {}, B = {}", a.name(), b.name()));
    let (ca, _) = c_a_subcategory(a, 0, site)?;
    let (cb, _) = c_a_subcategory(b, 0, site)?;
    let has_arrow = !b.homs(a)?.is_empty();
    let names_a = ca.category.objects().to_vec();
    let names_b = cb.category.objects().to_vec();
    let included = names_a.iter().all(|n| names_b.contains(n));
    r.check("an arrow B -> A exists", has_arrow, "");
    r.check("C_A is a full subcategory of C_B", included, format!("C_A = {:?}, C_B = {:?}", names_a, names_b));
    Ok(r)
}

/// The group `Aut(A)^op` on the invertible endomorphisms of object `a`:
/// `h · g = g ∘ h`. Elements are listed in arrow order.
pub fn automorphism_group_op(cat: &FiniteCategory, a: usize) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
    let autos: Vec<usize> = cat.hom(a, a).into_iter().filter(|&f| cat.is_iso(f)).collect();
    let pos: HashMap<usize, usize> = autos.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let labels = autos.iter().map(|&f| cat.arrow(f).name.clone()).collect();
    let g = FiniteGroup::from_mul(format!("Aut({})^op", cat.objects()[a]), labels, |h, g| {
        pos[&cat.compose(autos[g], autos[h]).expect("endomorphisms compose")]
    })?;
    Ok((Arc::new(g), autos))
}

/// Discrete fundamental theorem on a site whose `F` is representable.
pub fn verify_fundamental_discrete(site: &SiteCategory) -> Result<Report> {
    let cat = &site.category;
    let f = &site.functor;
    let mut r = Report::new("discrete fundamental theorem");
    r.engine = "exhaustive".into();
    let d = diagram_of(cat, f);
    let Some(&init) = d.initial_objects().first() else {
        r.check("F is representable", false, "not representable: the diagram of F has no initial object");
        return Ok(r);
    };
    let (a, a_elem) = d.nodes[init];
    r.check("F is representable", true, format!("by ({}, {a_elem})", cat.objects()[a]));
    let (group, autos) = automorphism_group_op(cat, a)?;
    r.note(format!("G = Aut(A)^op of order {}, with h.g = g o h; it acts on [A, X] by precomposition", group.order()));

    let homs: Vec<Vec<usize>> = (0..cat.object_count()).map(|x| cat.hom(a, x)).collect();
    let mut lifted = Vec::new();
    for (x, hx) in homs.iter().enumerate() {
        let pos: HashMap<usize, usize> = hx.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let act = (0..group.order())
            .map(|g| hx.iter().map(|&u| pos[&cat.compose(u, autos[g]).expect("composable")]).collect())
            .collect();
        let labels = hx.iter().map(|&u| cat.arrow(u).name.clone()).collect();
        lifted.push(GSet::new(group.clone(), cat.objects()[x].clone(), act, labels)?);
    }
    let bad = lifted.iter().position(|l| !l.is_transitive());
    r.check(
        "every [A, X] is a transitive G-set",
        bad.is_none(),
        bad.map(|x| format!("[A, {}] is not transitive", cat.objects()[x])).unwrap_or_default(),
    );

    // Each x: A -> X is the quotient of A by H_x = {h : x h = x}.
    let mut quotient = String::new();
    for (x, hx) in homs.iter().enumerate() {
        for &u in hx {
            let h_u: Vec<usize> = (0..autos.len()).filter(|&h| cat.compose(u, autos[h]) == Some(u)).collect();
            for (y, hy) in homs.iter().enumerate() {
                for &v in hy {
                    if !h_u.iter().all(|&h| cat.compose(v, autos[h]) == Some(v)) {
                        continue;
                    }
                    let factors = cat.hom(x, y).into_iter().filter(|&z| cat.compose(z, u) == Some(v)).count();
                    if factors != 1 && quotient.is_empty() {
                        quotient = format!("{} factors {} ways through {}", cat.arrow(v).name, factors, cat.arrow(u).name);
                    }
                }
            }
            let fu = &f.maps[u];
            for p in 0..f.values[a] {
                for q in 0..f.values[a] {
                    let same_image = fu[p] == fu[q];
                    let same_orbit = h_u.iter().any(|&h| f.maps[autos[h]][p] == q);
                    if same_image != same_orbit && quotient.is_empty() {
                        quotient = format!("fibres of F({}) differ from H-orbits at ({p}, {q})", cat.arrow(u).name);
                    }
                }
            }
        }
    }
    r.check("every arrow A -> X is the quotient of A by its stabilizer", quotient.is_empty(), quotient);

    let mut faithful = String::new();
    let mut full = String::new();
    for x in 0..cat.object_count() {
        for y in 0..cat.object_count() {
            let images: Vec<Vec<usize>> = cat
                .hom(x, y)
                .iter()
                .map(|&w| {
                    homs[x]
                        .iter()
                        .map(|&u| homs[y].iter().position(|&v| Some(v) == cat.compose(w, u)).expect("composite in hom"))
                        .collect()
                })
                .collect();
            let mut dedup = images.clone();
            dedup.sort();
            dedup.dedup();
            if dedup.len() != images.len() && faithful.is_empty() {
                faithful = format!("two arrows {} -> {} lift to the same map", cat.objects()[x], cat.objects()[y]);
            }
            let target = lifted[x].homs(&lifted[y])?.len();
            if target != dedup.len() && full.is_empty() {
                full = format!("|hom({}, {})| = {} but {} equivariant maps", cat.objects()[x], cat.objects()[y], dedup.len(), target);
            }
        }
    }
    r.check("the lifted functor is faithful", faithful.is_empty(), faithful);
    r.check("the lifted functor is full", full.is_empty(), full);
    let mut missing = Vec::new();
    for t in transitive_representatives(&group)? {
        if !lifted.iter().any(|l| l.is_isomorphic(&t).unwrap_or(false)) {
            missing.push(t.name().to_string());
        }
    }
    r.check("the lifted functor is essentially surjective", missing.is_empty(), missing.join(", "));
    let bad = (0..cat.arrows().len()).find(|&w| cat.arrow(w).dst == a && !cat.is_iso(w));
    r.check(
        "every arrow into A is an isomorphism",
        bad.is_none(),
        bad.map(|w| cat.arrow(w).name.clone()).unwrap_or_default(),
    );
    Ok(r)
}

/// Galois objects are cofinal in the diagram of `F` on `tBG`, and `tBG` is the
/// filtered union of the split categories of Galois objects.
pub fn galois_cofinality(group: &Arc<FiniteGroup>, max_order: usize) -> Result<Report> {
    let tbg = build_tbg_site(group, max_order)?;
    let objs = tbg.gsets.clone().expect("G-sets");
    let mut r = Report::new(format!("Galois cofinality for {}", group.name()));
    r.engine = "exhaustive".into();
    let mut cofinal = String::new();
    for x in &objs {
        let cl = galois_closure(x)?;
        for p in 0..x.len() {
            let pi = &cl.projections[p];
            if !(cl.closure.is_equivariant(x, pi) && pi[cl.base_point] == p) && cofinal.is_empty() {
                cofinal = format!("no arrow from the closure onto ({}, {p})", x.name());
            }
        }
    }
    r.check("every (X, x) receives an arrow from a Galois (A, a)", cofinal.is_empty(), cofinal);
    let galois: Vec<usize> = (0..objs.len()).filter(|&i| is_galois(&objs[i]).map(|c| c.is_galois).unwrap_or(false)).collect();
    let splits: Vec<Vec<usize>> = galois.iter().map(|&i| split_objects(&objs[i], &tbg)).collect::<Result<_>>()?;
    let covered = (0..objs.len()).all(|x| splits.iter().any(|s| s.contains(&x)));
    r.check("tBG is the union of Split(A) over Galois A", covered, format!("{} Galois objects", galois.len()));
    let mut filtered = String::new();
    for (i, si) in splits.iter().enumerate() {
        for sj in &splits[i..] {
            let ok = splits.iter().any(|sk| si.iter().chain(sj).all(|x| sk.contains(x)));
            if !ok && filtered.is_empty() {
                filtered = format!("no Galois object splits both {} and {}", object_names(&tbg, si), object_names(&tbg, sj));
            }
        }
    }
    r.check("the union is filtered", filtered.is_empty(), filtered);
    let mut minimal = String::new();
    for (xi, x) in objs.iter().enumerate() {
        let best = galois.iter().zip(&splits).filter(|(_, s)| s.contains(&xi)).map(|(&a, _)| a).min_by_key(|&a| objs[a].len());
        let cl = galois_closure(x)?;
        if let Some(a) = best {
            r.note(format!("minimal Galois object splitting {}: {}", x.name(), objs[a].name()));
            if !objs[a].is_isomorphic(&cl.closure)? && minimal.is_empty() {
                minimal = format!("closure of {} is not the minimal Galois object splitting it", x.name());
            }
        }
    }
    r.check("the closure of X is the minimal Galois object splitting X", minimal.is_empty(), minimal);
    Ok(r)
}

/// Subgroup of `group` from generator strings (cycle notation or labels).
pub fn subgroup_from(group: &FiniteGroup, gens: &[String]) -> Result<ElemSet> {
    let mut set: ElemSet = 0;
    for g in gens {
        set |= 1 << group.parse_element(g)?;
    }
    Ok(group.generated(set))
}

/// Tuple of elements making up a subgroup, for display.
pub fn subgroup_labels(group: &FiniteGroup, h: ElemSet) -> Vec<String> {
    elems(h).iter().map(|&g| group.label(g).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    fn g(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin(name).unwrap())
    }

    fn coset(group: &Arc<FiniteGroup>, gens: &[&str]) -> GSet {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        GSet::cosets(group.clone(), subgroup_from(group, &gens).unwrap()).unwrap()
    }

    #[test]
    fn s3_examples() {
        let s3 = g("S3");
        let a3 = coset(&s3, &["(1 2 3)"]);
        let t = coset(&s3, &["(1 2)"]);
        assert!(is_galois(&a3).unwrap().is_galois);
        let c = is_galois(&t).unwrap();
        assert!(!c.is_galois);
        assert_eq!(c.reason, "|Aut|=1 but |X|=3");
        assert!(is_galois(&GSet::regular(s3.clone())).unwrap().is_galois);
        assert_eq!(galois_closure(&t).unwrap().closure.len(), 6);
        assert_eq!(galois_closure(&a3).unwrap().closure.len(), 2);
        assert!(split_by(&a3, &a3).unwrap());
        assert!(!split_by(&a3, &t).unwrap());
    }

    #[test]
    fn split_of_transposition_cosets_is_constants() {
        let s3 = g("S3");
        let t = coset(&s3, &["(1 2)"]);
        let site = build_tbg_site(&s3, 24).unwrap();
        assert_eq!(split_objects(&t, &site).unwrap(), vec![0]);
        let r = verify_split_eq(&t, 24).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass, "{}", r.to_text());
    }

    #[test]
    fn fundamental_on_regular_z3() {
        let z3 = g("Z3");
        let site = build_tbg_site(&z3, 24).unwrap();
        let (ca, rep) = c_a_subcategory(&GSet::regular(z3), 0, &site).unwrap();
        assert_eq!(rep.verdict(), Verdict::Pass);
        let r = verify_fundamental_discrete(&ca).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass, "{}", r.to_text());
    }

    #[test]
    fn cofinality_s3() {
        let r = galois_cofinality(&g("S3"), 24).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass, "{}", r.to_text());
    }
}
