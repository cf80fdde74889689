//! Three operations for the browser page, each taking plain strings and
//! numbers and returning a JSON string. Errors come back as `{"error": ...}`
//! so the page never has to catch.

use localic::category::build_tbg_site;
use localic::galois::{galois_closure, is_galois, split_objects, subgroup_from};
use localic::group::FiniteGroup;
use localic::gset::GSet;
use localic::locale::enumerate_points;
use localic::wraith::{Kind, WraithSite};
use serde_json::{json, Value};
use std::sync::Arc;
use wasm_bindgen::prelude::*;

const MAX_ORDER: usize = 24;

fn render(v: Result<Value, String>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn group(name: &str) -> Result<Arc<FiniteGroup>, String> {
    let g = FiniteGroup::builtin(name.trim()).map_err(|e| e.to_string())?;
    if g.order() > MAX_ORDER {
        return Err(format!("{} has order {}, the demo stops at {MAX_ORDER}", g.name(), g.order()));
    }
    Ok(Arc::new(g))
}

fn cosets(g: &Arc<FiniteGroup>, spec: &str) -> Result<GSet, String> {
    let gens: Vec<String> = spec.split(',').map(str::trim).filter(|s| !s.is_empty() && *s != "1").map(String::from).collect();
    let h = subgroup_from(g, &gens).map_err(|e| e.to_string())?;
    GSet::cosets(g.clone(), h).map_err(|e| e.to_string())
}

/// Is `G/H` Galois, and what is its Galois closure?
#[wasm_bindgen]
pub fn galois_check(group_name: &str, subgroup: &str) -> String {
    render((|| {
        let g = group(group_name)?;
        let x = cosets(&g, subgroup)?;
        let cert = is_galois(&x).map_err(|e| e.to_string())?;
        let closure = galois_closure(&x).map_err(|e| e.to_string())?;
        Ok(json!({
            "object": x.name(),
            "points": x.len(),
            "galois": cert.is_galois,
            "reason": cert.reason,
            "automorphisms": cert.automorphisms.len(),
            "closure": closure.closure.name(),
            "closure_points": closure.closure.len(),
        }))
    })())
}

/// Points of lRel, lFunc or lBij on sets of the given sizes, as relations.
#[wasm_bindgen]
pub fn locale_points(kind: &str, x: usize, y: usize) -> String {
    render((|| {
        if x * y > 9 {
            return Err("the demo enumerates up to 3 x 3".to_string());
        }
        let kind: Kind = kind.parse().map_err(|e: localic::error::Error| e.to_string())?;
        let w = WraithSite::sized(kind, x, y);
        let points = enumerate_points(&w.site).map_err(|e| e.to_string())?;
        let rels: Vec<Vec<[usize; 2]>> = points.iter().map(|p| w.relation_of(p).into_iter().map(|(a, b)| [a, b]).collect()).collect();
        Ok(json!({ "generators": w.site.generator_count(), "covers": w.site.covers().len(), "count": points.len(), "points": rels }))
    })())
}

/// The transitive objects split by a cover, given as `;`-separated subgroups.
#[wasm_bindgen]
pub fn split_by_cover(group_name: &str, cover: &str) -> String {
    render((|| {
        let g = group(group_name)?;
        let mut u: Option<GSet> = None;
        for part in cover.split(';') {
            let c = cosets(&g, part)?;
            u = Some(match u {
                None => c,
                Some(acc) => acc.sum(&c).map_err(|e| e.to_string())?,
            });
        }
        let u = u.ok_or("empty cover")?;
        let site = build_tbg_site(&g, MAX_ORDER).map_err(|e| e.to_string())?;
        let split = split_objects(&u, &site).map_err(|e| e.to_string())?;
        let names = site.category.objects();
        Ok(json!({
            "cover": u.name(),
            "objects": names,
            "split": split.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
        }))
    })())
}
