//! One line per acceptance criterion. All comparisons are exact: frame
//! equalities, point counts and isomorphism tests have zero tolerance.

mod common;

use localic::bitset::{Bits, GenSet};
use localic::category::{build_tbg_site, transitive_representatives, verify_atomic_site, FunctorData, SiteCategory};
use localic::enrichment::{engine_agreement, verify_lifting, verify_transitivity, yoneda_auto_verify, yoneda_verify};
use localic::galois::{c_a_subcategory, galois_closure, is_galois, verify_fundamental_discrete, verify_split_eq};
use localic::group::GroupHom;
use localic::gset::GSet;
use localic::locale::{enumerate_points, EngineConfig, Frame, Lazy};
use localic::prodiscrete::{colimit_site, factor_transitive, verify_bt_star, GroupChain};
use localic::report::{Report, Verdict};
use localic::sample::{random_site, sample_categories, SampleBounds};
use localic::wraith::{verify_groupoid_laws, Kind, WraithSite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(r: &Report) -> Result<(), String> {
    ensure(r.verdict() == Verdict::Pass, || r.to_text().lines().take(12).collect::<Vec<_>>().join(" | "))
}

fn tbg(name: &str) -> SiteCategory {
    build_tbg_site(&common::group(name), 24).unwrap()
}

fn point_counts() -> Outcome {
    let mut n = 0;
    for nx in 1..=3usize {
        for ny in 1..=3usize {
            let count = |k| enumerate_points(&WraithSite::sized(k, nx, ny).site).unwrap().len();
            ensure(count(Kind::Relations) == 1 << (nx * ny), || format!("lRel {nx}x{ny}"))?;
            ensure(count(Kind::Functions) == ny.pow(nx as u32), || format!("lFunc {nx}x{ny}"))?;
            n += 2;
        }
        ensure(count_bij(nx) == common::factorial(nx), || format!("lBij {nx}x{nx}"))?;
        n += 1;
    }
    Ok(format!("{n} sizes exact"))
}

fn count_bij(n: usize) -> usize {
    enumerate_points(&WraithSite::sized(Kind::Bijections, n, n).site).unwrap().len()
}

fn groupoid_laws() -> Outcome {
    let mut n = 0;
    for kind in [Kind::Functions, Kind::Bijections] {
        for nx in 1..=2 {
            for ny in 1..=2 {
                for nz in 1..=2 {
                    passed(&verify_groupoid_laws(kind, nx, ny, nz, &EngineConfig::full(), false).unwrap())?;
                    n += 1;
                }
            }
        }
    }
    let bad = verify_groupoid_laws(Kind::Bijections, 2, 2, 2, &EngineConfig::full(), true).unwrap();
    ensure(bad.verdict() == Verdict::Fail, || "corrupted m* was not caught".into())?;
    Ok(format!("{n} size triples, corrupted m* fails"))
}

fn yoneda() -> Outcome {
    let cfg = EngineConfig::default();
    let samples = sample_categories(2024, 24, &SampleBounds::default()).unwrap();
    let mut n = 0;
    for (cat, f) in &samples {
        for a in 0..cat.object_count() {
            passed(&yoneda_verify(cat, a, f, &cfg).unwrap())?;
            passed(&yoneda_auto_verify(cat, a, a, &cfg).unwrap())?;
            n += 1;
        }
    }
    for name in ["Z2", "Z3"] {
        let s = tbg(name);
        for a in 0..s.object_count() {
            passed(&yoneda_verify(&s.category, a, &s.functor, &cfg).unwrap())?;
            passed(&yoneda_verify(&s.category, a, &FunctorData::representable(&s.category, a), &cfg).unwrap())?;
            for b in 0..s.object_count() {
                passed(&yoneda_auto_verify(&s.category, a, b, &cfg).unwrap())?;
            }
            n += 1;
        }
    }
    Ok(format!("{} random categories, tB(Z2), tB(Z3); {n} base objects", samples.len()))
}

fn atomic() -> Outcome {
    for name in ["Z2", "Z3", "Z4", "Z6", "S3", "D4"] {
        passed(&verify_atomic_site(&tbg(name)))?;
    }
    let z2 = common::group("Z2");
    let bad = SiteCategory::from_gsets(vec![GSet::point(z2.clone()), GSet::trivial(z2, 2)]).unwrap();
    let r = verify_atomic_site(&bad);
    let witness = r.failures().next().map(|c| c.witness.clone()).unwrap_or_default();
    ensure(r.verdict() == Verdict::Fail && !witness.is_empty(), || "counterexample not refuted".into())?;
    Ok(format!("6 groups pass; counterexample fails with \"{witness}\""))
}

fn galois_detection() -> Outcome {
    let mut n = 0;
    for name in common::SMALL_GROUPS {
        let g = common::group(name);
        for class in g.subgroup_classes().unwrap() {
            let h = class[0];
            let x = GSet::cosets(g.clone(), h).unwrap();
            ensure(is_galois(&x).unwrap().is_galois == common::normal_by_conjugation(&g, h), || format!("{name}: {}", x.name()))?;
            let oracle = GSet::cosets(g.clone(), common::normal_core(&g, h)).unwrap();
            ensure(galois_closure(&x).unwrap().closure.is_isomorphic(&oracle).unwrap(), || format!("closure of {}", x.name()))?;
            n += 1;
        }
    }
    Ok(format!("{n} subgroup classes over {} groups", common::SMALL_GROUPS.len()))
}

fn fundamental() -> Outcome {
    let mut n = 0;
    for name in ["S3", "Z4"] {
        let site = tbg(name);
        for a in site.gsets.as_ref().unwrap().iter().filter(|x| is_galois(x).unwrap().is_galois) {
            let (ca, _) = c_a_subcategory(a, 0, &site).unwrap();
            passed(&verify_fundamental_discrete(&ca).unwrap())?;
            n += 1;
        }
    }
    Ok(format!("{n} Galois objects"))
}

fn split() -> Outcome {
    let g = common::group("S3");
    let reps = transitive_representatives(&g).unwrap();
    let mut n = 0;
    for mask in 1u32..1 << reps.len() {
        let mut parts = (0..reps.len()).filter(|i| mask & (1 << i) != 0).map(|i| reps[i].clone());
        let first = parts.next().unwrap();
        let u = parts.fold(first, |acc, p| acc.sum(&p).unwrap());
        passed(&verify_split_eq(&u, 24).unwrap())?;
        n += 1;
    }
    Ok(format!("{n} covers of tB(S3) up to repeated orbit types"))
}

fn transitivity_lifting() -> Outcome {
    let s3 = tbg("S3");
    let sites = [("tB(Z2)", tbg("Z2")), ("tB(Z3)", tbg("Z3")), ("tB(S3) sizes <= 3", s3.restrict(&[0, 1, 2]))];
    for (_, s) in &sites {
        passed(&verify_transitivity(s, &EngineConfig::full()).unwrap())?;
        passed(&verify_lifting(s, &EngineConfig::full()).unwrap())?;
        passed(&engine_agreement(s, 1_000_000).unwrap())?;
    }
    Ok("3 sites, lazy and full agree, 0 undecided".into())
}

fn prodiscrete() -> Outcome {
    let chain = GroupChain::cyclic(&[2, 4, 8]).unwrap();
    for x in transitive_representatives(chain.top()).unwrap() {
        let f = factor_transitive(&chain, &x).unwrap();
        ensure(f.stage == common::factor_stage_oracle(&chain, &x), || format!("{} factors at stage {}", x.name(), f.stage + 1))?;
    }
    let names = ["Z1", "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8"];
    let mut n = 0;
    for a in names {
        for b in names {
            let (g, h) = (common::group(a), common::group(b));
            if g.order() % h.order() != 0 {
                continue;
            }
            for t in GroupHom::all(&g, &h).into_iter().filter(|t| t.is_surjective()) {
                passed(&verify_bt_star(&t).unwrap())?;
                n += 1;
            }
        }
    }
    for name in ["Z3", "S3", "D4"] {
        let g = common::group(name);
        let colim = colimit_site(&GroupChain::constant(g.clone(), 3).unwrap()).unwrap();
        let direct = build_tbg_site(&g, 24).unwrap();
        ensure(colim.site.category.same_shape(&direct.category), || format!("constant {name} chain"))?;
    }
    Ok(format!("Z8 factoring exact; {n} surjections; constant chains match"))
}

fn engine_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..200 {
        let site = random_site(&mut rng, 10, 6);
        let frame = Frame::new(&site, 16).unwrap();
        let lazy = Lazy::new(&site, 1_000_000);
        let n = frame.lattice().len();
        let lat = frame.lattice();
        let mut seeds: Vec<Vec<usize>> = (0..3).map(|_| (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..n)).collect()).collect();
        seeds.push(Vec::new());
        let down = |s: &[usize]| {
            let mut b = Bits::zeros(n);
            (0..n).filter(|&c| s.iter().any(|&t| lat.leq(c, t))).for_each(|c| b.set(c));
            b
        };
        for s in &seeds {
            let j = frame.saturate_indices(s);
            ensure(j == common::saturate_naive(&frame, s), || format!("site {i}: saturate is not the least fixpoint"))?;
            ensure(down(s).is_subset(&j) && frame.is_saturated(&j), || format!("site {i}: not inflationary"))?;
            let again: Vec<usize> = j.ones().collect();
            ensure(frame.saturate_indices(&again) == j, || format!("site {i}: not idempotent"))?;
        }
        let (ja, jb) = (frame.saturate_indices(&seeds[0]), frame.saturate_indices(&seeds[1]));
        let mut both = down(&seeds[0]);
        both.and_with(&down(&seeds[1]));
        let mut meet = ja;
        meet.and_with(&jb);
        ensure(frame.saturate_indices(&both.ones().collect::<Vec<_>>()) == meet, || format!("site {i}: meets not preserved"))?;
        let el: Vec<_> = seeds.iter().take(3).map(|s| frame.saturate(s)).collect();
        let lhs = frame.meet(&el[0], &frame.join(&el[1], &el[2]).unwrap()).unwrap();
        let rhs = frame.join(&frame.meet(&el[0], &el[1]).unwrap(), &frame.meet(&el[0], &el[2]).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("site {i}: not distributive"))?;
        let k = site.generator_count();
        for _ in 0..16 {
            let term: GenSet = (0..k).filter(|_| rng.gen_bool(0.3)).collect();
            let family: Vec<GenSet> = (0..rng.gen_range(0..3)).map(|_| (0..k).filter(|_| rng.gen_bool(0.4)).collect()).collect();
            ensure(lazy.entails(&term, &family) == Verdict::from(frame.entails(&term, &family)), || format!("site {i}: engines disagree"))?;
        }
    }
    Ok("200 random sites".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("point-count law", point_counts),
        ("groupoid laws", groupoid_laws),
        ("localic Yoneda", yoneda),
        ("atomic-site checker", atomic),
        ("Galois detection and closure", galois_detection),
        ("fundamental theorem (discrete)", fundamental),
        ("split suite", split),
        ("transitivity and lifting", transitivity_lifting),
        ("prodiscrete suite", prodiscrete),
        ("engine soundness", engine_soundness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
