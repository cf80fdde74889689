mod common;

use localic::category::{build_tbg_site, FunctorData, SiteCategory};
use localic::enrichment::*;
use localic::locale::{enumerate_points, EngineConfig};
use localic::report::Verdict;
use localic::sample::{sample_categories, SampleBounds};
use localic::wraith::Kind;

fn tbg(name: &str) -> SiteCategory {
    build_tbg_site(&common::group(name), 24).unwrap()
}

fn pass(r: localic::report::Report) {
    assert_eq!(r.verdict(), Verdict::Pass, "{}", r.to_text());
}

#[test]
fn natural_points_match_brute_force() {
    let mut checked = 0;
    for (cat, f) in sample_categories(11, 30, &SampleBounds::default()).unwrap() {
        let g = FunctorData::representable(&cat, 0);
        for (left, right) in [(&f, &f), (&f, &g), (&g, &f)] {
            for kind in [Kind::Relations, Kind::Functions, Kind::Bijections] {
                let nat = NatLocale::new(kind, &cat, left, right).unwrap();
                if kind == Kind::Relations && nat.generator_count() > 12 {
                    continue;
                }
                let (points, r) = nat_points(&nat).unwrap();
                assert_eq!(r.verdict(), Verdict::Pass);
                assert_eq!(points.len(), common::count_natural(kind, &cat, left, right), "{kind:?} on {:?}", cat.objects());
                checked += 1;
            }
        }
    }
    assert!(checked >= 150, "{checked}");
}

#[test]
fn group_sites_have_automorphism_points() {
    for (name, n) in [("Z2", 2), ("Z3", 3), ("S3", 6)] {
        let s = tbg(name);
        let nat = NatLocale::new(Kind::Bijections, &s.category, &s.functor, &s.functor).unwrap();
        assert_eq!(enumerate_points(&nat.site).unwrap().len(), n);
        assert_eq!(common::count_natural(Kind::Bijections, &s.category, &s.functor, &s.functor), n);
    }
}

#[test]
fn yoneda_on_sampled_categories() {
    let cfg = EngineConfig::default();
    let samples = sample_categories(5, 24, &SampleBounds::default()).unwrap();
    for (cat, f) in &samples {
        for a in 0..cat.object_count() {
            pass(yoneda_verify(cat, a, f, &cfg).unwrap());
            pass(yoneda_verify(cat, a, &FunctorData::representable(cat, a), &cfg).unwrap());
        }
    }
}

#[test]
fn yoneda_on_group_sites() {
    let cfg = EngineConfig::default();
    for name in ["Z2", "Z3"] {
        let s = tbg(name);
        for a in 0..s.object_count() {
            pass(yoneda_verify(&s.category, a, &s.functor, &cfg).unwrap());
            for b in 0..s.object_count() {
                pass(yoneda_auto_verify(&s.category, a, b, &cfg).unwrap());
            }
        }
    }
}

#[test]
fn yoneda_automorphisms_on_sampled_categories() {
    let cfg = EngineConfig::default();
    for (cat, _) in sample_categories(8, 12, &SampleBounds::default()).unwrap() {
        for a in 0..cat.object_count() {
            pass(yoneda_auto_verify(&cat, a, a, &cfg).unwrap());
        }
    }
}

#[test]
fn laut_structure() {
    let cfg = EngineConfig::default();
    for name in ["Z2", "Z3"] {
        let s = tbg(name);
        let l = laut_f(&s.category, &s.functor).unwrap();
        assert_eq!(enumerate_points(&l.nat.site).unwrap().len(), common::group(name).order());
        pass(l.verify(&cfg).unwrap());
    }
}

#[test]
fn transitivity_and_lifting() {
    let full = EngineConfig::full();
    for name in ["Z2", "Z3"] {
        let s = tbg(name);
        pass(verify_transitivity(&s, &full).unwrap());
        pass(verify_lifting(&s, &full).unwrap());
        pass(engine_agreement(&s, 1_000_000).unwrap());
    }
    // 21 generators: past the full engine's cap.
    let z4 = tbg("Z4");
    assert!(verify_transitivity(&z4, &full).is_err());
    pass(verify_transitivity(&z4, &EngineConfig::default()).unwrap());
    pass(verify_lifting(&z4, &EngineConfig::default()).unwrap());
    let s3 = tbg("S3");
    let trunc = s3.restrict(&[0, 1, 2]);
    pass(verify_transitivity(&trunc, &full).unwrap());
    pass(verify_lifting(&trunc, &full).unwrap());
    pass(engine_agreement(&trunc, 1_000_000).unwrap());
    pass(verify_transitivity(&s3, &EngineConfig::default()).unwrap());
}

#[test]
fn inclusion_transitions() {
    let cfg = EngineConfig::default();
    let s = tbg("S3");
    pass(verify_inclusion_transition(&s, &[0, 1], &[0, 1, 2, 3], &cfg).unwrap());
    pass(verify_inclusion_transition(&s, &[0, 3], &[0, 1, 2, 3], &cfg).unwrap());
    pass(verify_transition_functoriality(&s, [&[0, 1], &[0, 1, 2], &[0, 1, 2, 3]], &cfg).unwrap());
    assert!(verify_inclusion_transition(&s, &[0, 3], &[0, 1], &cfg).is_err());
}

#[test]
fn transition_rejects_unnatural_theta() {
    let s = tbg("Z2");
    let inc = CatFunctor::inclusion(&s.category, &s.category, &[0, 1], (0..s.category.arrows().len()).collect()).unwrap();
    let twisted: Vec<Vec<usize>> = vec![vec![0], vec![1, 0]];
    // Swapping the two points of the regular Z2-set is natural for a commutative group.
    assert!(aut_transition(&s.category, &s.functor, &s.category, &s.functor, &inc, &twisted).is_ok());
    let bad: Vec<Vec<usize>> = vec![vec![0], vec![0, 0]];
    assert!(aut_transition(&s.category, &s.functor, &s.category, &s.functor, &inc, &bad).is_err());
}

#[test]
fn colimit_of_stages() {
    let s = tbg("S3");
    pass(colimit_inflattices(&s, &[vec![0], vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3]], 3).unwrap());
    let z4 = tbg("Z4");
    pass(colimit_inflattices(&z4, &[vec![0, 1], vec![0, 1, 2]], 9).unwrap());
}
