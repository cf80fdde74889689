mod common;

use localic::gset::GSet;
use localic::locale::{enumerate_points, EngineConfig};
use localic::report::Verdict;
use localic::wraith::{action_from_gset, verify_groupoid_laws, ActionPresentation, Kind, WraithSite};

#[test]
fn point_counts() {
    for nx in 1..=3usize {
        for ny in 1..=3usize {
            let count = |k| enumerate_points(&WraithSite::sized(k, nx, ny).site).unwrap().len();
            assert_eq!(count(Kind::Relations), 1 << (nx * ny));
            assert_eq!(count(Kind::Functions), ny.pow(nx as u32));
            let bij = if nx == ny { common::factorial(nx) } else { 0 };
            assert_eq!(count(Kind::Bijections), bij, "bij {nx}x{ny}");
        }
    }
}

#[test]
fn points_decode_to_functions() {
    let w = WraithSite::sized(Kind::Functions, 2, 3);
    for p in enumerate_points(&w.site).unwrap() {
        let rel = w.relation_of(&p);
        assert_eq!(rel.len(), 2);
        assert_eq!(rel[0].0, 0);
        assert_eq!(rel[1].0, 1);
    }
}

#[test]
fn groupoid_laws_small() {
    for kind in [Kind::Functions, Kind::Bijections] {
        for nx in 1..=2 {
            for ny in 1..=2 {
                for nz in 1..=2 {
                    let r = verify_groupoid_laws(kind, nx, ny, nz, &EngineConfig::full(), false).unwrap();
                    assert_eq!(r.verdict(), Verdict::Pass, "{}", r.to_text());
                }
            }
        }
    }
}

#[test]
fn corrupted_multiplication_is_caught() {
    let r = verify_groupoid_laws(Kind::Bijections, 2, 2, 2, &EngineConfig::full(), true).unwrap();
    assert_eq!(r.verdict(), Verdict::Fail);
    assert!(r.failures().count() > 0);
}

#[test]
fn action_equations_hold_for_gsets() {
    for name in ["Z2", "Z3", "S3", "D4", "Q8"] {
        let g = common::group(name);
        for class in g.subgroup_classes().unwrap() {
            let x = GSet::cosets(g.clone(), class[0]).unwrap();
            let (p, r) = action_from_gset(&x);
            assert_eq!(r.verdict(), Verdict::Pass, "{name}: {}", r.to_text());
            assert!(p.is_transitive());
            for pt in 0..x.len() {
                assert_eq!(p.l_fix(pt).unwrap(), x.stabilizer(pt));
            }
        }
    }
}

#[test]
fn constant_assignment_is_not_an_action() {
    let g = common::group("Z2");
    let p = ActionPresentation::from_mu(g, vec!["0".into(), "1".into()], vec![vec![0b11, 0], vec![0b11, 0]]);
    assert_eq!(p.verify_equations().verdict(), Verdict::Fail);
}
