mod common;

use localic::category::transitive_representatives;
use localic::group::GroupHom;
use localic::prodiscrete::*;
use localic::report::Verdict;

fn surjection(top: &str, bottom: &str) -> Vec<usize> {
    let (g, h) = (common::group(top), common::group(bottom));
    GroupHom::all(&g, &h).into_iter().find(|t| t.is_surjective()).unwrap().map().to_vec()
}

#[test]
fn factor_stage_matches_oracle() {
    let chains = vec![
        GroupChain::cyclic(&[2, 4, 8]).unwrap(),
        GroupChain::new(vec![common::group("Z2"), common::group("S3"), common::group("D6")], vec![surjection("S3", "Z2"), surjection("D6", "S3")])
            .unwrap(),
        GroupChain::new(vec![common::group("V4"), common::group("D4")], vec![surjection("D4", "V4")]).unwrap(),
    ];
    for chain in &chains {
        let top = chain.len() - 1;
        for x in transitive_representatives(chain.top()).unwrap() {
            let f = factor_transitive(chain, &x).unwrap();
            assert_eq!(f.stage, common::factor_stage_oracle(chain, &x), "{}: {}", chain.describe(), x.name());
            let back = f.object.restrict_along(&chain.projection(top, f.stage)).unwrap();
            assert!(back.is_equivariant(&x, &f.epi));
            assert!(f.object.is_transitive());
        }
    }
}

#[test]
fn z8_factoring_stages() {
    let chain = GroupChain::cyclic(&[2, 4, 8]).unwrap();
    let mut stages: Vec<(usize, usize)> =
        transitive_representatives(chain.top()).unwrap().iter().map(|x| (x.len(), factor_transitive(&chain, x).unwrap().stage)).collect();
    stages.sort();
    assert_eq!(stages, vec![(1, 0), (2, 0), (4, 1), (8, 2)]);
}

#[test]
fn restriction_along_surjections() {
    let names = ["Z1", "Z2", "Z3", "Z4", "V4", "Z6", "S3", "Z8", "D4", "Q8", "Z2xZ4", "Z2xZ2xZ2"];
    let mut seen = 0;
    for a in names {
        for b in names {
            let (g, h) = (common::group(a), common::group(b));
            if g.order() % h.order() != 0 {
                continue;
            }
            for t in GroupHom::all(&g, &h).into_iter().filter(|t| t.is_surjective()) {
                let r = verify_bt_star(&t).unwrap();
                assert_eq!(r.verdict(), Verdict::Pass, "{a} -> {b}: {}", r.to_text());
                seen += 1;
            }
        }
    }
    assert!(seen > 100, "{seen}");
}

#[test]
fn non_surjective_restriction_is_refused() {
    let (z2, z4) = (common::group("Z2"), common::group("Z4"));
    let t = GroupHom::all(&z2, &z4).into_iter().find(|t| !t.is_surjective()).unwrap();
    let x = localic::gset::GSet::regular(z4);
    assert!(restrict_along(&t, &x).is_err());
    assert!(GroupChain::new(vec![common::group("Z4"), common::group("Z2")], vec![vec![0, 0]]).is_err());
}

#[test]
fn germ_classes() {
    let chain = GroupChain::cyclic(&[2, 4, 8]).unwrap();
    let colim = colimit_site(&chain).unwrap();
    assert_eq!(colim.class_count(), 4);
    assert_eq!(colim.site.object_count(), 4);
    // The regular Z2-set at stage 1 and the Z4-set Z4/Z2 at stage 2 are the same germ.
    let find = |stage: usize, size: usize| colim.germs.iter().position(|g| g.stage == stage && g.object.len() == size).unwrap();
    assert!(colim.germ_equal(find(0, 2), find(1, 2)).unwrap());
    assert!(!colim.germ_equal(find(1, 4), find(2, 8)).unwrap());
    assert_eq!(colim.verify().unwrap().verdict(), Verdict::Pass);
    assert_eq!(verify_chain(&chain).unwrap().verdict(), Verdict::Pass);
}

#[test]
fn constant_chain_is_the_group_site() {
    let g = common::group("S3");
    let chain = GroupChain::constant(g.clone(), 3).unwrap();
    let colim = colimit_site(&chain).unwrap();
    let direct = localic::category::build_tbg_site(&g, 24).unwrap();
    assert_eq!(colim.class_count(), direct.object_count());
    assert!(colim.site.category.same_shape(&direct.category));
}

#[test]
fn cofinal_subgroups_of_z8() {
    let r = cofinal_subgroups(&GroupChain::cyclic(&[2, 4, 8]).unwrap()).unwrap();
    assert_eq!(r.verdict(), Verdict::Pass);
    assert!(r.notes.iter().any(|n| n.starts_with("1 (order 1): stages 3")), "{:?}", r.notes);
}

#[test]
fn json_round_trip() {
    let chain = GroupChain::new(vec![common::group("Z2"), common::group("S3")], vec![surjection("S3", "Z2")]).unwrap();
    let text = serde_json::to_string(&chain.to_json()).unwrap();
    let back = GroupChain::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.describe(), chain.describe());
    assert_eq!(back.transition(0).map(), chain.transition(0).map());
}
