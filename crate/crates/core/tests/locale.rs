mod common;

use localic::bitset::{Bits, GenSet};
use localic::locale::{enumerate_points, EngineConfig, Frame, FrameMorphism, Join, Lazy, Prover, Site};
use localic::order::Preorder;
use localic::report::Verdict;
use localic::sample::random_site;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn downset(frame: &Frame, seed: &[usize]) -> Bits {
    let lat = frame.lattice();
    let mut b = Bits::zeros(lat.len());
    for c in 0..lat.len() {
        if seed.iter().any(|&s| lat.leq(c, s)) {
            b.set(c);
        }
    }
    b
}

fn random_seed(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn saturate_is_the_least_fixpoint(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let site = random_site(&mut rng, 8, 6);
        let frame = Frame::new(&site, 16).unwrap();
        let n = frame.lattice().len();
        for _ in 0..8 {
            let s = random_seed(&mut rng, n);
            prop_assert_eq!(frame.saturate_indices(&s), common::saturate_naive(&frame, &s));
        }
    }

    #[test]
    fn saturate_is_a_nucleus(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let site = random_site(&mut rng, 8, 6);
        let frame = Frame::new(&site, 16).unwrap();
        let n = frame.lattice().len();
        let (a, b) = (random_seed(&mut rng, n), random_seed(&mut rng, n));
        let ja = frame.saturate_indices(&a);
        let jb = frame.saturate_indices(&b);
        prop_assert!(downset(&frame, &a).is_subset(&ja));
        prop_assert!(frame.is_saturated(&ja));
        let again: Vec<usize> = ja.ones().collect();
        prop_assert_eq!(&frame.saturate_indices(&again), &ja);
        let mut ab = downset(&frame, &a);
        ab.and_with(&downset(&frame, &b));
        let seed_ab: Vec<usize> = ab.ones().collect();
        let mut meet = ja.clone();
        meet.and_with(&jb);
        prop_assert_eq!(frame.saturate_indices(&seed_ab), meet);
        let mut union = a.clone();
        union.extend(&b);
        prop_assert!(ja.is_subset(&frame.saturate_indices(&union)));
    }

    #[test]
    fn frames_are_distributive(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let site = random_site(&mut rng, 8, 6);
        let frame = Frame::new(&site, 16).unwrap();
        let n = frame.lattice().len();
        let pick = |rng: &mut ChaCha8Rng| frame.saturate(&random_seed(rng, n));
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let lhs = frame.meet(&a, &frame.join(&b, &c).unwrap()).unwrap();
        let rhs = frame.join(&frame.meet(&a, &b).unwrap(), &frame.meet(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lazy_agrees_with_full(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let site = random_site(&mut rng, 10, 6);
        let frame = Frame::new(&site, 16).unwrap();
        let lazy = Lazy::new(&site, 1_000_000);
        let k = site.generator_count();
        for _ in 0..16 {
            let term: GenSet = (0..k).filter(|_| rng.gen_bool(0.3)).collect();
            let family: Vec<GenSet> = (0..rng.gen_range(0..3)).map(|_| (0..k).filter(|_| rng.gen_bool(0.4)).collect()).collect();
            prop_assert_eq!(lazy.entails(&term, &family), Verdict::from(frame.entails(&term, &family)));
        }
    }
}

#[test]
fn points_are_the_frame_maps_to_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let two = Prover::new(&Site::two(), &EngineConfig::full()).unwrap();
    for _ in 0..40 {
        let site = random_site(&mut rng, 7, 5);
        let k = site.generator_count();
        let points = enumerate_points(&site).unwrap();
        for mask in 0u64..1 << k {
            let p = GenSet::from_mask(mask);
            let images = (0..k).map(|i| if p.contains(i) { Join::top() } else { Join::zero() }).collect();
            let m = FrameMorphism::new(site.clone(), Site::two(), images).unwrap();
            let is_map = m.validate(&two).verdict == Verdict::Pass;
            assert_eq!(is_map, points.contains(&p), "{}", site.describe(&p));
        }
    }
}

#[test]
fn composition_is_associative_and_unital() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // Any assignment on a discrete base with no covers is a frame map.
    let k = 5;
    let site = Site::free(Preorder::discrete((0..k).map(|i| i.to_string()).collect()));
    let shuffle = |rng: &mut ChaCha8Rng| {
        let images = (0..k).map(|_| Join::of_generators((0..k).filter(|_| rng.gen_bool(0.4)))).collect();
        FrameMorphism::new(site.clone(), site.clone(), images).unwrap()
    };
    let (f, g, h) = (shuffle(&mut rng), shuffle(&mut rng), shuffle(&mut rng));
    let prover = Prover::new(f.target(), &EngineConfig::full()).unwrap();
    let left = f.then(&g).unwrap().then(&h).unwrap();
    let right = f.then(&g.then(&h).unwrap()).unwrap();
    assert_eq!(left.equals(&right, &prover).verdict, Verdict::Pass);
    let id = FrameMorphism::identity(f.source());
    assert_eq!(id.then(&f).unwrap().equals(&f, &prover).verdict, Verdict::Pass);
}

#[test]
fn discrete_locale_points() {
    let d = Site::discrete(vec!["a".into(), "b".into(), "c".into()]);
    assert_eq!(enumerate_points(&d).unwrap().len(), 3);
    let json = serde_json::to_string(&d.to_json()).unwrap();
    let (back, _) = Site::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, d);
}
