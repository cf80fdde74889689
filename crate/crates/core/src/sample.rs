//! Random small concrete categories for sampled property checks.
//!
//! A sample is a subcategory of finite sets: a few objects of size 1 to 3,
//! a handful of random functions between them, closed under composition.
//! The inclusion into sets is the natural functor to test against.

use crate::bitset::GenSet;
use crate::category::{Arrow, FiniteCategory, FunctorData};
use crate::error::Result;
use crate::locale::{Cover, Site};
use crate::order::Preorder;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug)]
pub struct SampleBounds {
    pub max_objects: usize,
    pub max_arrows: usize,
    pub max_value: usize,
    /// Random generating functions drawn before closing under composition.
    pub max_generators: usize,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds { max_objects: 4, max_arrows: 12, max_value: 3, max_generators: 5 }
    }
}

/// A random category with its inclusion functor into sets.
pub fn random_concrete_category(rng: &mut ChaCha8Rng, bounds: &SampleBounds) -> Result<(FiniteCategory, FunctorData)> {
    loop {
        let n = rng.gen_range(1..=bounds.max_objects);
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=bounds.max_value)).collect();
        // (src, dst, function)
        let mut arrows: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|o| (o, o, (0..sizes[o]).collect())).collect();
        for _ in 0..rng.gen_range(0..=bounds.max_generators) {
            let (s, d) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let f: Vec<usize> = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[d])).collect();
            if !arrows.contains(&(s, d, f.clone())) {
                arrows.push((s, d, f));
            }
        }
        if let Some(closed) = close(arrows, bounds.max_arrows) {
            return build(&sizes, closed);
        }
    }
}

fn close(mut arrows: Vec<(usize, usize, Vec<usize>)>, max: usize) -> Option<Vec<(usize, usize, Vec<usize>)>> {
    let mut i = 0;
    while i < arrows.len() {
        for j in 0..arrows.len() {
            for (f, g) in [(i, j), (j, i)] {
                if arrows[f].1 == arrows[g].0 {
                    let h: Vec<usize> = arrows[f].2.iter().map(|&x| arrows[g].2[x]).collect();
                    let t = (arrows[f].0, arrows[g].1, h);
                    if !arrows.contains(&t) {
                        arrows.push(t);
                        if arrows.len() > max {
                            return None;
                        }
                    }
                }
            }
        }
        i += 1;
    }
    Some(arrows)
}

fn build(sizes: &[usize], arrows: Vec<(usize, usize, Vec<usize>)>) -> Result<(FiniteCategory, FunctorData)> {
    let objects: Vec<String> = (0..sizes.len()).map(|o| ((b'A' + o as u8) as char).to_string()).collect();
    let index: HashMap<&(usize, usize, Vec<usize>), usize> = arrows.iter().enumerate().map(|(k, a)| (a, k)).collect();
    let named = arrows
        .iter()
        .enumerate()
        .map(|(k, (s, d, _))| Arrow {
            name: if k < sizes.len() { format!("1{}", objects[k]) } else { format!("f{k}") },
            src: *s,
            dst: *d,
        })
        .collect();
    let mut triples = Vec::new();
    for (f, a) in arrows.iter().enumerate() {
        for (g, b) in arrows.iter().enumerate() {
            if a.1 == b.0 {
                let h = (a.0, b.1, a.2.iter().map(|&x| b.2[x]).collect::<Vec<_>>());
                triples.push([g, f, index[&h]]);
            }
        }
    }
    let cat = FiniteCategory::new(objects, named, (0..sizes.len()).collect(), &triples)?;
    let functor = FunctorData::new(&cat, sizes.to_vec(), arrows.into_iter().map(|a| a.2).collect())?;
    Ok((cat, functor))
}

/// `count` samples from one seed.
pub fn sample_categories(seed: u64, count: usize, bounds: &SampleBounds) -> Result<Vec<(FiniteCategory, FunctorData)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_concrete_category(&mut rng, bounds)).collect()
}

/// A random site: a preorder on up to `max_generators` generators and up to
/// `max_covers` covers whose members refine their targets.
pub fn random_site(rng: &mut ChaCha8Rng, max_generators: usize, max_covers: usize) -> Site {
    let k = rng.gen_range(1..=max_generators);
    let names = (0..k).map(|i| format!("g{i}")).collect();
    let pairs: Vec<[usize; 2]> = (0..rng.gen_range(0..=k)).map(|_| [rng.gen_range(0..k), rng.gen_range(0..k)]).collect();
    let (base, _) = Preorder::closure_of(names, &pairs).expect("indices in range");
    let pick = |rng: &mut ChaCha8Rng, p: f64| -> GenSet { (0..k).filter(|_| rng.gen_bool(p)).collect() };
    let covers = (0..rng.gen_range(0..=max_covers))
        .map(|_| {
            let target = pick(rng, 0.2);
            let family = (0..rng.gen_range(0..=3)).map(|_| target.union(&pick(rng, 0.25))).collect();
            Cover { target, family }
        })
        .collect();
    Site::new(base, covers).expect("members refine their targets")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_respect_bounds() {
        let b = SampleBounds::default();
        for (cat, f) in sample_categories(1, 50, &b).unwrap() {
            assert!(cat.object_count() <= b.max_objects);
            assert!(cat.arrows().len() <= b.max_arrows);
            assert!(f.values.iter().all(|&v| (1..=b.max_value).contains(&v)));
        }
    }

    #[test]
    fn deterministic() {
        let b = SampleBounds::default();
        let a = sample_categories(9, 5, &b).unwrap();
        let c = sample_categories(9, 5, &b).unwrap();
        assert!(a.iter().zip(&c).all(|(x, y)| x.0 == y.0 && x.1 == y.1));
    }
}
