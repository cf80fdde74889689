//! Independent oracles shared by the integration tests. None of these call
//! the routines they are used to check.
#![allow(dead_code, clippy::needless_range_loop)]

use localic::bitset::Bits;
use localic::category::{FiniteCategory, FunctorData};
use localic::group::{elems, ElemSet, FiniteGroup};
use localic::gset::GSet;
use localic::locale::Frame;
use localic::prodiscrete::GroupChain;
use localic::wraith::Kind;
use std::sync::Arc;

/// Every group of order at most 12, up to isomorphism.
pub const SMALL_GROUPS: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8", "Z9", "Z3xZ3", "Z10", "D5",
    "Z11", "Z12", "Z2xZ6", "A4", "D6", "Dic3",
];

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::builtin(name).unwrap())
}

pub fn subgroup_of(g: &FiniteGroup, gens: &[&str]) -> ElemSet {
    let mut s: ElemSet = 0;
    for x in gens {
        s |= 1 << g.parse_element(x).unwrap();
    }
    g.generated(s)
}

/// `H` is normal iff it contains every conjugate of its elements.
pub fn normal_by_conjugation(g: &FiniteGroup, h: ElemSet) -> bool {
    (0..g.order()).all(|x| elems(h).iter().all(|&y| h & (1 << g.mul(g.mul(x, y), g.inv(x))) != 0))
}

/// `core(H) = {y : x⁻¹ y x ∈ H for all x}`.
pub fn normal_core(g: &FiniteGroup, h: ElemSet) -> ElemSet {
    (0..g.order()).filter(|&y| (0..g.order()).all(|x| h & (1 << g.mul(g.mul(g.inv(x), y), x)) != 0)).fold(0, |a, y| a | 1 << y)
}

/// Every subset closed under multiplication that contains the identity.
pub fn subgroups_brute(g: &FiniteGroup) -> Vec<ElemSet> {
    assert!(g.order() <= 16);
    let mut out = Vec::new();
    for s in 0u64..(1 << g.order()) {
        if s & (1 << g.identity()) == 0 {
            continue;
        }
        let es = elems(s);
        if es.iter().all(|&a| es.iter().all(|&b| s & (1 << g.mul(a, b)) != 0)) {
            out.push(s);
        }
    }
    out
}

/// Every function `X -> Y` that commutes with the action.
pub fn homs_brute(x: &GSet, y: &GSet) -> Vec<Vec<usize>> {
    let (n, m) = (x.len(), y.len());
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        let ok = (0..x.group().order()).all(|g| (0..n).all(|p| f[x.act(g, p)] == y.act(g, f[p])));
        if ok {
            out.push(f.clone());
        }
        let mut i = 0;
        while i < n {
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

/// `|hom(G/H, G/K)|` = number of cosets `gK` with `g⁻¹Hg ⊆ K`.
pub fn coset_hom_count(g: &FiniteGroup, h: ElemSet, k: ElemSet) -> usize {
    let mut seen: Vec<ElemSet> = Vec::new();
    let mut count = 0;
    for x in 0..g.order() {
        let coset = elems(k).iter().fold(0u64, |a, &y| a | 1 << g.mul(x, y));
        if seen.contains(&coset) {
            continue;
        }
        seen.push(coset);
        if elems(h).iter().all(|&y| k & (1 << g.mul(g.mul(g.inv(x), y), x)) != 0) {
            count += 1;
        }
    }
    count
}

/// `X` is split by `U` when, over each orbit `U_i`, `X × U_i ≅ S × U_i` for
/// a trivial `S`. Searches for the fibrewise bijection at a base point and
/// spreads it equivariantly.
pub fn split_definitional(u: &GSet, x: &GSet) -> bool {
    let g = u.group();
    let n = x.len();
    let mut done = vec![false; u.len()];
    for u0 in 0..u.len() {
        if done[u0] {
            continue;
        }
        let orbit: Vec<usize> = {
            let mut o: Vec<usize> = (0..g.order()).map(|k| u.act(k, u0)).collect();
            o.sort_unstable();
            o.dedup();
            o
        };
        for &p in &orbit {
            done[p] = true;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut found = false;
        permutations(&mut perm, 0, &mut |phi| {
            // table[(x, u)] = label in S
            let mut table = vec![usize::MAX; n * u.len()];
            for k in 0..g.order() {
                for p in 0..n {
                    let slot = x.act(k, p) * u.len() + u.act(k, u0);
                    if table[slot] == usize::MAX {
                        table[slot] = phi[p];
                    } else if table[slot] != phi[p] {
                        return false;
                    }
                }
            }
            found = true;
            true
        });
        if !found {
            return false;
        }
    }
    true
}

fn permutations(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if i == v.len() {
        return f(v);
    }
    for j in i..v.len() {
        v.swap(i, j);
        if permutations(v, i + 1, f) {
            v.swap(i, j);
            return true;
        }
        v.swap(i, j);
    }
    false
}

/// Natural relations, transformations or bijections `F => G`, counted by
/// enumerating families.
pub fn count_natural(kind: Kind, cat: &FiniteCategory, f: &FunctorData, g: &FunctorData) -> usize {
    let objs = cat.object_count();
    let natural = |rel: &dyn Fn(usize, usize, usize) -> bool| -> bool {
        cat.arrows().iter().enumerate().all(|(k, a)| {
            (0..f.values[a.src]).all(|p| (0..g.values[a.src]).all(|q| !rel(a.src, p, q) || rel(a.dst, f.maps[k][p], g.maps[k][q])))
        })
    };
    match kind {
        Kind::Relations => {
            let mut offs = vec![0];
            for x in 0..objs {
                offs.push(offs[x] + f.values[x] * g.values[x]);
            }
            let bits = offs[objs];
            assert!(bits <= 22, "too many pairs for brute force");
            (0u64..1 << bits)
                .filter(|&s| natural(&|x, p, q| s & (1 << (offs[x] + p * g.values[x] + q)) != 0))
                .count()
        }
        Kind::Functions | Kind::Bijections => {
            let slots: Vec<(usize, usize)> = (0..objs).flat_map(|x| (0..f.values[x]).map(move |p| (x, p))).collect();
            if slots.iter().any(|&(x, _)| g.values[x] == 0) {
                return 0;
            }
            let mut choice = vec![0usize; slots.len()];
            let mut count = 0;
            loop {
                let value = |x: usize, p: usize| choice[slots.iter().position(|&s| s == (x, p)).unwrap()];
                let ok = natural(&|x, p, q| value(x, p) == q)
                    && (kind == Kind::Functions
                        || (0..objs).all(|x| {
                            let mut img: Vec<usize> = (0..f.values[x]).map(|p| value(x, p)).collect();
                            img.sort_unstable();
                            img.dedup();
                            img.len() == f.values[x] && f.values[x] == g.values[x]
                        }));
                if ok {
                    count += 1;
                }
                let mut i = 0;
                while i < slots.len() {
                    choice[i] += 1;
                    if choice[i] < g.values[slots[i].0] {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == slots.len() {
                    return count;
                }
            }
        }
    }
}

/// Smallest stage whose factored action table is well defined.
pub fn factor_stage_oracle(chain: &GroupChain, x: &GSet) -> usize {
    let top = chain.len() - 1;
    for s in 0..=top {
        let p = chain.projection(top, s);
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; chain.stage(s).order()];
        let mut ok = true;
        for k in 0..chain.top().order() {
            let row: Vec<usize> = (0..x.len()).map(|q| x.act(k, q)).collect();
            match &rows[p.apply(k)] {
                None => rows[p.apply(k)] = Some(row),
                Some(r) if *r != row => ok = false,
                _ => {}
            }
        }
        if ok {
            return s;
        }
    }
    unreachable!("the top stage always factors")
}

/// The least fixpoint of the coverage rules above the down-closure of
/// `seed`, by naive iteration.
pub fn saturate_naive(frame: &Frame, seed: &[usize]) -> Bits {
    let lat = frame.lattice();
    let n = lat.len();
    let mut s = Bits::zeros(n);
    for c in 0..n {
        if seed.iter().any(|&t| lat.leq(c, t)) {
            s.set(c);
        }
    }
    let covers: Vec<(usize, Vec<usize>)> = frame
        .site()
        .covers()
        .iter()
        .map(|cv| (lat.class_of(&cv.target), cv.family.iter().map(|f| lat.class_of(f)).collect()))
        .collect();
    loop {
        let mut changed = false;
        for c in 0..n {
            if s.get(c) {
                continue;
            }
            let add = covers.iter().any(|(t, fam)| lat.leq(c, *t) && fam.iter().all(|&m| s.get(lat.meet(c, m))));
            if add {
                for d in 0..n {
                    if lat.leq(d, c) {
                        s.set(d);
                    }
                }
                changed = true;
            }
        }
        if !changed {
            return s;
        }
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
