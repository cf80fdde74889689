//! Finite G-sets, equivariant maps and orbits.

use crate::error::{Error, Result};
use crate::group::{elems, ElemSet, FiniteGroup, GroupHom};
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    name: String,
    /// `act[g][x]`
    act: Vec<Vec<u32>>,
    labels: Vec<String>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.act == other.act && self.labels == other.labels
    }
}

impl Eq for GSet {}

pub fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GSet {
    /// Validates the action axioms; the error names an offending triple.
    pub fn new(group: Arc<FiniteGroup>, name: impl Into<String>, act: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if act.len() != group.order() {
            return Err(Error::InvalidAction(format!("{} rows for a group of order {}", act.len(), group.order())));
        }
        for (g, row) in act.iter().enumerate() {
            if row.len() != n || row.iter().any(|&y| y >= n) {
                return Err(Error::InvalidAction(format!("row of {} is not a map on {n} points", group.label(g))));
            }
        }
        let e = group.identity();
        if let Some(x) = (0..n).find(|&x| act[e][x] != x) {
            return Err(Error::InvalidAction(format!("identity moves point {}", labels[x])));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                for x in 0..n {
                    if act[gh][x] != act[g][act[h][x]] {
                        return Err(Error::InvalidAction(format!(
                            "(g, h, x) = ({}, {}, {}): (gh)x != g(hx)",
                            group.label(g),
                            group.label(h),
                            labels[x]
                        )));
                    }
                }
            }
        }
        let act = act.into_iter().map(|r| r.into_iter().map(|v| v as u32).collect()).collect();
        Ok(GSet { group, name: name.into(), act, labels })
    }

    fn unchecked(group: Arc<FiniteGroup>, name: String, act: Vec<Vec<u32>>, labels: Vec<String>) -> Self {
        GSet { group, name, act, labels }
    }

    pub fn trivial(group: Arc<FiniteGroup>, n: usize) -> Self {
        let act = vec![(0..n as u32).collect(); group.order()];
        let labels = (0..n).map(|i| i.to_string()).collect();
        let name = if n == 1 { "1".to_string() } else { format!("{n}") };
        GSet::unchecked(group, name, act, labels)
    }

    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let mut p = GSet::trivial(group, 1);
        p.labels = vec!["*".into()];
        p
    }

    /// The regular action by left multiplication.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let act = (0..n).map(|g| (0..n).map(|x| group.mul(g, x) as u32).collect()).collect();
        let labels = group.labels().to_vec();
        let name = format!("{}/1", group.name());
        GSet::unchecked(group, name, act, labels)
    }

    /// Left cosets `gH`, the coset `H` first.
    pub fn cosets(group: Arc<FiniteGroup>, h: ElemSet) -> Result<Self> {
        if !group.is_subgroup(h) {
            return Err(Error::InvalidGroup("coset action of a subset that is not a subgroup".into()));
        }
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let order = std::iter::once(group.identity()).chain((0..n).filter(|&g| g != group.identity()));
        for g in order {
            if coset_of[g] == usize::MAX {
                for x in elems(h) {
                    coset_of[group.mul(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        let act = (0..n).map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)] as u32).collect()).collect();
        let sub = group.describe_subgroup(h);
        let labels = reps.iter().map(|&r| if r == group.identity() { sub.clone() } else { format!("{}{}", group.label(r), sub) }).collect();
        let name = format!("{}/{}", group.name(), sub);
        Ok(GSet::unchecked(group, name, act, labels))
    }

    /// The defining action of a permutation group on `1..=degree`.
    pub fn natural(group: Arc<FiniteGroup>) -> Result<Self> {
        let degree = group
            .degree()
            .ok_or_else(|| Error::InvalidGroup(format!("{} is not a permutation group", group.name())))?;
        let act = (0..group.order()).map(|g| group.permutation(g).unwrap().iter().map(|&v| v as u32).collect()).collect();
        let labels = (1..=degree).map(|i| i.to_string()).collect();
        let name = format!("{} on {degree} points", group.name());
        Ok(GSet::unchecked(group, name, act, labels))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x] as usize
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.act.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    /// `{g : g x = y}`.
    pub fn transporter(&self, x: usize, y: usize) -> ElemSet {
        (0..self.group.order()).filter(|&g| self.act(g, x) == y).fold(0, |acc, g| acc | 1 << g)
    }

    pub fn stabilizer(&self, x: usize) -> ElemSet {
        self.transporter(x, x)
    }

    /// Elements acting as the identity.
    pub fn kernel(&self) -> ElemSet {
        (0..self.group.order()).filter(|&g| (0..self.len()).all(|x| self.act(g, x) == x)).fold(0, |acc, g| acc | 1 << g)
    }

    pub fn fixed_points(&self, h: ElemSet) -> Vec<usize> {
        (0..self.len()).filter(|&x| elems(h).iter().all(|&g| self.act(g, x) == x)).collect()
    }

    /// Orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.group.order()).map(|g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// The sub-G-set on a union of orbits, points in the given order.
    pub fn restrict_to(&self, points: &[usize]) -> Result<GSet> {
        let pos: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut act = Vec::with_capacity(self.group.order());
        for g in 0..self.group.order() {
            let mut row = Vec::with_capacity(points.len());
            for &x in points {
                let y = self.act(g, x);
                row.push(*pos.get(&y).ok_or_else(|| Error::InvalidAction("subset is not closed under the action".into()))? as u32);
            }
            act.push(row);
        }
        let labels = points.iter().map(|&x| self.labels[x].clone()).collect();
        Ok(GSet::unchecked(self.group.clone(), self.name.clone(), act, labels))
    }

    /// Cartesian product with the diagonal action; `(x, y)` at `x * |Y| + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        self.check_group(other)?;
        let m = other.len();
        let act = (0..self.group.order())
            .map(|g| (0..self.len() * m).map(|p| (self.act(g, p / m) * m + other.act(g, p % m)) as u32).collect())
            .collect();
        let labels = (0..self.len() * m).map(|p| format!("({},{})", self.labels[p / m], other.labels[p % m])).collect();
        Ok(GSet::unchecked(self.group.clone(), format!("{}x{}", self.name, other.name), act, labels))
    }

    /// Disjoint union; points of `other` follow those of `self`.
    pub fn sum(&self, other: &GSet) -> Result<GSet> {
        self.check_group(other)?;
        let n = self.len();
        let act = (0..self.group.order())
            .map(|g| {
                (0..n).map(|x| self.act[g][x]).chain((0..other.len()).map(|y| (n + other.act(g, y)) as u32)).collect()
            })
            .collect();
        let labels = self.labels.iter().map(|l| format!("{l}.0")).chain(other.labels.iter().map(|l| format!("{l}.1"))).collect();
        Ok(GSet::unchecked(self.group.clone(), format!("{}+{}", self.name, other.name), act, labels))
    }

    /// Restriction along a homomorphism `t: K -> G`: `k x = t(k) x`.
    pub fn restrict_along(&self, t: &GroupHom) -> Result<GSet> {
        if !same_group(t.target(), &self.group) {
            return Err(Error::GroupMismatch("homomorphism target differs from the acting group".into()));
        }
        let act = (0..t.source().order()).map(|k| self.act[t.apply(k)].clone()).collect();
        Ok(GSet::unchecked(t.source().clone(), self.name.clone(), act, self.labels.clone()))
    }

    /// Orbit of a tuple under the diagonal action on `∏ factors`, computed
    /// without building the product.
    pub fn tuple_orbit(factors: &[&GSet], tuple: &[usize]) -> Result<(GSet, Vec<Vec<usize>>)> {
        let group = factors.first().map(|f| f.group.clone()).ok_or_else(|| Error::Precondition("empty product".into()))?;
        for f in factors {
            if !same_group(&group, &f.group) {
                return Err(Error::GroupMismatch("factors act through different groups".into()));
            }
        }
        let apply = |g: usize, t: &[usize]| -> Vec<usize> { t.iter().zip(factors).map(|(&x, f)| f.act(g, x)).collect() };
        let mut points = vec![tuple.to_vec()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(tuple.to_vec(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in 0..group.order() {
                let t = apply(g, &points[i]);
                if !index.contains_key(&t) {
                    index.insert(t.clone(), points.len());
                    queue.push_back(points.len());
                    points.push(t);
                }
            }
        }
        let act = (0..group.order()).map(|g| points.iter().map(|t| index[&apply(g, t)] as u32).collect()).collect();
        let labels = points
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t.iter().zip(factors).map(|(&x, f)| f.label(x)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Ok((GSet::unchecked(group, "orbit".into(), act, labels), points))
    }

    fn check_group(&self, other: &GSet) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{} and {} are sets for different groups", self.name, other.name)))
        }
    }

    /// `act(g, f(x)) = f(act(g, x))` for all `g`, `x`.
    pub fn is_equivariant(&self, other: &GSet, map: &[usize]) -> bool {
        map.len() == self.len()
            && map.iter().all(|&y| y < other.len())
            && (0..self.group.order()).all(|g| (0..self.len()).all(|x| other.act(g, map[x]) == map[self.act(g, x)]))
    }

    /// `{g : gx = y} ⊆ {g : g f(x) = f(y)}` for all `x`, `y`.
    pub fn preserves_transporters(&self, other: &GSet, map: &[usize]) -> bool {
        map.len() == self.len()
            && (0..self.len()).all(|x| {
                (0..self.len()).all(|y| {
                    let t = self.transporter(x, y);
                    t & !other.transporter(map[x], map[y]) == 0
                })
            })
    }

    /// All equivariant maps `self -> other`, in lexicographic order of tables.
    ///
    /// A map is fixed by its values on orbit representatives, and a
    /// representative with stabilizer `H` can go to any `H`-fixed point.
    pub fn homs(&self, other: &GSet) -> Result<Vec<Vec<usize>>> {
        self.check_group(other)?;
        let orbits = self.orbits();
        let choices: Vec<Vec<usize>> = orbits.iter().map(|o| other.fixed_points(self.stabilizer(o[0]))).collect();
        // For each point, an element carrying its orbit representative to it.
        let mut carry = vec![(0usize, 0usize); self.len()];
        for (oi, o) in orbits.iter().enumerate() {
            for g in 0..self.group.order() {
                carry[self.act(g, o[0])] = (oi, g);
            }
        }
        let mut out = Vec::new();
        let mut pick = vec![0usize; orbits.len()];
        if choices.iter().any(|c| c.is_empty()) {
            return Ok(out);
        }
        loop {
            let map: Vec<usize> = (0..self.len())
                .map(|x| {
                    let (oi, g) = carry[x];
                    other.act(g, choices[oi][pick[oi]])
                })
                .collect();
            out.push(map);
            let mut i = orbits.len();
            loop {
                if i == 0 {
                    out.sort();
                    return Ok(out);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    pub fn isomorphism(&self, other: &GSet) -> Result<Option<Vec<usize>>> {
        if self.len() != other.len() {
            return Ok(None);
        }
        Ok(self.homs(other)?.into_iter().find(|m| is_bijective(m, other.len())))
    }

    pub fn is_isomorphic(&self, other: &GSet) -> Result<bool> {
        Ok(self.isomorphism(other)?.is_some())
    }

    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.homs(self).expect("same group").into_iter().filter(|m| is_bijective(m, self.len())).collect()
    }
}

pub fn is_bijective(map: &[usize], codomain: usize) -> bool {
    if map.len() != codomain {
        return false;
    }
    let mut hit = vec![false; codomain];
    map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
}

pub fn is_surjective(map: &[usize], codomain: usize) -> bool {
    let mut hit = vec![false; codomain];
    for &y in map {
        hit[y] = true;
    }
    hit.iter().all(|&h| h)
}

/// A validated equivariant map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSetMorphism {
    pub map: Vec<usize>,
}

impl GSetMorphism {
    /// Checks both characterizations of equivariance and that they agree.
    pub fn new(source: &GSet, target: &GSet, map: Vec<usize>) -> Result<Self> {
        source.check_group(target)?;
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::InvalidAction("map is not a function between the carriers".into()));
        }
        let a = source.is_equivariant(target, &map);
        let b = source.preserves_transporters(target, &map);
        if a != b {
            return Err(Error::Validation("equivariance characterizations disagree".into()));
        }
        if !a {
            return Err(Error::InvalidAction("map is not equivariant".into()));
        }
        Ok(GSetMorphism { map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin(name).unwrap())
    }

    #[test]
    fn regular_homs_match_carrier() {
        let z3 = g("Z3");
        let r = GSet::regular(z3.clone());
        assert_eq!(r.homs(&r).unwrap().len(), 3);
        let y = GSet::trivial(z3, 2).sum(&r).unwrap();
        assert_eq!(r.homs(&y).unwrap().len(), y.len());
    }

    #[test]
    fn s3_coset_homs() {
        let s3 = g("S3");
        let subs = s3.subgroups().unwrap();
        let t = subs.iter().copied().find(|s| s.count_ones() == 2).unwrap();
        let a3 = subs.iter().copied().find(|s| s.count_ones() == 3).unwrap();
        let x = GSet::cosets(s3.clone(), t).unwrap();
        let y = GSet::cosets(s3, a3).unwrap();
        assert_eq!(x.len(), 3);
        assert!(x.is_transitive());
        assert!(x.homs(&y).unwrap().is_empty());
    }

    #[test]
    fn natural_stabilizer() {
        let s3 = g("S3");
        let x = GSet::natural(s3.clone()).unwrap();
        let st = x.stabilizer(2);
        let labels: Vec<&str> = elems(st).iter().map(|&e| s3.label(e)).collect();
        assert_eq!(labels, vec!["()", "(1 2)"]);
    }

    #[test]
    fn invalid_action_names_triple() {
        let z2 = g("Z2");
        let err = GSet::new(z2, "bad", vec![vec![0, 1], vec![0, 0]], vec!["a".into(), "b".into()]).unwrap_err();
        assert!(matches!(err, Error::InvalidAction(m) if m.contains("(g, h, x)")));
    }

    #[test]
    fn orbits_of_trivial_action() {
        let x = GSet::trivial(g("Z2"), 2);
        assert_eq!(x.orbits(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn tuple_orbit_of_cosets() {
        let s3 = g("S3");
        let t = s3.subgroups().unwrap().into_iter().find(|s| s.count_ones() == 2).unwrap();
        let x = GSet::cosets(s3, t).unwrap();
        let (orbit, _) = GSet::tuple_orbit(&[&x, &x, &x], &[0, 1, 2]).unwrap();
        assert_eq!(orbit.len(), 6);
    }
}
