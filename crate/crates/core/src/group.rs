//! Finite groups given by Cayley tables, with subgroup machinery.
//!
//! Products compose like functions: `mul(g, h)` acts by `h` first, so a left
//! action satisfies `act(mul(g, h), x) = act(g, act(h, x))`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

pub const DEFAULT_MAX_GROUP_ORDER: usize = 24;
/// Subsets of a group are stored as 64-bit masks.
pub const MAX_SUBSET_GROUP_ORDER: usize = 64;

/// A subset of group elements as a bitmask.
pub type ElemSet = u64;

pub fn elems(s: ElemSet) -> Vec<usize> {
    (0..64).filter(|&i| s & (1 << i) != 0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<u32>>,
    identity: usize,
    inverse: Vec<u32>,
    labels: Vec<String>,
    /// Permutation data when the group was built from permutations.
    perms: Option<PermData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct PermData {
    degree: usize,
    generators: Vec<Vec<usize>>,
    elements: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<(Vec<String>, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl FiniteGroup {
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {} instead of {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGroup(format!("row {i} contains out-of-range entry {bad}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![0u32; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            let y = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            *inv = y as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::InvalidGroup(format!("{} labels for {n} elements", l.len())));
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let table = table.into_iter().map(|r| r.into_iter().map(|v| v as u32).collect()).collect();
        Ok(FiniteGroup { name: name.into(), table, identity, inverse, labels, perms: None })
    }

    pub fn from_mul(
        name: impl Into<String>,
        labels: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::from_table(name, table, Some(labels))
    }

    /// Group generated by permutations of `0..degree` (images lists).
    pub fn from_permutations(name: impl Into<String>, generators: Vec<Vec<usize>>, degree: usize) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&v| v >= degree || std::mem::replace(&mut seen[v], true)) {
                return Err(Error::InvalidGroup(format!("generator {i} is not a permutation of degree {degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let p = compose(g, &elements[x]);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let table: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&compose(&elements[a], &elements[b])]).collect()).collect();
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        let mut g = FiniteGroup::from_table(name, table, Some(labels))?;
        g.perms = Some(PermData { degree, generators, elements });
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("Z0 is not finite".into()));
        }
        FiniteGroup::from_mul(format!("Z{n}"), (0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let gens = match n {
            0 | 1 => vec![],
            2 => vec![vec![1, 0]],
            _ => {
                let mut t: Vec<usize> = (0..n).collect();
                t.swap(0, 1);
                let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                vec![t, c]
            }
        };
        FiniteGroup::from_permutations(format!("S{n}"), gens, n.max(1))
    }

    pub fn alternating4() -> Result<Self> {
        FiniteGroup::from_permutations("A4", vec![vec![1, 2, 0, 3], vec![0, 2, 3, 1]], 4)
    }

    /// Dihedral group of order `2n`: `r^k s^j` stored at `k + n j`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let labels = (0..2 * n)
            .map(|i| match (i % n, i / n) {
                (0, 0) => "e".to_string(),
                (k, 0) => format!("r{k}"),
                (0, _) => "s".to_string(),
                (k, _) => format!("r{k}s"),
            })
            .collect();
        FiniteGroup::from_mul(format!("D{n}"), labels, |a, b| {
            let (k, j) = (a % n, a / n);
            let (l, m) = (b % n, b / n);
            let rot = if j == 0 { (k + l) % n } else { (k + n - l) % n };
            rot + n * ((j + m) % 2)
        })
    }

    /// Dicyclic group of order `4n`: `a^k x^j`, `x a x^-1 = a^-1`, `x^2 = a^n`.
    pub fn dicyclic(n: usize) -> Result<Self> {
        let m = 2 * n;
        let labels = (0..2 * m)
            .map(|i| match (i % m, i / m) {
                (0, 0) => "e".to_string(),
                (k, 0) => format!("a{k}"),
                (0, _) => "x".to_string(),
                (k, _) => format!("a{k}x"),
            })
            .collect();
        let name = if n == 2 { "Q8".to_string() } else { format!("Dic{n}") };
        FiniteGroup::from_mul(name, labels, |a, b| {
            let (k, j) = (a % m, a / m);
            let (l, jj) = (b % m, b / m);
            let mut rot = if j == 0 { (k + l) % m } else { (k + m - l) % m };
            if j == 1 && jj == 1 {
                rot = (rot + n) % m;
            }
            rot + m * ((j + jj) % 2)
        })
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let nb = b.order();
        let labels = (0..a.order() * nb).map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb))).collect();
        FiniteGroup::from_mul(format!("{}x{}", a.name, b.name), labels, |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
    }

    /// Built-in groups by name: `Zn`, `Sn` (n <= 4), `A4`, `Dn` (order 2n),
    /// `Q8`, `Dicn`, `V4`, and products written `AxB`.
    pub fn builtin(name: &str) -> Result<Self> {
        let bad = || Error::input("--group", format!("unknown group `{name}`"));
        if let Some((l, r)) = name.split_once('x') {
            if !l.is_empty() && !r.is_empty() && !name.starts_with("Dic") {
                let g = FiniteGroup::direct_product(&FiniteGroup::builtin(l)?, &FiniteGroup::builtin(r)?)?;
                return Ok(g.renamed(name));
            }
        }
        let num = |prefix: &str| -> Option<usize> {
            name.strip_prefix(prefix).map(|s| s.trim_start_matches('/')).and_then(|s| s.parse().ok())
        };
        let g = match name {
            "1" | "trivial" | "Z1" => FiniteGroup::cyclic(1),
            "Q8" => FiniteGroup::dicyclic(2),
            "A4" => FiniteGroup::alternating4(),
            "V4" | "Klein" => Ok(FiniteGroup::direct_product(&FiniteGroup::cyclic(2)?, &FiniteGroup::cyclic(2)?)?.renamed("V4")),
            _ if name.starts_with("Dic") => FiniteGroup::dicyclic(num("Dic").filter(|&n| n >= 2).ok_or_else(bad)?),
            _ if name.starts_with('Z') || name.starts_with('C') => {
                let n = num(&name[..1]).filter(|&n| n >= 1).ok_or_else(bad)?;
                FiniteGroup::cyclic(n).map(|g| g.renamed(&format!("Z{n}")))
            }
            _ if name.starts_with('S') => match num("S") {
                Some(n @ 1..=4) => FiniteGroup::symmetric(n),
                _ => Err(bad()),
            },
            _ if name.starts_with('D') => match num("D") {
                Some(n) if n >= 2 => FiniteGroup::dihedral(n),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }?;
        Ok(g)
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn from_json(doc: &GroupJson) -> Result<Self> {
        let name = doc.name.clone().unwrap_or_else(|| "G".into());
        match (&doc.permutations, &doc.cayley) {
            (Some((gens, degree)), None) => {
                let parsed = gens
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        parse_cycles(s, *degree)
                            .map_err(|m| Error::input(format!("permutations[0][{i}]"), m))
                    })
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_permutations(name, parsed, *degree)
            }
            (None, Some(table)) => FiniteGroup::from_table(name, table.clone(), doc.labels.clone())
                .map_err(|e| Error::input("cayley", e.to_string())),
            _ => Err(Error::input("group", "expected exactly one of `permutations` or `cayley`")),
        }
    }

    pub fn to_json(&self) -> GroupJson {
        match &self.perms {
            Some(p) => GroupJson {
                name: Some(self.name.clone()),
                permutations: Some((p.generators.iter().map(|g| cycle_notation(g)).collect(), p.degree)),
                cayley: None,
                labels: None,
            },
            None => GroupJson {
                name: Some(self.name.clone()),
                permutations: None,
                cayley: Some(self.table.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect()),
                labels: Some(self.labels.clone()),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    /// Permutation of `0..degree` realizing `g`, when available.
    pub fn permutation(&self, g: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p.elements[g].as_slice())
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p.degree)
    }

    /// Element given by cycle notation, for permutation groups.
    pub fn element_from_cycles(&self, s: &str) -> Result<usize> {
        let p = self.perms.as_ref().ok_or_else(|| {
            Error::input("--subgroup", format!("{} is not a permutation group; use element labels", self.name))
        })?;
        let perm = parse_cycles(s, p.degree).map_err(|m| Error::input("--subgroup", m))?;
        p.elements
            .iter()
            .position(|e| *e == perm)
            .ok_or_else(|| Error::input("--subgroup", format!("{s} is not an element of {}", self.name)))
    }

    /// Element by label or, for permutation groups, by cycle notation.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if let Some(i) = self.labels.iter().position(|l| l == s) {
            return Ok(i);
        }
        self.element_from_cycles(s)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(g, x);
            k += 1;
        }
        k
    }

    fn check_subset_capacity(&self) -> Result<()> {
        if self.order() > MAX_SUBSET_GROUP_ORDER {
            return Err(Error::capacity("group order for subgroup computations", self.order(), MAX_SUBSET_GROUP_ORDER));
        }
        Ok(())
    }

    pub fn all(&self) -> ElemSet {
        if self.order() == 64 {
            u64::MAX
        } else {
            (1u64 << self.order()) - 1
        }
    }

    /// Subgroup generated by a set of elements.
    pub fn generated(&self, gens: ElemSet) -> ElemSet {
        let mut set: ElemSet = 1 << self.identity;
        let mut frontier = vec![self.identity];
        let gl = elems(gens);
        while let Some(x) = frontier.pop() {
            for &g in &gl {
                let y = self.mul(x, g);
                if set & (1 << y) == 0 {
                    set |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, s: ElemSet) -> bool {
        s & (1 << self.identity) != 0
            && elems(s).iter().all(|&a| elems(s).iter().all(|&b| s & (1 << self.mul(a, self.inv(b))) != 0))
    }

    pub fn conjugate(&self, h: ElemSet, g: usize) -> ElemSet {
        let gi = self.inv(g);
        elems(h).iter().fold(0, |acc, &x| acc | 1 << self.mul(self.mul(g, x), gi))
    }

    pub fn is_normal(&self, h: ElemSet) -> bool {
        (0..self.order()).all(|g| self.conjugate(h, g) == h)
    }

    /// Smallest normal subgroup containing `h`.
    pub fn normal_closure(&self, h: ElemSet) -> ElemSet {
        let conj = (0..self.order()).fold(0, |acc, g| acc | self.conjugate(h, g));
        self.generated(conj)
    }

    /// All subgroups, ordered by size and then by sorted element list.
    pub fn subgroups(&self) -> Result<Vec<ElemSet>> {
        self.check_subset_capacity()?;
        let cyclic: Vec<ElemSet> = {
            let mut c: Vec<ElemSet> = (0..self.order()).map(|g| self.generated(1 << g)).collect();
            c.sort_unstable();
            c.dedup();
            c
        };
        let mut seen: HashSet<ElemSet> = cyclic.iter().copied().collect();
        let mut queue: VecDeque<ElemSet> = cyclic.iter().copied().collect();
        while let Some(h) = queue.pop_front() {
            for &c in &cyclic {
                if c & !h != 0 {
                    let j = self.generated(h | c);
                    if seen.insert(j) {
                        queue.push_back(j);
                    }
                }
            }
        }
        let mut all: Vec<ElemSet> = seen.into_iter().collect();
        all.sort_by_key(|&s| (s.count_ones(), elems(s)));
        Ok(all)
    }

    /// Conjugacy classes of subgroups. Each class lists its members with the
    /// representative (least sorted element list) first; classes are ordered
    /// by decreasing subgroup size, then by representative.
    pub fn subgroup_classes(&self) -> Result<Vec<Vec<ElemSet>>> {
        let subs = self.subgroups()?;
        let mut done: HashSet<ElemSet> = HashSet::new();
        let mut classes = Vec::new();
        for &h in &subs {
            if done.contains(&h) {
                continue;
            }
            let mut class: Vec<ElemSet> = (0..self.order()).map(|g| self.conjugate(h, g)).collect();
            class.sort_by_key(|&s| elems(s));
            class.dedup();
            done.extend(class.iter().copied());
            classes.push(class);
        }
        classes.sort_by_key(|c| (std::cmp::Reverse(c[0].count_ones()), elems(c[0])));
        Ok(classes)
    }

    /// A short generating list for a subgroup (greedy in element order).
    pub fn generators_of(&self, h: ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur: ElemSet = 1 << self.identity;
        for x in elems(h) {
            if cur & (1 << x) == 0 {
                gens.push(x);
                cur = self.generated(cur | 1 << x);
            }
        }
        gens
    }

    pub fn describe_subgroup(&self, h: ElemSet) -> String {
        if h == self.all() {
            return self.name.clone();
        }
        let gens = self.generators_of(h);
        if gens.is_empty() {
            return "1".into();
        }
        let g: Vec<&str> = gens.iter().map(|&x| self.label(x)).collect();
        format!("<{}>", g.join(", "))
    }

    /// Projection onto the quotient by a normal subgroup.
    pub fn quotient(self: &Arc<Self>, n: ElemSet) -> Result<GroupHom> {
        if !self.is_subgroup(n) || !self.is_normal(n) {
            return Err(Error::InvalidGroup("quotient by a subset that is not a normal subgroup".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        let order: Vec<usize> = std::iter::once(self.identity).chain((0..self.order()).filter(|&g| g != self.identity)).collect();
        for g in order {
            if coset_of[g] == usize::MAX {
                for x in elems(n) {
                    coset_of[self.mul(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", self.label(r))).collect();
        let q = FiniteGroup::from_mul(
            format!("{}/{}", self.name, self.describe_subgroup(n)),
            labels,
            |a, b| coset_of[self.mul(reps[a], reps[b])],
        )?;
        GroupHom::new(self.clone(), Arc::new(q), coset_of)
    }
}

/// `(p ∘ q)(i) = p(q(i))`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// Cycle notation with points numbered from 1; the identity is `()`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i];
        }
        out += &format!("({})", cycle.join(" "));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Parses cycle notation such as `(1 2)(3 4)` or `(1,2,3)` into images.
pub fn parse_cycles(s: &str, degree: usize) -> std::result::Result<Vec<usize>, String> {
    let mut p: Vec<usize> = (0..degree).collect();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(|| format!("unclosed cycle in `{s}`"))?;
        let body = rest.strip_prefix('(').ok_or_else(|| format!("expected `(` in `{s}`"))?;
        let inner = &body[..body_end - 1];
        let pts: Vec<usize> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| format!("bad point `{t}` in `{s}`")))
            .collect::<std::result::Result<_, _>>()?;
        for &x in &pts {
            if x == 0 || x > degree {
                return Err(format!("point {x} outside 1..={degree}"));
            }
        }
        let mut uniq = pts.clone();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != pts.len() {
            return Err(format!("repeated point in cycle `{inner}`"));
        }
        // Products of cycles compose right to left.
        let mut c: Vec<usize> = (0..degree).collect();
        for w in 0..pts.len() {
            c[pts[w] - 1] = pts[(w + 1) % pts.len()] - 1;
        }
        p = compose(&p, &c);
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(p)
}

/// A homomorphism of finite groups, given on elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::InvalidGroup("homomorphism table has the wrong length".into()));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::InvalidGroup(format!("homomorphism value {bad} out of range")));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidGroup(format!(
                        "not a homomorphism at ({}, {})",
                        source.label(a),
                        source.label(b)
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let map = (0..g.order()).collect();
        GroupHom { source: g.clone(), target: g, map }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Some target element outside the image, if any.
    pub fn missing_from_image(&self) -> Option<usize> {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.iter().position(|&h| !h)
    }

    pub fn kernel(&self) -> ElemSet {
        (0..self.source.order()).filter(|&g| self.map[g] == self.target.identity()).fold(0, |acc, g| acc | 1 << g)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> GroupHom {
        let map = self.map.iter().map(|&g| next.map[g]).collect();
        GroupHom { source: self.source.clone(), target: next.target.clone(), map }
    }

    pub fn preimage(&self, w: ElemSet) -> ElemSet {
        (0..self.source.order()).filter(|&g| w & (1 << self.map[g]) != 0).fold(0, |acc, g| acc | 1 << g)
    }

    pub fn image(&self, u: ElemSet) -> ElemSet {
        elems(u).iter().fold(0, |acc, &g| acc | 1 << self.map[g])
    }

    /// Every homomorphism `source -> target`, by assigning images to a
    /// generating set and extending along words.
    pub fn all(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Vec<GroupHom> {
        let gens = source.generators_of(source.all());
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            if let Some(map) = extend(source, target, &gens, &choice) {
                out.push(GroupHom { source: source.clone(), target: target.clone(), map });
            }
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < target.order() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                return out;
            }
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.missing_from_image().is_none()
    }
}

fn extend(source: &FiniteGroup, target: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[source.identity()] = target.identity();
    let mut queue = VecDeque::from([source.identity()]);
    while let Some(g) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let gs = source.mul(g, s);
            let v = target.mul(map[g], t);
            if map[gs] == usize::MAX {
                map[gs] = v;
                queue.push_back(gs);
            } else if map[gs] != v {
                return None;
            }
        }
    }
    let hom = (0..source.order()).all(|a| (0..source.order()).all(|b| map[source.mul(a, b)] == target.mul(map[a], map[b])));
    hom.then_some(map)
}
