//! Points of a presented locale, found by backtracking over generators.
//!
//! A point is determined by the set `P` of generators it accepts: `P` must be
//! up-closed, and every basic cover whose target lies in `P` must have a
//! family member inside `P`.

use super::Site;
use crate::bitset::GenSet;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_POINTS: usize = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Val {
    Unknown,
    In,
    Out,
}

struct Solver<'a> {
    site: &'a Site,
    down: Vec<Vec<usize>>,
    val: Vec<Val>,
    trail: Vec<usize>,
    found: Vec<GenSet>,
    limit: usize,
}

/// All points in deterministic order.
pub fn enumerate_points(site: &Site) -> Result<Vec<GenSet>> {
    points_bounded(site, DEFAULT_MAX_POINTS)
}

pub fn points_bounded(site: &Site, max_points: usize) -> Result<Vec<GenSet>> {
    let k = site.generator_count();
    let base = site.base();
    let mut down = vec![Vec::new(); k];
    for (i, j) in base.pairs() {
        down[j].push(i);
    }
    let mut s = Solver { site, down, val: vec![Val::Unknown; k], trail: Vec::new(), found: Vec::new(), limit: max_points };
    if s.propagate() {
        s.search()?;
    }
    let mut pts = s.found;
    pts.sort();
    Ok(pts)
}

impl Solver<'_> {
    fn assign(&mut self, g: usize, v: Val) -> bool {
        let mut stack = vec![g];
        while let Some(i) = stack.pop() {
            match self.val[i] {
                Val::Unknown => {
                    self.val[i] = v;
                    self.trail.push(i);
                    if v == Val::In {
                        stack.extend(self.site.base().up_of(i).iter().filter(|&j| j != i));
                    } else {
                        stack.extend(self.down[i].iter().copied());
                    }
                }
                cur if cur != v => return false,
                _ => {}
            }
        }
        true
    }

    fn state(&self, set: &GenSet) -> (bool, bool, Option<usize>, usize) {
        // (all in, some out, an unknown member, unknown count)
        let mut some_out = false;
        let mut unknown = None;
        let mut n_unknown = 0;
        for g in set.iter() {
            match self.val[g] {
                Val::Out => some_out = true,
                Val::Unknown => {
                    unknown = Some(g);
                    n_unknown += 1;
                }
                Val::In => {}
            }
        }
        (!some_out && n_unknown == 0, some_out, unknown, n_unknown)
    }

    /// Unit propagation over the covers; false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for c in self.site.covers() {
                let (t_in, t_out, t_unknown, t_n) = self.state(&c.target);
                if t_out {
                    continue;
                }
                let mut open = Vec::new();
                let mut satisfied = false;
                for f in &c.family {
                    let (f_in, f_out, _, _) = self.state(f);
                    if f_in {
                        satisfied = true;
                        break;
                    }
                    if !f_out {
                        open.push(f);
                    }
                }
                if satisfied {
                    continue;
                }
                if t_in {
                    match open.len() {
                        0 => return false,
                        1 => {
                            let f = open[0].clone();
                            for g in f.iter() {
                                if !self.assign(g, Val::In) {
                                    return false;
                                }
                            }
                            changed = true;
                        }
                        _ => {}
                    }
                } else if open.is_empty() && t_n == 1 {
                    if !self.assign(t_unknown.unwrap(), Val::Out) {
                        return false;
                    }
                    changed = true;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let g = self.trail.pop().unwrap();
            self.val[g] = Val::Unknown;
        }
    }

    fn search(&mut self) -> Result<()> {
        let Some(g) = self.val.iter().position(|&v| v == Val::Unknown) else {
            self.found.push(GenSet::from_indices((0..self.val.len()).filter(|&i| self.val[i] == Val::In)));
            if self.found.len() > self.limit {
                return Err(Error::capacity("point enumeration", self.found.len(), self.limit));
            }
            return Ok(());
        };
        for v in [Val::In, Val::Out] {
            let mark = self.trail.len();
            if self.assign(g, v) && self.propagate() {
                self.search()?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}
