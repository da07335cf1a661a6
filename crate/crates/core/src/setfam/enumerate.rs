use crate::error::{Error, Result};
use crate::points::PointSet;

use super::cover::can_hit;
use super::{KSet, Params, SetFamily};

/// All k-subsets of `[n]` in lexicographic order.
pub fn gen_ksubsets(p: Params) -> Result<KSubsets> {
    let p = Params::new(p.n(), p.k())?;
    Ok(KSubsets {
        n: p.n(),
        current: Some((1..=p.k()).collect()),
    })
}

pub struct KSubsets {
    n: u32,
    current: Option<Vec<u32>>,
}

impl Iterator for KSubsets {
    type Item = KSet;

    fn next(&mut self) -> Option<KSet> {
        let cur = self.current.as_mut()?;
        let out = KSet::from_points_unchecked(self.n, cur.iter().copied().collect());
        let k = cur.len();
        // rightmost position that can still be bumped
        let pos = (0..k).rev().find(|&i| cur[i] < self.n - (k - 1 - i) as u32);
        match pos {
            Some(i) => {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

/// Unclaimed k-sets meeting every member of `claimed`, lexicographically.
///
/// The board is never materialised: a depth-first walk over sorted element
/// prefixes is pruned by an exact hitting-set test, so the first few legal
/// moves are cheap even when `binomial(n, k)` is astronomically large.
pub fn legal_moves(claimed: &SetFamily) -> Result<LegalMoves<'_>> {
    LegalMoves::new(claimed, PointSet::new())
}

pub struct LegalMoves<'a> {
    claimed: &'a SetFamily,
    members: Vec<PointSet>,
    n: u32,
    k: usize,
    required: PointSet,
    chosen: Vec<u32>,
    next: u32,
    done: bool,
}

impl<'a> LegalMoves<'a> {
    /// Legal moves that contain every point of `required`.
    pub fn new(claimed: &'a SetFamily, required: PointSet) -> Result<Self> {
        claimed.require_intersecting()?;
        let p = claimed.params();
        if required.len() > p.k() as usize || required.last().is_some_and(|m| m > p.n()) {
            return Err(Error::param(format!(
                "required points {required} do not fit in a {}-subset of [{}]",
                p.k(),
                p.n()
            )));
        }
        Ok(LegalMoves {
            claimed,
            members: claimed.iter().map(|m| m.points().clone()).collect(),
            n: p.n(),
            k: p.k() as usize,
            required,
            chosen: Vec::new(),
            next: 1,
            done: false,
        })
    }

    fn partial_with(&self, x: u32) -> PointSet {
        let mut s: PointSet = self.chosen.iter().copied().collect();
        s.insert(x);
        &s | &self.required
    }

    /// Can `chosen + x + required` be completed with points above `x`?
    fn feasible(&self, x: u32) -> bool {
        let partial = self.partial_with(x);
        if partial.len() > self.k {
            return false;
        }
        let slots = self.k - partial.len();
        let free_above = (self.n - x) as usize - partial.above(x).len();
        if free_above < slots {
            return false;
        }
        let uncovered: Vec<PointSet> = self
            .members
            .iter()
            .filter(|m| !m.meets(&partial))
            .map(|m| m.above(x))
            .collect();
        can_hit(&uncovered, slots)
    }

    fn backtrack(&mut self) {
        match self.chosen.pop() {
            Some(x) => self.next = x + 1,
            None => self.done = true,
        }
    }
}

impl Iterator for LegalMoves<'_> {
    type Item = KSet;

    fn next(&mut self) -> Option<KSet> {
        loop {
            if self.done {
                return None;
            }
            if self.chosen.len() == self.k {
                let set =
                    KSet::from_points_unchecked(self.n, self.chosen.iter().copied().collect());
                self.backtrack();
                if !self.claimed.contains(&set) {
                    return Some(set);
                }
                continue;
            }
            let last = self.chosen.last().copied().unwrap_or(0);
            let limit = self.required.above(last).first().unwrap_or(self.n);
            if self.next > limit {
                self.backtrack();
                continue;
            }
            let x = self.next;
            self.next += 1;
            if self.feasible(x) {
                self.chosen.push(x);
                self.next = x + 1;
            }
        }
    }
}
