//! k-subsets of `[n]`, claimed families, and the family-level quantities the
//! games are scored and certified with.

mod bounds;
mod cover;
mod enumerate;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::points::PointSet;

pub use bounds::{
    binomial, check_disjointness_certificate, check_size_bounds, degree_j, CoverCertificate,
    SizeBoundReport,
};
pub use cover::{can_hit, covering_number, covering_number_exhaustive};
pub use enumerate::{gen_ksubsets, legal_moves, KSubsets, LegalMoves};

/// Largest supported universe.
pub const MAX_N: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    n: u32,
    k: u32,
}

impl Params {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::param(format!(
                "need 1 <= k <= n, got n = {n}, k = {k}"
            )));
        }
        if n > MAX_N {
            return Err(Error::param(format!(
                "n = {n} exceeds the supported maximum {MAX_N}"
            )));
        }
        Ok(Params { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of board elements, `binomial(n, k)`, saturating at `u128::MAX`.
    pub fn board_size(&self) -> u128 {
        binomial(self.n as u64, self.k as u64).unwrap_or(u128::MAX)
    }

    pub fn universe(&self) -> PointSet {
        PointSet::range(1, self.n)
    }
}

/// A k-element subset of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KSet {
    n: u32,
    points: PointSet,
}

impl KSet {
    pub fn new(p: Params, elements: impl IntoIterator<Item = u32>) -> Result<Self> {
        Self::from_points(p, elements.into_iter().collect())
    }

    pub fn from_points(p: Params, points: PointSet) -> Result<Self> {
        if points.len() != p.k as usize {
            return Err(Error::param(format!(
                "{points} has {} distinct elements, expected k = {}",
                points.len(),
                p.k
            )));
        }
        if points.first() == Some(0) || points.last().is_some_and(|m| m > p.n) {
            return Err(Error::param(format!("{points} is not inside [1, {}]", p.n)));
        }
        Ok(KSet { n: p.n, points })
    }

    pub(crate) fn from_points_unchecked(n: u32, points: PointSet) -> Self {
        KSet { n, points }
    }

    pub fn universe_size(&self) -> u32 {
        self.n
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn elements(&self) -> Vec<u32> {
        self.points.to_vec()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: u32) -> bool {
        self.points.contains(p)
    }

    /// Unchecked intersection test; see [`intersects`] for the checked form.
    pub fn meets(&self, other: &KSet) -> bool {
        self.points.meets(&other.points)
    }
}

impl Ord for KSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.points.cmp(&other.points).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.points)
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.points)
    }
}

pub fn intersects(a: &KSet, b: &KSet) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::param(format!(
            "sets {a} and {b} live in different universes ([{}] vs [{}])",
            a.n, b.n
        )));
    }
    Ok(a.meets(b))
}

/// Ordered, duplicate-free collection of k-sets. Insertion order is kept as
/// the game history; whether the family is intersecting is tracked but not
/// enforced.
#[derive(Clone)]
pub struct SetFamily {
    params: Params,
    members: Vec<KSet>,
    index: HashSet<KSet>,
    intersecting: bool,
}

impl SetFamily {
    pub fn new(params: Params) -> Self {
        SetFamily {
            params,
            members: Vec::new(),
            index: HashSet::new(),
            intersecting: true,
        }
    }

    pub fn from_sets(params: Params, sets: impl IntoIterator<Item = KSet>) -> Result<Self> {
        let mut fam = SetFamily::new(params);
        for s in sets {
            fam.push(s)?;
        }
        Ok(fam)
    }

    /// Builds a family from element lists, validating each against `params`.
    pub fn from_lists<I, S>(params: Params, lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = u32>,
    {
        let mut fam = SetFamily::new(params);
        for l in lists {
            fam.push(KSet::new(params, l)?)?;
        }
        Ok(fam)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn push(&mut self, set: KSet) -> Result<()> {
        if set.n != self.params.n || set.len() != self.params.k as usize {
            return Err(Error::param(format!(
                "{set} does not belong to the board of {}-subsets of [{}]",
                self.params.k, self.params.n
            )));
        }
        if self.index.contains(&set) {
            return Err(Error::param(format!("{set} is already in the family")));
        }
        if self.intersecting && self.members.iter().any(|m| !m.meets(&set)) {
            self.intersecting = false;
        }
        self.index.insert(set.clone());
        self.members.push(set);
        Ok(())
    }

    pub fn contains(&self, set: &KSet) -> bool {
        self.index.contains(set)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.members.iter()
    }

    pub fn is_intersecting(&self) -> bool {
        self.intersecting
    }

    /// First member disjoint from `set`, if any.
    pub fn first_disjoint(&self, set: &KSet) -> Option<&KSet> {
        self.members.iter().find(|m| !m.meets(set))
    }

    pub fn union(&self) -> PointSet {
        let mut u = PointSet::new();
        for m in &self.members {
            u = &u | m.points();
        }
        u
    }

    /// Members sorted lexicographically (history order dropped).
    pub fn sorted_members(&self) -> Vec<KSet> {
        let mut v = self.members.clone();
        v.sort();
        v
    }

    pub(crate) fn require_intersecting(&self) -> Result<()> {
        if self.intersecting {
            Ok(())
        } else {
            let (a, b) = self
                .disjoint_pair()
                .expect("flag says a disjoint pair exists");
            Err(Error::state(format!(
                "family is not intersecting: {a} and {b} are disjoint"
            )))
        }
    }

    fn disjoint_pair(&self) -> Option<(&KSet, &KSet)> {
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                if !a.meets(b) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.members.iter()).finish()
    }
}

/// Family equality ignores insertion order.
impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.index == other.index
    }
}

impl Eq for SetFamily {}

pub fn is_maximal_intersecting(fam: &SetFamily) -> Result<bool> {
    Ok(legal_moves(fam)?.next().is_none())
}

/// Greedy completion: keep adding the lexicographically smallest legal move.
pub fn complete_to_maximal(fam: &SetFamily) -> Result<SetFamily> {
    fam.require_intersecting()?;
    let mut out = fam.clone();
    loop {
        let next = legal_moves(&out)?.next();
        match next {
            Some(s) => out.push(s)?,
            None => return Ok(out),
        }
    }
}
