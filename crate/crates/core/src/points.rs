//! Sets of points of the universe `[n]`, stored as a little-endian bit vector.
//!
//! Bit `p` stands for point `p`; bit 0 is never set. Trailing zero words are
//! always trimmed so that derived equality and hashing are canonical.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use smallvec::SmallVec;

type Words = SmallVec<[u64; 4]>;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PointSet {
    words: Words,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: u32, hi: u32) -> Self {
        (lo..=hi).collect()
    }

    pub fn insert(&mut self, p: u32) {
        let (w, b) = (p as usize / 64, p % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, p: u32) {
        let (w, b) = (p as usize / 64, p % 64);
        if let Some(word) = self.words.get_mut(w) {
            *word &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, p: u32) -> bool {
        let (w, b) = (p as usize / 64, p % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// True iff the two sets share a point.
    pub fn meets(&self, other: &PointSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(other.words.iter())
                .all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<u32> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<u32> {
        let last = self.words.len().checked_sub(1)?;
        let w = self.words[last];
        Some(last as u32 * 64 + 63 - w.leading_zeros())
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Points strictly greater than `p`.
    pub fn above(&self, p: u32) -> PointSet {
        let mut out = self.clone();
        let cut = p as usize + 1;
        for (i, word) in out.words.iter_mut().enumerate() {
            let lo = i * 64;
            if lo + 64 <= cut {
                *word = 0;
            } else if lo < cut {
                *word &= !0u64 << (cut - lo);
            }
        }
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    fn zip_with(&self, other: &PointSet, f: impl Fn(u64, u64) -> u64) -> PointSet {
        let len = self.words.len().max(other.words.len());
        let mut words = Words::with_capacity(len);
        for i in 0..len {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            words.push(f(a, b));
        }
        let mut out = PointSet { words };
        out.trim();
        out
    }
}

impl<'a> BitOr<&'a PointSet> for &'a PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: &PointSet) -> PointSet {
        self.zip_with(rhs, |a, b| a | b)
    }
}

impl<'a> BitAnd<&'a PointSet> for &'a PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: &PointSet) -> PointSet {
        self.zip_with(rhs, |a, b| a & b)
    }
}

impl<'a> Sub<&'a PointSet> for &'a PointSet {
    type Output = PointSet;
    fn sub(self, rhs: &PointSet) -> PointSet {
        self.zip_with(rhs, |a, b| a & !b)
    }
}

impl FromIterator<u32> for PointSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut s = PointSet::new();
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl Extend<u32> for PointSet {
    fn extend<I: IntoIterator<Item = u32>>(&mut self, iter: I) {
        for p in iter {
            self.insert(p);
        }
    }
}

/// Lexicographic order of the sorted element lists.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.zip_with(other, |a, b| a ^ b);
        let Some(x) = diff.first() else {
            return Ordering::Equal;
        };
        // Both lists agree below x; exactly one of them holds x. The other is
        // either exhausted there (a proper prefix, hence smaller) or continues
        // with something larger than x.
        let self_holds = self.contains(x);
        let non_holder = if self_holds { other } else { self };
        let holder_smaller = !non_holder.above(x).is_empty();
        if holder_smaller == self_holds {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some(self.index as u32 * 64 + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}
