use crate::error::{Error, Result};
use crate::points::PointSet;

use super::{gen_ksubsets, Params, SetFamily};

/// Size of a greedy packing of pairwise disjoint sets; a lower bound on any
/// hitting set.
fn packing_bound(sets: &[PointSet]) -> usize {
    let mut order: Vec<&PointSet> = sets.iter().collect();
    order.sort_by_key(|s| s.len());
    let mut used = PointSet::new();
    let mut count = 0;
    for s in order {
        if !s.meets(&used) {
            used = &used | s;
            count += 1;
        }
    }
    count
}

/// Is there a set of at most `budget` points meeting every set in `sets`?
///
/// Branch and bound: branch on the points of the smallest unhit set, and
/// once a point has been refuted drop it from the remaining branches.
pub fn can_hit(sets: &[PointSet], budget: usize) -> bool {
    if sets.is_empty() {
        return true;
    }
    if budget == 0 || sets.iter().any(|s| s.is_empty()) {
        return false;
    }
    if packing_bound(sets) > budget {
        return false;
    }
    let pivot = sets
        .iter()
        .min_by_key(|s| s.len())
        .expect("non-empty")
        .clone();
    let mut live: Vec<PointSet> = sets.to_vec();
    for e in pivot.iter() {
        let rest: Vec<PointSet> = live.iter().filter(|s| !s.contains(e)).cloned().collect();
        if can_hit(&rest, budget - 1) {
            return true;
        }
        let gone: PointSet = [e].into_iter().collect();
        for s in live.iter_mut() {
            *s = &*s - &gone;
            if s.is_empty() {
                return false;
            }
        }
    }
    false
}

/// Covering number and the lexicographically smallest minimum cover.
pub fn covering_number(fam: &SetFamily) -> Result<(u32, PointSet)> {
    if fam.is_empty() {
        return Err(Error::param(
            "covering number of the empty family is not defined",
        ));
    }
    let sets: Vec<PointSet> = fam.iter().map(|m| m.points().clone()).collect();
    let mut tau = packing_bound(&sets).max(1);
    while !can_hit(&sets, tau) {
        tau += 1;
    }

    // Fix points one at a time, smallest first, as long as the rest can still
    // be covered within the budget by larger points.
    let candidates = fam.union();
    let mut cover = PointSet::new();
    let mut last = 0;
    while cover.len() < tau {
        let mut advanced = false;
        for x in candidates.above(last).iter() {
            let mut trial = cover.clone();
            trial.insert(x);
            let rest: Vec<PointSet> = sets
                .iter()
                .filter(|s| !s.meets(&trial))
                .map(|s| s.above(x))
                .collect();
            if can_hit(&rest, tau - trial.len()) {
                cover = trial;
                last = x;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Err(Error::internal(
                "lexicographic cover reconstruction stalled",
            ));
        }
    }
    Ok((tau as u32, cover))
}

/// Reference implementation: try every subset of the union, smallest sizes
/// first and lexicographically within a size.
pub fn covering_number_exhaustive(fam: &SetFamily) -> Result<(u32, PointSet)> {
    if fam.is_empty() {
        return Err(Error::param(
            "covering number of the empty family is not defined",
        ));
    }
    let union = fam.union().to_vec();
    let m = union.len() as u32;
    for t in 1..=m {
        for idx in gen_ksubsets(Params::new(m, t)?)? {
            let cand: PointSet = idx.points().iter().map(|i| union[i as usize - 1]).collect();
            if fam.iter().all(|s| s.points().meets(&cand)) {
                return Ok((t, cand));
            }
        }
    }
    Err(Error::internal("no subset of the union covers the family"))
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;

    #[test]
    fn cover_examples() {
        let (t, c) = covering_number(&star(7, 3, 1)).unwrap();
        assert_eq!((t, c.to_vec()), (1, vec![1]));
        let (t, _) = covering_number(&fam(5, 2, &[&[1, 2], &[1, 3], &[2, 3]])).unwrap();
        assert_eq!(t, 2);
        let f = fam(6, 3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]]);
        let (t, c) = covering_number(&f).unwrap();
        assert_eq!(t, 2);
        // lexicographically smallest pair meeting all four blocks
        assert_eq!(c.to_vec(), vec![1, 6]);
        assert_eq!(covering_number_exhaustive(&f).unwrap(), (2, c));
    }

    #[test]
    fn empty_family_is_rejected() {
        assert!(matches!(
            covering_number(&fam(4, 2, &[])),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            covering_number_exhaustive(&fam(4, 2, &[])),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn non_intersecting_families_can_exceed_k() {
        let f = fam(6, 2, &[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(
            covering_number(&f).unwrap(),
            (3, [1, 3, 5].into_iter().collect())
        );
    }

    #[test]
    fn can_hit_budget_edges() {
        let sets: Vec<PointSet> = vec![[1, 2].into_iter().collect(), [3].into_iter().collect()];
        assert!(!can_hit(&sets, 1));
        assert!(can_hit(&sets, 2));
        assert!(can_hit(&[], 0));
        assert!(!can_hit(&[PointSet::new()], 5));
    }
}
