//! Exact game values by exhaustive minimax on tiny boards.
//!
//! A board is a list of elements plus, for each element, the mask of
//! elements it may not coexist with. A position is the mask of claimed
//! elements; its value depends only on that mask, so the memo table is keyed
//! by it and every claim order of the same family shares one entry.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{score_family, GameKind, GameState, Role, RoleAssignment, Strategy};
use crate::setfam::{binomial, gen_ksubsets, KSet, Params, SetFamily};

/// Default largest board a full solve accepts.
pub const DEFAULT_SOLVE_CAP: usize = 24;
/// Positions are `u64` masks.
pub const HARD_SOLVE_CAP: usize = 64;

/// Elements with a symmetric "cannot both be claimed" relation.
#[derive(Debug, Clone)]
pub(crate) struct ConflictBoard {
    conflicts: Vec<u64>,
}

impl ConflictBoard {
    pub(crate) fn new(size: usize, conflict: impl Fn(usize, usize) -> bool) -> Self {
        let conflicts = (0..size)
            .map(|i| {
                (0..size)
                    .filter(|&j| j != i && conflict(i, j))
                    .fold(0u64, |m, j| m | 1 << j)
            })
            .collect();
        ConflictBoard { conflicts }
    }

    pub(crate) fn len(&self) -> usize {
        self.conflicts.len()
    }

    fn full(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Elements that may still be claimed.
    pub(crate) fn available(&self, claimed: u64) -> u64 {
        let mut blocked = claimed;
        let mut rest = claimed;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            blocked |= self.conflicts[i];
            rest &= rest - 1;
        }
        self.full() & !blocked
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// Memoised minimax over a conflict board. `first_min` says whether the
/// player on an even number of claimed elements minimises.
pub(crate) struct Minimax<F: Fn(u64) -> Result<u64>> {
    board: ConflictBoard,
    terminal_score: F,
    first_min: bool,
    memo: HashMap<u64, u64>,
}

impl<F: Fn(u64) -> Result<u64>> Minimax<F> {
    pub(crate) fn new(board: ConflictBoard, first_min: bool, terminal_score: F) -> Self {
        Minimax {
            board,
            terminal_score,
            first_min,
            memo: HashMap::new(),
        }
    }

    fn minimizing(&self, pos: u64) -> bool {
        pos.count_ones().is_multiple_of(2) == self.first_min
    }

    pub(crate) fn value(&mut self, pos: u64) -> Result<u64> {
        if let Some(&v) = self.memo.get(&pos) {
            return Ok(v);
        }
        let avail = self.board.available(pos);
        let v = if avail == 0 {
            (self.terminal_score)(pos)?
        } else {
            let minimizing = self.minimizing(pos);
            let mut best: Option<u64> = None;
            for i in bits(avail) {
                let v = self.value(pos | 1 << i)?;
                best = Some(match best {
                    None => v,
                    Some(b) if minimizing => b.min(v),
                    Some(b) => b.max(v),
                });
            }
            best.expect("a non-terminal position has a move")
        };
        self.memo.insert(pos, v);
        Ok(v)
    }

    /// Smallest-index move achieving the position's value.
    pub(crate) fn best_move(&mut self, pos: u64) -> Result<Option<usize>> {
        let target = self.value(pos)?;
        for i in bits(self.board.available(pos)) {
            if self.value(pos | 1 << i)? == target {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub(crate) fn principal_variation(&mut self, mut pos: u64) -> Result<Vec<usize>> {
        let mut pv = Vec::new();
        while let Some(i) = self.best_move(pos)? {
            pv.push(i);
            pos |= 1 << i;
        }
        Ok(pv)
    }

    pub(crate) fn positions_expanded(&self) -> u64 {
        self.memo.len() as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: u64,
    /// One optimal line of play, ties broken towards the lexicographically
    /// smallest move.
    pub principal_variation: Vec<KSet>,
    pub positions_expanded: u64,
}

fn check_cap(size: u128, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_SOLVE_CAP);
    if size > cap as u128 {
        return Err(Error::Resource(format!(
            "board of {size} elements exceeds the solver cap of {cap}"
        )));
    }
    Ok(())
}

/// Board of all k-sets, in lexicographic order, conflicting when disjoint.
struct KSetBoard {
    sets: Vec<KSet>,
    board: ConflictBoard,
}

impl KSetBoard {
    fn new(p: Params, cap: usize) -> Result<Self> {
        check_cap(p.board_size(), cap)?;
        let sets: Vec<KSet> = gen_ksubsets(p)?.collect();
        let board = ConflictBoard::new(sets.len(), |i, j| !sets[i].meets(&sets[j]));
        Ok(KSetBoard { sets, board })
    }

    #[cfg(test)]
    fn family(&self, p: Params, pos: u64) -> Result<SetFamily> {
        SetFamily::from_sets(p, bits(pos).map(|i| self.sets[i].clone()))
    }

    fn position(&self, fam: &SetFamily) -> u64 {
        fam.iter().fold(0, |m, s| {
            let i = self
                .sets
                .binary_search(s)
                .expect("every k-set is on the board");
            m | 1 << i
        })
    }
}

fn score_fn(kind: GameKind, p: Params, sets: Vec<KSet>) -> impl Fn(u64) -> Result<u64> {
    move |pos| match kind {
        GameKind::Saturation => Ok(pos.count_ones() as u64),
        GameKind::Tau => {
            let fam = SetFamily::from_sets(p, bits(pos).map(|i| sets[i].clone()))?;
            score_family(kind, &fam)
        }
    }
}

/// Exact value of the game from the empty board, with the default cap.
pub fn solve(p: Params, kind: GameKind, roles: RoleAssignment) -> Result<SolveResult> {
    solve_with_cap(p, kind, roles, DEFAULT_SOLVE_CAP)
}

pub fn solve_with_cap(
    p: Params,
    kind: GameKind,
    roles: RoleAssignment,
    cap: usize,
) -> Result<SolveResult> {
    let kb = KSetBoard::new(p, cap)?;
    let score = score_fn(kind, p, kb.sets.clone());
    let mut mm = Minimax::new(
        kb.board.clone(),
        roles.first_mover == Role::Minimizer,
        score,
    );
    let value = mm.value(0)?;
    let pv = mm.principal_variation(0)?;
    Ok(SolveResult {
        value,
        principal_variation: pv.into_iter().map(|i| kb.sets[i].clone()).collect(),
        positions_expanded: mm.positions_expanded(),
    })
}

/// Exact value from a position reached in play; the player to move is read
/// from the number of claimed sets.
pub fn solve_position(state: &GameState, cap: usize) -> Result<SolveResult> {
    let p = state.params();
    let kb = KSetBoard::new(p, cap)?;
    let score = score_fn(state.kind(), p, kb.sets.clone());
    let first_min = state.roles().first_mover == Role::Minimizer;
    let mut mm = Minimax::new(kb.board.clone(), first_min, score);
    let pos = kb.position(state.claimed());
    let value = mm.value(pos)?;
    let pv = mm.principal_variation(pos)?;
    Ok(SolveResult {
        value,
        principal_variation: pv.into_iter().map(|i| kb.sets[i].clone()).collect(),
        positions_expanded: mm.positions_expanded(),
    })
}

/// Smallest maximal intersecting family, by exhaustive search.
pub fn min_maximal_size(p: Params, cap: usize) -> Result<u64> {
    let kb = KSetBoard::new(p, cap)?;
    let mut memo: HashMap<u64, u64> = HashMap::new();
    fn walk(b: &ConflictBoard, pos: u64, memo: &mut HashMap<u64, u64>) -> u64 {
        if let Some(&v) = memo.get(&pos) {
            return v;
        }
        let avail = b.available(pos);
        let v = if avail == 0 {
            pos.count_ones() as u64
        } else {
            bits(avail)
                .map(|i| walk(b, pos | 1 << i, memo))
                .min()
                .unwrap()
        };
        memo.insert(pos, v);
        v
    }
    Ok(walk(&kb.board, 0, &mut memo))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub value: u64,
    /// Largest intersecting family, `binomial(n-1, k-1)`.
    pub upper: u64,
    /// Smallest maximal intersecting family.
    pub lower: u64,
    pub pass: bool,
}

/// Checks a solved saturation value against the sizes of the smallest and
/// largest maximal intersecting families.
pub fn bounds_sanity(p: Params, result: &SolveResult) -> Result<BoundsReport> {
    if 2 * p.k() > p.n() {
        return Err(Error::param(format!(
            "needs 2k <= n, got n = {}, k = {}",
            p.n(),
            p.k()
        )));
    }
    let upper = binomial(p.n() as u64 - 1, p.k() as u64 - 1)
        .and_then(|b| u64::try_from(b).ok())
        .ok_or_else(|| Error::Resource("binomial overflows".into()))?;
    let lower = min_maximal_size(p, HARD_SOLVE_CAP)?;
    Ok(BoundsReport {
        value: result.value,
        upper,
        lower,
        pass: lower <= result.value && result.value <= upper,
    })
}

/// Plays a smallest optimal move from every position.
#[derive(Default)]
pub struct Optimal {
    engine: Option<OptimalEngine>,
}

struct OptimalEngine {
    kb: KSetBoard,
    mm: Minimax<Box<dyn Fn(u64) -> Result<u64>>>,
}

impl Optimal {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Strategy for Optimal {
    fn name(&self) -> &str {
        "optimal"
    }

    fn next_move(&mut self, state: &GameState) -> Result<Option<KSet>> {
        let p = state.params();
        if self.engine.is_none() {
            let kb = KSetBoard::new(p, DEFAULT_SOLVE_CAP)?;
            let score: Box<dyn Fn(u64) -> Result<u64>> =
                Box::new(score_fn(state.kind(), p, kb.sets.clone()));
            let first_min = state.roles().first_mover == Role::Minimizer;
            let mm = Minimax::new(kb.board.clone(), first_min, score);
            self.engine = Some(OptimalEngine { kb, mm });
        }
        let e = self.engine.as_mut().expect("engine was just built");
        let pos = e.kb.position(state.claimed());
        Ok(e.mm.best_move(pos)?.map(|i| e.kb.sets[i].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{new_game, run_game, LexFirst, Mode, RunOptions};
    use crate::setfam::is_maximal_intersecting;

    fn p(n: u32, k: u32) -> Params {
        Params::new(n, k).unwrap()
    }

    fn roles(r: Role) -> RoleAssignment {
        RoleAssignment::new(r)
    }

    #[test]
    fn small_values() {
        let r = solve(p(5, 2), GameKind::Saturation, roles(Role::Minimizer)).unwrap();
        assert_eq!(r.value, 3);
        let r = solve(p(6, 2), GameKind::Saturation, roles(Role::Maximizer)).unwrap();
        assert_eq!(r.value, 5);
        let r = solve(p(5, 2), GameKind::Tau, roles(Role::Maximizer)).unwrap();
        assert_eq!(r.value, 2);
    }

    #[test]
    fn k2_closed_forms() {
        for n in 4..=7 {
            let fast = solve(p(n, 2), GameKind::Saturation, roles(Role::Minimizer)).unwrap();
            let slow = solve(p(n, 2), GameKind::Saturation, roles(Role::Maximizer)).unwrap();
            assert_eq!((fast.value, slow.value), (3, n as u64 - 1), "n = {n}");
        }
        // On three points the only maximal family is the whole board.
        let slow = solve(p(3, 2), GameKind::Saturation, roles(Role::Maximizer)).unwrap();
        assert_eq!(slow.value, 3);
    }

    #[test]
    fn principal_variation_replays_to_the_value() {
        for (n, k, kind, first) in [
            (5, 2, GameKind::Saturation, Role::Minimizer),
            (6, 2, GameKind::Saturation, Role::Maximizer),
            (6, 3, GameKind::Tau, Role::Maximizer),
            (5, 3, GameKind::Saturation, Role::Minimizer),
        ] {
            let r = solve(p(n, k), kind, roles(first)).unwrap();
            let mut g = new_game(p(n, k), kind, roles(first)).unwrap();
            for m in &r.principal_variation {
                g = g.apply_move(m.clone()).unwrap();
            }
            assert!(g.is_terminal().unwrap());
            assert_eq!(g.score().unwrap(), r.value);
        }
    }

    #[test]
    fn tau_values_lie_between_one_and_k() {
        for (n, k) in [(4, 2), (5, 2), (6, 2), (7, 2), (6, 3)] {
            for first in [Role::Minimizer, Role::Maximizer] {
                let v = solve(p(n, k), GameKind::Tau, roles(first)).unwrap().value;
                assert!((1..=k as u64).contains(&v));
            }
        }
    }

    #[test]
    fn value_ignores_claim_order() {
        let pp = p(6, 2);
        let kb = KSetBoard::new(pp, DEFAULT_SOLVE_CAP).unwrap();
        let mut mm = Minimax::new(
            kb.board.clone(),
            true,
            score_fn(GameKind::Saturation, pp, kb.sets.clone()),
        );
        let moves = [
            KSet::new(pp, [1, 2]).unwrap(),
            KSet::new(pp, [2, 3]).unwrap(),
        ];
        let a = SetFamily::from_sets(pp, moves.clone()).unwrap();
        let b = SetFamily::from_sets(pp, moves.into_iter().rev()).unwrap();
        assert_eq!(kb.position(&a), kb.position(&b));
        assert_eq!(kb.family(pp, kb.position(&a)).unwrap(), a);
        let v = mm.value(kb.position(&a)).unwrap();
        assert!(v >= 3);
    }

    #[test]
    fn cap_is_enforced() {
        let err = solve(p(8, 2), GameKind::Saturation, roles(Role::Minimizer)).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        assert!(solve_with_cap(p(8, 2), GameKind::Saturation, roles(Role::Minimizer), 28).is_ok());
    }

    #[test]
    fn bounds_examples() {
        let r = solve(p(5, 2), GameKind::Saturation, roles(Role::Maximizer)).unwrap();
        let b = bounds_sanity(p(5, 2), &r).unwrap();
        assert_eq!((b.value, b.upper, b.pass), (4, 4, true));
        let r = solve(p(6, 2), GameKind::Saturation, roles(Role::Minimizer)).unwrap();
        let b = bounds_sanity(p(6, 2), &r).unwrap();
        assert_eq!((b.value, b.upper, b.pass), (3, 5, true));
        assert_eq!(min_maximal_size(p(4, 2), DEFAULT_SOLVE_CAP).unwrap(), 3);
        assert!(bounds_sanity(p(5, 3), &r).is_err());
    }

    #[test]
    fn optimal_strategy_achieves_the_value() {
        let pp = p(6, 2);
        for first in [Role::Minimizer, Role::Maximizer] {
            let want = solve(pp, GameKind::Saturation, roles(first)).unwrap().value;
            let t = run_game(
                pp,
                GameKind::Saturation,
                roles(first),
                &mut Optimal::new(),
                &mut Optimal::new(),
                Mode::FullPlay,
                &RunOptions::default(),
            )
            .unwrap();
            assert_eq!(t.score, want);
            assert!(is_maximal_intersecting(&t.final_family).unwrap());
        }
        // An optimal minimiser never does worse than the value against a weak opponent.
        let want = solve(pp, GameKind::Saturation, roles(Role::Minimizer))
            .unwrap()
            .value;
        let t = run_game(
            pp,
            GameKind::Saturation,
            roles(Role::Minimizer),
            &mut Optimal::new(),
            &mut LexFirst,
            Mode::FullPlay,
            &RunOptions::default(),
        )
        .unwrap();
        assert!(t.score <= want);
    }
}
