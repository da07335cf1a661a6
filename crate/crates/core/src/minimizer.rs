//! Cover-building strategy for the score-minimising player of the τ-game.
//!
//! The player keeps a growing point set `C` (the eventual cover) and an
//! auxiliary set `A` of points of its first move (the anchor). Every move is
//! `C` plus at most one extra point plus fresh points nobody has touched, so
//! the parts of its moves outside `C` stay pairwise disjoint. After `k + 2`
//! moves, `k + 1` of them together with `C` form a cover certificate.
//!
//! When the opponent moves first, the opponent's opening set is met once and
//! for all by a pivot point of the anchor that sits in `C` from the start;
//! the rest of the play is the same as in the other move order, shifted by
//! one move.

use serde::Serialize;

use crate::check::{PropertyCheck, RoundReport};
use crate::error::{Error, Result};
use crate::game::{GameState, Role, Seat, Strategy, StrategyReport};
use crate::points::PointSet;
use crate::setfam::{legal_moves, CoverCertificate, KSet, LegalMoves};

/// Smallest universe on which fresh points are always available.
pub fn min_universe(k: u32) -> u64 {
    2 * k as u64 * (k as u64 + 2)
}

/// Upper bound on `|C_i|` after round `i`, for `2 <= i <= k`.
pub fn round_cover_bound(i: u32, k: u32) -> Result<u32> {
    if i < 2 || i > k {
        return Err(Error::param(format!("round {i} outside 2..={k}")));
    }
    Ok(3 + 2 * (i - 2) / 3)
}

/// Guaranteed size of the final cover.
pub fn cover_bound(k: u32, moved_first: bool) -> u32 {
    (2 * k).div_ceil(3) + if moved_first { 3 } else { 4 }
}

/// What a single move did to the bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "case")]
pub enum StepCase {
    /// First move: the lexicographically smallest legal set.
    Anchor,
    /// Second move: one anchor point of the opponent's reply plus fresh points.
    Opening { a1: u32 },
    /// Third move when the opponent's reply already meets the cover.
    SecondMet,
    /// Third move when it does not: a point shared by the opponent's two
    /// sets joins the cover.
    SecondJoin { c: u32 },
    /// The cover met everything and the reply too; keep it.
    Keep,
    /// The reply misses the cover; answer with a new anchor point, parked in `A`.
    Extend { a: u32 },
    /// The reply misses the cover and meets the anchor only inside `A`;
    /// that point moves from `A` into the cover.
    Promote { a: u32 },
    /// An earlier reply (index `missed`, counted from 1) misses the cover;
    /// a point it shares with the current reply joins the cover.
    Repair { c: u32, missed: usize },
}

impl StepCase {
    /// Rounds where the previous cover met every claimed set.
    pub fn cover_was_complete(&self) -> bool {
        matches!(
            self,
            StepCase::Keep | StepCase::Extend { .. } | StepCase::Promote { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub round: u32,
    pub case: StepCase,
    pub cover: Vec<u32>,
    pub aux: Vec<u32>,
    /// The rule's move was unavailable and a legal fallback was played.
    pub fallback: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinimizerMemory {
    seat: Option<Seat>,
    anchor: Option<KSet>,
    pivot: Option<u32>,
    a1: Option<u32>,
    pub(crate) aux: PointSet,
    pub(crate) cover: PointSet,
    round: u32,
    uncovered: Option<usize>,
    steps: Vec<StepRecord>,
}

impl MinimizerMemory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn anchor(&self) -> Option<&KSet> {
        self.anchor.as_ref()
    }

    /// The auxiliary set `A`.
    pub fn aux(&self) -> &PointSet {
        &self.aux
    }

    /// The cover `C`.
    pub fn cover(&self) -> &PointSet {
        &self.cover
    }

    /// Number of moves made so far.
    pub fn round(&self) -> u32 {
        self.round
    }

    /// Index (from 1, opponent's replies after the anchor) of the reply
    /// that misses the cover, if any.
    pub fn uncovered(&self) -> Option<usize> {
        self.uncovered
    }

    pub fn steps(&self) -> &[StepRecord] {
        &self.steps
    }

    pub fn moved_first(&self) -> Option<bool> {
        self.seat.map(|s| s == Seat::A)
    }

    /// All `k + 2` strategic moves have been made.
    pub fn is_complete(&self, k: u32) -> bool {
        self.round >= k + 2
    }
}

/// The game seen from the minimiser's seat, re-indexed so that the anchor is
/// move 0 and `opp[i - 1]` is the reply it answers in round `i`.
struct History {
    own: Vec<KSet>,
    opp: Vec<KSet>,
    /// The opponent's opening set when the opponent moved first.
    extra: Option<KSet>,
}

impl History {
    fn of(state: &GameState, seat: Seat) -> Self {
        let own = state.moves_of(seat).cloned().collect();
        let mut opp: Vec<KSet> = state.moves_of(seat.other()).cloned().collect();
        let extra = (seat == Seat::B && !opp.is_empty()).then(|| opp.remove(0));
        History { own, opp, extra }
    }
}

fn single(x: u32) -> PointSet {
    [x].into_iter().collect()
}

/// `core` padded with the smallest points not in any claimed set. Falls
/// back to a legal move through `core` (or any legal move) when that is
/// impossible or illegal; the flag reports the fallback.
fn build_move(state: &GameState, core: &PointSet) -> Result<(KSet, bool)> {
    let p = state.params();
    let k = p.k() as usize;
    let claimed = state.claimed();
    if core.len() <= k {
        let used = &claimed.union() | core;
        let mut set = core.clone();
        let mut x = 1;
        while set.len() < k && x <= p.n() {
            if !used.contains(x) {
                set.insert(x);
            }
            x += 1;
        }
        if set.len() == k {
            let mv = KSet::from_points(p, set)?;
            if !claimed.contains(&mv) && claimed.first_disjoint(&mv).is_none() {
                return Ok((mv, false));
            }
        }
        if let Some(mv) = LegalMoves::new(claimed, core.clone())?.next() {
            return Ok((mv, true));
        }
    }
    match legal_moves(claimed)?.next() {
        Some(mv) => Ok((mv, true)),
        None => Err(Error::internal("no legal move left for the minimizer")),
    }
}

/// Chooses the point that joins the cover when repairing a missed reply.
///
/// Points of `A` come first (they are already accounted for), then points
/// outside every own move, then points whose own-move residue stays largest
/// after losing them; ties go to the smallest point.
fn pick_repair(
    candidates: &PointSet,
    h: &History,
    aux: &PointSet,
    cover: &PointSet,
) -> Option<u32> {
    let anchor = h.own.first()?;
    let mut residues = vec![anchor.points() - &(aux | cover)];
    residues.extend(h.own[1..].iter().map(|m| m.points() - cover));
    candidates.iter().min_by_key(|&x| {
        if aux.contains(x) {
            return (0, 0, x);
        }
        match residues
            .iter()
            .filter(|r| r.contains(x))
            .map(|r| r.len())
            .min()
        {
            None if !h.own.iter().any(|m| m.contains(x)) => (1, 0, x),
            None => (2, 0, x),
            Some(len) => (2, usize::MAX - len, x),
        }
    })
}

/// One move of the strategy. `mem` is not modified; the updated memory is
/// returned with the move.
pub fn minimizer_move(state: &GameState, mem: &MinimizerMemory) -> Result<(KSet, MinimizerMemory)> {
    let p = state.params();
    let k = p.k();
    let need = min_universe(k);
    if (p.n() as u64) < need {
        return Err(Error::UniverseTooSmall {
            n: p.n(),
            required: need,
        });
    }
    if state.role_to_move() != Role::Minimizer {
        return Err(Error::state("it is not the minimizer's turn"));
    }
    let seat = state.seat_to_move();
    if mem.seat.is_some_and(|s| s != seat) {
        return Err(Error::state("memory belongs to the other seat"));
    }
    if mem.is_complete(k) {
        return Err(Error::state(format!(
            "all {} strategic moves are made",
            k + 2
        )));
    }
    let h = History::of(state, seat);
    let i = mem.round as usize;
    if h.own.len() != i || h.opp.len() != i {
        return Err(Error::state(format!(
            "history has {} own moves and {} replies, memory expects {i} of each",
            h.own.len(),
            h.opp.len()
        )));
    }
    if mem
        .anchor
        .as_ref()
        .is_some_and(|a| h.own.first() != Some(a))
    {
        return Err(Error::state(
            "history does not start with the remembered anchor",
        ));
    }

    let mut m = mem.clone();
    m.seat = Some(seat);
    let round = mem.round;
    let (mv, case, fallback) = match round {
        0 => {
            let anchor = legal_moves(state.claimed())?
                .next()
                .ok_or_else(|| Error::internal("empty board has no legal move"))?;
            if let Some(extra) = &h.extra {
                let pivot = (anchor.points() & extra.points())
                    .first()
                    .ok_or_else(|| Error::internal("anchor misses the opening set"))?;
                m.pivot = Some(pivot);
                m.cover = single(pivot);
            }
            m.anchor = Some(anchor.clone());
            (anchor, StepCase::Anchor, false)
        }
        1 => {
            let anchor = m.anchor.clone().expect("anchor set in round 0");
            let reply = &h.opp[0];
            let a1 = (&m.cover & reply.points())
                .first()
                .or_else(|| (anchor.points() & reply.points()).first())
                .ok_or_else(|| Error::internal("reply misses the anchor"))?;
            m.a1 = Some(a1);
            let core = &m.cover | &single(a1);
            let (mv, fb) = build_move(state, &core)?;
            (mv, StepCase::Opening { a1 }, fb)
        }
        2 => {
            let a1 = m.a1.expect("a1 set in round 1");
            let base = &m.cover | &single(a1);
            let reply = &h.opp[1];
            if base.meets(reply.points()) {
                m.cover = base.clone();
                let (mv, fb) = build_move(state, &base)?;
                (mv, StepCase::SecondMet, fb)
            } else {
                let shared = h.opp[0].points() & reply.points();
                let c = pick_repair(&shared, &h, &PointSet::new(), &base)
                    .ok_or_else(|| Error::internal("two replies are disjoint"))?;
                m.cover = &base | &single(c);
                let (mv, fb) = build_move(state, &m.cover)?;
                (mv, StepCase::SecondJoin { c }, fb)
            }
        }
        _ => general_round(state, &h, &mut m)?,
    };

    m.round += 1;
    m.uncovered = h
        .opp
        .iter()
        .position(|r| !r.points().meets(&m.cover))
        .map(|j| j + 1);
    m.steps.push(StepRecord {
        round,
        case,
        cover: m.cover.to_vec(),
        aux: m.aux.to_vec(),
        fallback,
    });
    Ok((mv, m))
}

fn general_round(
    state: &GameState,
    h: &History,
    m: &mut MinimizerMemory,
) -> Result<(KSet, StepCase, bool)> {
    let i = m.round as usize;
    let anchor = m.anchor.clone().expect("anchor set in round 0");
    let reply = &h.opp[i - 1];
    let missed = h.opp[..i - 1]
        .iter()
        .position(|r| !r.points().meets(&m.cover));

    let (extra_point, case) = if let Some(j) = missed {
        let shared = h.opp[j].points() & reply.points();
        let c = pick_repair(&shared, h, &m.aux, &m.cover)
            .ok_or_else(|| Error::internal("two replies are disjoint"))?;
        m.aux.remove(c);
        m.cover.insert(c);
        (Some(c), StepCase::Repair { c, missed: j + 1 })
    } else if reply.points().meets(&m.cover) {
        (None, StepCase::Keep)
    } else if let Some(a) = (&(reply.points() & anchor.points()) - &m.aux).first() {
        m.aux.insert(a);
        (Some(a), StepCase::Extend { a })
    } else {
        let a = (reply.points() & anchor.points())
            .first()
            .ok_or_else(|| Error::internal("reply misses the anchor"))?;
        m.aux.remove(a);
        m.cover.insert(a);
        (Some(a), StepCase::Promote { a })
    };

    let mut core = m.cover.clone();
    core.extend(extra_point);
    let (mv, fb) = build_move(state, &core)?;
    Ok((mv, case, fb))
}

/// Checks the four bookkeeping properties against the game history, for the
/// round the memory last completed (index `i` = moves made minus one).
///
/// a) `A` lies in the anchor; `C` only grows, by at most one point a round.
/// b) The anchor outside `A ∪ C` and every later own move outside `C` are
///    non-empty and pairwise disjoint.
/// c) `A ∪ C` meets every claimed set.
/// d) `C` meets every own move and all but at most one reply.
///
/// Rounds before the third move pass vacuously.
pub fn check_round_invariants(state: &GameState, mem: &MinimizerMemory) -> RoundReport {
    let round = mem.round.saturating_sub(1);
    let Some(seat) = mem.seat.filter(|_| round >= 2) else {
        return RoundReport {
            round,
            checks: "abcd"
                .chars()
                .map(|c| PropertyCheck::verdict(c, None))
                .collect(),
        };
    };
    let h = History::of(state, seat);
    let i = round as usize;
    let own = &h.own[..(i + 1).min(h.own.len())];
    let opp = &h.opp[..i.min(h.opp.len())];
    let anchor = &own[0];
    let (a, c) = (&mem.aux, &mem.cover);
    let both = a | c;

    let mut wa = None;
    if !a.is_subset(anchor.points()) {
        wa = Some(format!("A = {a} is not inside the anchor {anchor}"));
    } else if i >= 3 {
        let prev: PointSet = mem.steps[i - 1].cover.iter().copied().collect();
        if !prev.is_subset(c) {
            wa = Some(format!("cover shrank from {prev} to {c}"));
        } else if c.len() > prev.len() + 1 {
            wa = Some(format!("cover grew from {prev} to {c}"));
        }
    }

    let mut wb = None;
    let mut seen = PointSet::new();
    let residues = std::iter::once((0, anchor.points() - &both)).chain(
        own[1..]
            .iter()
            .enumerate()
            .map(|(j, s)| (j + 1, s.points() - c)),
    );
    for (j, r) in residues {
        if r.is_empty() {
            wb = Some(format!("own move {j} has an empty residue"));
            break;
        }
        if r.meets(&seen) {
            wb = Some(format!(
                "residue {r} of own move {j} meets an earlier residue"
            ));
            break;
        }
        seen = &seen | &r;
    }

    let wc = own
        .iter()
        .chain(opp)
        .chain(&h.extra)
        .find(|s| !s.points().meets(&both))
        .map(|s| format!("A ∪ C misses {s}"));

    let mut wd = own
        .iter()
        .find(|s| !s.points().meets(c))
        .map(|s| format!("C misses own move {s}"));
    if wd.is_none() {
        if let Some(e) = h.extra.as_ref().filter(|e| !e.points().meets(c)) {
            wd = Some(format!("C misses the opening set {e}"));
        }
    }
    if wd.is_none() {
        let missed: Vec<&KSet> = opp.iter().filter(|s| !s.points().meets(c)).collect();
        if missed.len() > 1 {
            wd = Some(format!("C misses replies {} and {}", missed[0], missed[1]));
        }
    }

    RoundReport {
        round,
        checks: vec![
            PropertyCheck::verdict('a', wa),
            PropertyCheck::verdict('b', wb),
            PropertyCheck::verdict('c', wc),
            PropertyCheck::verdict('d', wd),
        ],
    }
}

/// Per-round growth accounting for the cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub round: u32,
    pub cover_size: u32,
    pub bound: u32,
    /// Rounds (after the third move) that left the cover size unchanged.
    pub kept: u32,
    /// Rounds that grew the cover while it met everything before.
    pub promoted: u32,
    /// Rounds that repaired a missed reply.
    pub repaired: u32,
    pub pass: bool,
}

/// Growth rows for rounds `2..=min(k, moves made - 1)`.
pub fn growth_report(mem: &MinimizerMemory, k: u32) -> Vec<GrowthRow> {
    let (mut kept, mut promoted, mut repaired) = (0, 0, 0);
    let mut rows = Vec::new();
    for step in mem.steps.iter().filter(|s| s.round >= 2 && s.round <= k) {
        let i = step.round;
        if i > 2 {
            let prev = mem.steps[i as usize - 1].cover.len();
            match step.case {
                _ if step.cover.len() == prev => kept += 1,
                StepCase::Repair { .. } => repaired += 1,
                _ => promoted += 1,
            }
        }
        let cover_size = step.cover.len() as u32;
        let bound = round_cover_bound(i, k).expect("round within range");
        let pass = cover_size <= bound
            && kept + promoted + repaired == i - 2
            && repaired <= kept + 1
            && promoted <= kept;
        rows.push(GrowthRow {
            round: i,
            cover_size,
            bound,
            kept,
            promoted,
            repaired,
            pass,
        });
    }
    rows
}

/// Checks the case sequence: an `Extend` round is followed by a `Repair`
/// round, and `Keep`, `Promote` and `Repair` rounds by a round where the
/// cover met everything. Returns the first offending round.
pub fn check_transitions(mem: &MinimizerMemory) -> std::result::Result<(), String> {
    for w in mem.steps.windows(2) {
        let (prev, next) = (&w[0], &w[1]);
        if prev.round < 2 {
            continue;
        }
        let ok = match prev.case {
            StepCase::Extend { .. } => matches!(next.case, StepCase::Repair { .. }),
            _ => next.case.cover_was_complete(),
        };
        if !ok {
            return Err(format!(
                "round {} ({:?}) followed by round {} ({:?})",
                prev.round, prev.case, next.round, next.case
            ));
        }
    }
    Ok(())
}

/// The cover and the `k + 1` own moves after the anchor.
pub fn finalize_cover(state: &GameState, mem: &MinimizerMemory) -> Result<CoverCertificate> {
    let k = state.params().k();
    let seat = mem
        .seat
        .ok_or_else(|| Error::state("the minimizer has not moved yet"))?;
    if !mem.is_complete(k) {
        return Err(Error::state(format!(
            "cover is final after {} moves, only {} made",
            k + 2,
            mem.round
        )));
    }
    let own: Vec<KSet> = state.moves_of(seat).cloned().collect();
    if own.len() < k as usize + 2 {
        return Err(Error::state("history is shorter than the memory"));
    }
    Ok(CoverCertificate {
        cover: mem.cover.clone(),
        witnesses: own[1..k as usize + 2].to_vec(),
    })
}

/// The strategy as a player; hands off after `k + 2` moves.
#[derive(Debug, Clone, Default)]
pub struct Minimizer {
    mem: MinimizerMemory,
    k: Option<u32>,
}

impl Minimizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memory(&self) -> &MinimizerMemory {
        &self.mem
    }
}

impl Strategy for Minimizer {
    fn name(&self) -> &str {
        "minimizer"
    }

    fn next_move(&mut self, state: &GameState) -> Result<Option<KSet>> {
        let k = state.params().k();
        self.k = Some(k);
        if self.mem.is_complete(k) {
            return Ok(None);
        }
        let (mv, mem) = minimizer_move(state, &self.mem)?;
        self.mem = mem;
        Ok(Some(mv))
    }

    fn handed_off(&self) -> bool {
        self.k.is_some_and(|k| self.mem.is_complete(k))
    }

    fn report(&self, state: &GameState) -> Result<StrategyReport> {
        let certificate = match self.k {
            Some(k) if self.mem.is_complete(k) => Some(finalize_cover(state, &self.mem)?),
            _ => None,
        };
        Ok(StrategyReport {
            certificate,
            degrees: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{new_game, GameKind, RoleAssignment};
    use crate::setfam::{check_disjointness_certificate, Params};

    fn set(p: Params, v: &[u32]) -> KSet {
        KSet::new(p, v.iter().copied()).unwrap()
    }

    fn opening() -> (GameState, MinimizerMemory, Params) {
        let p = Params::new(30, 3).unwrap();
        let g = new_game(p, GameKind::Tau, RoleAssignment::new(Role::Minimizer)).unwrap();
        let (m0, mem) = minimizer_move(&g, &MinimizerMemory::new()).unwrap();
        assert_eq!(m0.elements(), vec![1, 2, 3]);
        let g = g
            .apply_move(m0)
            .unwrap()
            .apply_move(set(p, &[3, 4, 5]))
            .unwrap();
        let (m1, mem) = minimizer_move(&g, &mem).unwrap();
        assert_eq!(m1.elements(), vec![3, 6, 7]);
        (g.apply_move(m1).unwrap(), mem, p)
    }

    #[test]
    fn reply_through_the_first_anchor_point() {
        let (g, mem, p) = opening();
        let g = g.apply_move(set(p, &[3, 8, 9])).unwrap();
        let (m2, mem) = minimizer_move(&g, &mem).unwrap();
        assert_eq!(m2.elements(), vec![3, 10, 11]);
        assert_eq!(mem.cover().to_vec(), vec![3]);
        assert!(mem.aux().is_empty());
        let g = g.apply_move(m2).unwrap();
        assert!(check_round_invariants(&g, &mem).all_pass());
    }

    #[test]
    fn reply_avoiding_the_first_anchor_point() {
        let (g, mem, p) = opening();
        let g = g.apply_move(set(p, &[1, 4, 6])).unwrap();
        let (m2, mem) = minimizer_move(&g, &mem).unwrap();
        assert_eq!(mem.steps()[2].case, StepCase::SecondJoin { c: 4 });
        assert_eq!(m2.elements(), vec![3, 4, 8]);
        assert_eq!(mem.cover().to_vec(), vec![3, 4]);
        let g = g.apply_move(m2).unwrap();
        assert!(check_round_invariants(&g, &mem).all_pass());
    }

    #[test]
    fn a_cover_missing_a_reply_fails_d() {
        let (g, mem, p) = opening();
        let g = g.apply_move(set(p, &[1, 4, 6])).unwrap();
        let (m2, mem) = minimizer_move(&g, &mem).unwrap();
        let g = g
            .apply_move(m2)
            .unwrap()
            .apply_move(set(p, &[2, 4, 7]))
            .unwrap();
        let (m3, mut mem) = minimizer_move(&g, &mem).unwrap();
        assert_eq!(mem.steps()[3].case, StepCase::Keep);
        let g = g.apply_move(m3).unwrap();
        assert!(check_round_invariants(&g, &mem).all_pass());
        mem.cover = [3].into_iter().collect();
        let r = check_round_invariants(&g, &mem);
        let d = r.get('d').unwrap();
        assert!(!d.pass);
        assert!(d.witness.as_ref().unwrap().contains("{1,4,6}"));
    }

    #[test]
    fn empty_history_passes_vacuously() {
        let p = Params::new(30, 3).unwrap();
        let g = new_game(p, GameKind::Tau, RoleAssignment::new(Role::Minimizer)).unwrap();
        assert!(check_round_invariants(&g, &MinimizerMemory::new()).all_pass());
    }

    #[test]
    fn round_cover_bound_values() {
        assert_eq!(round_cover_bound(2, 9).unwrap(), 3);
        assert_eq!(round_cover_bound(5, 9).unwrap(), 5);
        assert_eq!(round_cover_bound(8, 9).unwrap(), 7);
        assert!(round_cover_bound(1, 9).is_err());
        assert!(round_cover_bound(10, 9).is_err());
        assert_eq!(cover_bound(3, true), 5);
        assert_eq!(cover_bound(6, false), 8);
    }

    #[test]
    fn small_universe_is_refused() {
        let p = Params::new(29, 3).unwrap();
        let g = new_game(p, GameKind::Tau, RoleAssignment::new(Role::Minimizer)).unwrap();
        let err = minimizer_move(&g, &MinimizerMemory::new()).unwrap_err();
        assert_eq!(
            err,
            Error::UniverseTooSmall {
                n: 29,
                required: 30
            }
        );
    }

    #[test]
    fn finalize_before_the_end_is_a_state_error() {
        let (g, mem, _) = opening();
        assert!(matches!(finalize_cover(&g, &mem), Err(Error::State(_))));
    }

    #[test]
    fn lex_first_opponent_yields_a_valid_certificate() {
        use crate::game::{run_game, LexFirst, Mode, RunOptions};
        for (k, first) in [
            (3, Role::Minimizer),
            (6, Role::Maximizer),
            (6, Role::Minimizer),
        ] {
            let p = Params::new(min_universe(k) as u32, k).unwrap();
            let mut me = Minimizer::new();
            let mut them = LexFirst;
            let roles = RoleAssignment::new(first);
            let (a, b): (&mut dyn Strategy, &mut dyn Strategy) = match first {
                Role::Minimizer => (&mut me, &mut them),
                Role::Maximizer => (&mut them, &mut me),
            };
            let t = run_game(
                p,
                GameKind::Tau,
                roles,
                a,
                b,
                Mode::Certify,
                &RunOptions::default(),
            )
            .unwrap();
            let cert = t.certificate.expect("certificate recorded");
            assert!(check_disjointness_certificate(&cert, p).unwrap(), "k={k}");
            assert!(cert.cover.len() as u32 <= cover_bound(k, first == Role::Minimizer));
        }
    }
}
