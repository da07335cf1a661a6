//! Low-degree strategy for the score-maximising player of the τ-game.
//!
//! Each move is a fixed block from a schedule of `l + 1` pairwise
//! intersecting blocks (`l = ⌊√k⌋ - 1`), plus an adaptive part that meets
//! every opponent set while never using a point a third time. After `l + 1`
//! moves every point lies in at most two of the player's sets, so any cover
//! of them needs at least `⌈(l + 1) / 2⌉` points.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::check::{PropertyCheck, RoundReport};
use crate::error::{Error, Result};
use crate::game::{DegreeSummary, GameState, Role, Seat, Strategy, StrategyReport};
use crate::points::PointSet;
use crate::setfam::{KSet, Params};

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Smallest `n` with `n² >= k³`.
pub fn min_universe(k: u32) -> u64 {
    let cube = (k as u64).pow(3);
    let r = isqrt(cube);
    if r * r == cube {
        r
    } else {
        r + 1
    }
}

/// Lower bound on the covering number certified after `l + 1` moves.
pub fn tau_lower_bound(k: u32) -> u32 {
    let l = isqrt(k as u64) as u32 - 1;
    (l + 1).div_ceil(2)
}

/// The fixed parts of the first `l + 1` moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSchedule {
    l: u32,
    blocks: Vec<PointSet>,
    union: PointSet,
}

impl BlockSchedule {
    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    /// `U`, the union of all blocks: `{1, ..., l(l+1)/2}`.
    pub fn union(&self) -> &PointSet {
        &self.union
    }
}

/// For `k < 4` the schedule is a single empty block.
///
/// Block `i` takes the `(i-1)`-th smallest point of every earlier block and
/// fills up to `l` points with the smallest unused ones, so any two blocks
/// share exactly one point and no point lies in three blocks.
pub fn build_block_schedule(k: u32) -> Result<BlockSchedule> {
    if k == 0 {
        return Err(Error::param("the block schedule needs k >= 1"));
    }
    let l = isqrt(k as u64) as u32 - 1;
    let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(l as usize + 1);
    let mut next_unused = 1;
    for i in 0..=l as usize {
        let mut block: Vec<u32> = blocks.iter().map(|b| b[i - 1]).collect();
        while block.len() < l as usize {
            block.push(next_unused);
            next_unused += 1;
        }
        block.sort_unstable();
        blocks.push(block);
    }
    let blocks: Vec<PointSet> = blocks
        .into_iter()
        .map(|b| b.into_iter().collect())
        .collect();
    let union = PointSet::range(1, next_unused - 1);
    Ok(BlockSchedule { l, blocks, union })
}

/// What one move looked like.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: u32,
    /// `(opponent move index from 1, point used to meet it)`; opponent
    /// moves already met by the rest of the set are skipped.
    pub hits: Vec<(usize, u32)>,
    /// Padding points no claimed set had used.
    pub untouched: usize,
    /// Padding points taken from opponent sets because untouched points ran out.
    pub reused: usize,
    /// Smallest number of points of an opponent set that are neither in the
    /// block union nor already used twice by the adaptive parts.
    pub slack: Option<i64>,
    /// `k - k/2 - (i-1)²`, which the slack must exceed.
    pub slack_floor: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximizerMemory {
    schedule: BlockSchedule,
    seat: Option<Seat>,
    round: u32,
    pub(crate) adaptive: Vec<PointSet>,
    degree: BTreeMap<u32, u32>,
    records: Vec<RoundRecord>,
}

impl MaximizerMemory {
    pub fn new(k: u32) -> Result<Self> {
        Ok(MaximizerMemory {
            schedule: build_block_schedule(k)?,
            seat: None,
            round: 0,
            adaptive: Vec::new(),
            degree: BTreeMap::new(),
            records: Vec::new(),
        })
    }

    pub fn schedule(&self) -> &BlockSchedule {
        &self.schedule
    }

    /// Moves made so far.
    pub fn round(&self) -> u32 {
        self.round
    }

    /// Adaptive parts of the moves, in order.
    pub fn adaptive_parts(&self) -> &[PointSet] {
        &self.adaptive
    }

    /// Point degrees over the player's own sets.
    pub fn degree_table(&self) -> &BTreeMap<u32, u32> {
        &self.degree
    }

    pub fn records(&self) -> &[RoundRecord] {
        &self.records
    }

    /// Number of strategic moves.
    pub fn rounds_total(&self) -> u32 {
        self.schedule.l + 1
    }

    pub fn is_complete(&self) -> bool {
        self.round >= self.rounds_total()
    }
}

fn adaptive_degrees(parts: &[PointSet]) -> BTreeMap<u32, u32> {
    let mut deg = BTreeMap::new();
    for s in parts {
        for x in s.iter() {
            *deg.entry(x).or_insert(0) += 1;
        }
    }
    deg
}

/// One move of the strategy; returns the move and the updated memory.
pub fn maximizer_move(state: &GameState, mem: &MaximizerMemory) -> Result<(KSet, MaximizerMemory)> {
    let p = state.params();
    let (n, k) = (p.n(), p.k());
    let need = min_universe(k);
    if (n as u64) < need {
        return Err(Error::UniverseTooSmall { n, required: need });
    }
    if state.role_to_move() != Role::Maximizer {
        return Err(Error::state("it is not the maximizer's turn"));
    }
    if mem.schedule.l != isqrt(k as u64) as u32 - 1 {
        return Err(Error::state("memory was built for a different k"));
    }
    let seat = state.seat_to_move();
    if mem.seat.is_some_and(|s| s != seat) {
        return Err(Error::state("memory belongs to the other seat"));
    }
    if mem.is_complete() {
        return Err(Error::state(format!(
            "all {} strategic moves are made",
            mem.rounds_total()
        )));
    }
    let own: Vec<&KSet> = state.moves_of(seat).collect();
    if own.len() != mem.round as usize {
        return Err(Error::state(format!(
            "history has {} own moves, memory expects {}",
            own.len(),
            mem.round
        )));
    }

    let i = mem.round as usize + 1;
    let l = mem.schedule.l as usize;
    let u = &mem.schedule.union;
    let block = &mem.schedule.blocks[i - 1];
    let opp: Vec<&KSet> = state.moves_of(seat.other()).collect();
    let deg = adaptive_degrees(&mem.adaptive);
    let deg_of = |x: u32| deg.get(&x).copied().unwrap_or(0);
    let saturated: PointSet = deg
        .iter()
        .filter(|(_, &d)| d >= 2)
        .map(|(&x, _)| x)
        .collect();
    let blocked = u | &saturated;

    let slack = opp
        .iter()
        .map(|m| (m.points() - &blocked).len() as i64)
        .min();
    let slack_floor = k as i64 - k as i64 / 2 - (i as i64 - 1).pow(2);

    let mut adaptive = PointSet::new();
    let mut hits = Vec::new();
    for (h, m) in opp.iter().enumerate() {
        if m.points().meets(block) || m.points().meets(&adaptive) {
            continue;
        }
        let avail = m.points() - &blocked;
        let x = avail
            .iter()
            .find(|&x| deg_of(x) == 0)
            .or_else(|| avail.first())
            .ok_or_else(|| {
                Error::internal(format!(
                    "opponent set {m} has no point outside U of degree < 2"
                ))
            })?;
        adaptive.insert(x);
        hits.push((h + 1, x));
    }
    let want = k as usize - l;
    if adaptive.len() > want {
        return Err(Error::internal(format!(
            "{} opponent sets need separate points but only {want} are available",
            adaptive.len()
        )));
    }

    // Padding candidates in order of preference. When the preferred padding
    // rebuilds a set that is already claimed, the next combination is tried;
    // each rejection is a distinct claimed set, so this stays short.
    let claimed_union = state.claimed().union();
    let untouched_pts = (1..=n).filter(|&x| !u.contains(x) && !claimed_union.contains(x));
    let (cu, bl) = (&claimed_union, &blocked);
    let reusable = [0, 1].into_iter().flat_map(|d| {
        (1..=n).filter(move |&x| cu.contains(x) && !bl.contains(x) && deg_of(x) == d)
    });
    let pool: Vec<u32> = untouched_pts
        .chain(reusable)
        .filter(|&x| !adaptive.contains(x))
        .collect();
    let base = block | &adaptive;
    let mut chosen = None;
    for pad in pool.iter().copied().combinations(want - adaptive.len()) {
        let mut pts = base.clone();
        pts.extend(pad.iter().copied());
        let mv = KSet::from_points(p, pts)?;
        if !state.claimed().contains(&mv) {
            chosen = Some((mv, pad));
            break;
        }
    }
    let (mv, pad) = chosen.ok_or_else(|| Error::internal("no unclaimed padding is left"))?;
    let untouched = pad.iter().filter(|&&x| !claimed_union.contains(x)).count();
    let reused = pad.len() - untouched;
    adaptive.extend(pad);

    let mut next = mem.clone();
    next.seat = Some(seat);
    next.round += 1;
    for x in mv.points().iter() {
        *next.degree.entry(x).or_insert(0) += 1;
    }
    next.adaptive.push(adaptive);
    next.records.push(RoundRecord {
        round: i as u32,
        hits,
        untouched,
        reused,
        slack,
        slack_floor,
    });
    Ok((mv, next))
}

/// Evaluates over the first `i` adaptive parts:
/// (1) at most `i²/2` points used twice, (2) no point used three times,
/// (3) no adaptive part meets the block union.
pub fn check_round_properties(mem: &MaximizerMemory, i: u32) -> Result<RoundReport> {
    if i > mem.round {
        return Err(Error::param(format!(
            "round {i} not played yet ({} made)",
            mem.round
        )));
    }
    let parts = &mem.adaptive[..i as usize];
    let deg = adaptive_degrees(parts);
    let twice = deg.values().filter(|&&d| d == 2).count();
    let w1 = (2 * twice > (i * i) as usize)
        .then(|| format!("{twice} points are used twice, more than {i}²/2"));
    let w2 = deg
        .iter()
        .find(|(_, &d)| d >= 3)
        .map(|(x, d)| format!("point {x} is used {d} times"));
    let u = &mem.schedule.union;
    let w3 = parts
        .iter()
        .position(|s| s.meets(u))
        .map(|j| format!("adaptive part {} meets U in {}", j + 1, &parts[j] & u));
    Ok(RoundReport {
        round: i,
        checks: vec![
            PropertyCheck::verdict('1', w1),
            PropertyCheck::verdict('2', w2),
            PropertyCheck::verdict('3', w3),
        ],
    })
}

/// `⌈(l + 1) / 2⌉`, once all `l + 1` moves are made and no point lies in
/// three of them.
pub fn certify_tau_lower(mem: &MaximizerMemory) -> Result<u32> {
    if !mem.is_complete() {
        return Err(Error::state(format!(
            "the bound needs {} moves, only {} made",
            mem.rounds_total(),
            mem.round
        )));
    }
    if let Some((x, d)) = mem.degree.iter().find(|(_, &d)| d > 2) {
        return Err(Error::internal(format!(
            "point {x} lies in {d} of the player's sets"
        )));
    }
    Ok(mem.rounds_total().div_ceil(2))
}

/// The strategy as a player; hands off after `l + 1` moves.
#[derive(Debug, Clone)]
pub struct Maximizer {
    mem: Option<MaximizerMemory>,
}

impl Maximizer {
    pub fn new() -> Self {
        Maximizer { mem: None }
    }

    pub fn memory(&self) -> Option<&MaximizerMemory> {
        self.mem.as_ref()
    }
}

impl Default for Maximizer {
    fn default() -> Self {
        Self::new()
    }
}

impl Strategy for Maximizer {
    fn name(&self) -> &str {
        "maximizer"
    }

    fn next_move(&mut self, state: &GameState) -> Result<Option<KSet>> {
        let mem = match self.mem.take() {
            Some(m) => m,
            None => MaximizerMemory::new(state.params().k())?,
        };
        if mem.is_complete() {
            self.mem = Some(mem);
            return Ok(None);
        }
        let (mv, mem) = maximizer_move(state, &mem)?;
        self.mem = Some(mem);
        Ok(Some(mv))
    }

    fn handed_off(&self) -> bool {
        self.mem.as_ref().is_some_and(|m| m.is_complete())
    }

    fn report(&self, state: &GameState) -> Result<StrategyReport> {
        let Some(mem) = self.mem.as_ref().filter(|m| m.is_complete()) else {
            return Ok(StrategyReport::default());
        };
        let seat = mem.seat.expect("complete memory has a seat");
        let own: Vec<&KSet> = state
            .moves_of(seat)
            .take(mem.rounds_total() as usize)
            .collect();
        Ok(StrategyReport {
            certificate: None,
            degrees: Some(DegreeSummary::of_sets(own, certify_tau_lower(mem)?)),
        })
    }
}

/// Whether the universe is large enough for the strategy.
pub fn supported(p: Params) -> bool {
    p.n() as u64 >= min_universe(p.k())
}
