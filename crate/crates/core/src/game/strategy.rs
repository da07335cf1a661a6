use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::points::PointSet;
use crate::setfam::{legal_moves, CoverCertificate, KSet, LegalMoves, SetFamily};

use super::GameState;

/// A stateful policy for one seat.
///
/// `next_move` returns `Ok(None)` to hand the seat over to the engine's
/// fallback (lexicographically first legal move). Strategies with a bounded
/// strategic phase report `handed_off() == false` until that phase is over;
/// certify runs stop once every seat reports `true`.
pub trait Strategy {
    fn name(&self) -> &str;

    fn next_move(&mut self, state: &GameState) -> Result<Option<KSet>>;

    fn handed_off(&self) -> bool {
        true
    }

    /// Certificates gathered so far; called once the run has stopped.
    fn report(&self, _state: &GameState) -> Result<StrategyReport> {
        Ok(StrategyReport::default())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StrategyReport {
    pub certificate: Option<CoverCertificate>,
    pub degrees: Option<DegreeSummary>,
}

/// Point degrees over one player's claimed sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub max_degree: u32,
    /// Lower bound on the covering number implied by the degree table.
    pub tau_lower: u32,
    /// `[point, degree]` pairs for every point of positive degree, ascending.
    pub table: Vec<(u32, u32)>,
}

impl DegreeSummary {
    pub fn of_sets<'a>(sets: impl IntoIterator<Item = &'a KSet>, tau_lower: u32) -> Self {
        let mut deg: BTreeMap<u32, u32> = BTreeMap::new();
        for s in sets {
            for p in s.points().iter() {
                *deg.entry(p).or_default() += 1;
            }
        }
        DegreeSummary {
            max_degree: deg.values().copied().max().unwrap_or(0),
            tau_lower,
            table: deg.into_iter().collect(),
        }
    }
}

/// Always the lexicographically smallest legal move.
#[derive(Debug, Clone, Default)]
pub struct LexFirst;

impl Strategy for LexFirst {
    fn name(&self) -> &str {
        "lex-first"
    }

    fn next_move(&mut self, state: &GameState) -> Result<Option<KSet>> {
        Ok(legal_moves(state.claimed())?.next())
    }
}

/// Picks the lexicographically smallest legal move through a pivot point,
/// fixed on the first call as the highest-degree point of the claimed family
/// (smallest on ties, 1 on an empty board).
#[derive(Debug, Clone, Default)]
pub struct GreedyStar {
    pivot: Option<u32>,
}

impl GreedyStar {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pivot(&self) -> Option<u32> {
        self.pivot
    }
}

fn max_degree_point(fam: &SetFamily) -> u32 {
    let mut deg: BTreeMap<u32, usize> = BTreeMap::new();
    for m in fam.iter() {
        for p in m.points().iter() {
            *deg.entry(p).or_default() += 1;
        }
    }
    let mut best = (0, 1);
    for (p, d) in deg {
        if d > best.0 {
            best = (d, p);
        }
    }
    best.1
}

impl Strategy for GreedyStar {
    fn name(&self) -> &str {
        "greedy-star"
    }

    fn next_move(&mut self, state: &GameState) -> Result<Option<KSet>> {
        let pivot = *self
            .pivot
            .get_or_insert_with(|| max_degree_point(state.claimed()));
        let through: PointSet = [pivot].into_iter().collect();
        if let Some(mv) = LegalMoves::new(state.claimed(), through)?.next() {
            return Ok(Some(mv));
        }
        Ok(legal_moves(state.claimed())?.next())
    }
}

/// Boards up to this many k-sets are sampled uniformly from the full list of
/// legal moves.
const ENUMERATE_LIMIT: u128 = 20_000;
const SAMPLE_ATTEMPTS: usize = 64;

/// Seeded random legal play.
///
/// On small boards the move is uniform over all legal moves. On large boards
/// a move is built by hitting every claimed set with one of its own points
/// and padding, half the time from points already in play, so the sampler
/// keeps producing sets that overlap the history heavily.
#[derive(Debug, Clone)]
pub struct RandomLegal {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomLegal {
    pub fn new(seed: u64) -> Self {
        RandomLegal {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn sample(&mut self, claimed: &SetFamily) -> Option<KSet> {
        let p = claimed.params();
        let k = p.k() as usize;
        let in_play: Vec<u32> = claimed.union().to_vec();
        let mut order: Vec<&KSet> = claimed.iter().collect();
        order.shuffle(&mut self.rng);
        let mut pick = PointSet::new();
        for m in order {
            if m.points().meets(&pick) {
                continue;
            }
            let pts = m.elements();
            pick.insert(pts[self.rng.gen_range(0..pts.len())]);
            if pick.len() > k {
                return None;
            }
        }
        let mut guard = 0;
        while pick.len() < k {
            let x = if !in_play.is_empty() && self.rng.gen_bool(0.5) {
                in_play[self.rng.gen_range(0..in_play.len())]
            } else {
                self.rng.gen_range(1..=p.n())
            };
            pick.insert(x);
            guard += 1;
            if guard > 64 * k + 64 {
                return None;
            }
        }
        let set = KSet::from_points(p, pick).ok()?;
        (!claimed.contains(&set)).then_some(set)
    }
}

impl Strategy for RandomLegal {
    fn name(&self) -> &str {
        "random"
    }

    fn next_move(&mut self, state: &GameState) -> Result<Option<KSet>> {
        let claimed = state.claimed();
        if claimed.params().board_size() <= ENUMERATE_LIMIT {
            let all: Vec<KSet> = legal_moves(claimed)?.collect();
            return Ok(all.choose(&mut self.rng).cloned());
        }
        for _ in 0..SAMPLE_ATTEMPTS {
            if let Some(s) = self.sample(claimed) {
                return Ok(Some(s));
            }
        }
        Ok(legal_moves(claimed)?.next())
    }
}

/// Replays a fixed list of moves, then hands off.
#[derive(Debug, Clone, Default)]
pub struct Scripted {
    moves: VecDeque<KSet>,
}

impl Scripted {
    pub fn new(moves: impl IntoIterator<Item = KSet>) -> Self {
        Scripted {
            moves: moves.into_iter().collect(),
        }
    }
}

impl Strategy for Scripted {
    fn name(&self) -> &str {
        "scripted"
    }

    fn next_move(&mut self, _state: &GameState) -> Result<Option<KSet>> {
        Ok(self.moves.pop_front())
    }
}

/// The opponent pool: random (seeded), greedy-star, lex-first.
pub fn baseline_strategies(seed: u64) -> Vec<Box<dyn Strategy>> {
    vec![
        Box::new(RandomLegal::new(seed)),
        Box::new(GreedyStar::new()),
        Box::new(LexFirst),
    ]
}
