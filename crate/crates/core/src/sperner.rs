//! The saturation game on antichains of subsets of `[n]`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{GameFamily, GameKind, Mode, MoveRecord, Role, Seat, TranscriptRecord};
use crate::points::PointSet;
use crate::setfam::{gen_ksubsets, Params};
use crate::solver::{ConflictBoard, Minimax};

/// Largest `n` the exact solver accepts.
pub const SPERNER_SOLVE_MAX_N: u32 = 4;
/// Largest `n` for the functions that scan all of `2^[n]`.
pub const SPERNER_SCAN_MAX_N: u32 = 20;

fn comparable(a: &PointSet, b: &PointSet) -> bool {
    a.is_subset(b) || b.is_subset(a)
}

fn check_subset(s: &PointSet, n: u32) -> Result<()> {
    if s.first() == Some(0) || s.last().is_some_and(|m| m > n) {
        return Err(Error::param(format!("{s} is not a subset of [1, {n}]")));
    }
    Ok(())
}

fn check_scan(n: u32) -> Result<()> {
    if n > SPERNER_SCAN_MAX_N {
        return Err(Error::Resource(format!(
            "scanning all subsets of [{n}] exceeds the limit n <= {SPERNER_SCAN_MAX_N}"
        )));
    }
    Ok(())
}

/// All subsets of `[n]`, by size and then lexicographically.
pub fn all_subsets(n: u32) -> impl Iterator<Item = PointSet> {
    std::iter::once(PointSet::new()).chain((1..=n).flat_map(move |k| {
        gen_ksubsets(Params::new(n, k).expect("1 <= k <= n"))
            .expect("valid parameters")
            .map(|s| s.points().clone())
    }))
}

/// Fails unless `claimed` is an antichain of distinct subsets of `[n]`.
pub fn check_antichain(claimed: &[PointSet], n: u32) -> Result<()> {
    for (i, a) in claimed.iter().enumerate() {
        check_subset(a, n)?;
        if let Some(b) = claimed[..i].iter().find(|b| comparable(a, b)) {
            return Err(Error::state(format!("{b} and {a} are comparable")));
        }
    }
    Ok(())
}

/// Unclaimed subsets comparable to no claimed set, in the order of
/// [`all_subsets`].
pub fn sperner_legal_moves(
    claimed: &[PointSet],
    n: u32,
) -> Result<impl Iterator<Item = PointSet> + '_> {
    check_antichain(claimed, n)?;
    check_scan(n)?;
    Ok(all_subsets(n).filter(move |s| !claimed.iter().any(|c| comparable(s, c))))
}

/// Sets obtained from `f` by swapping one element for one outside it.
pub fn neighborhood(f: &PointSet, n: u32) -> Result<Vec<PointSet>> {
    check_subset(f, n)?;
    if f.is_empty() || f.len() == n as usize {
        return Err(Error::param(
            "the neighbourhood needs a proper non-empty subset",
        ));
    }
    let outside: Vec<u32> = (1..=n).filter(|&y| !f.contains(y)).collect();
    let mut out = Vec::with_capacity(f.len() * outside.len());
    for x in f.iter() {
        for &y in &outside {
            let mut g = f.clone();
            g.remove(x);
            g.insert(y);
            out.push(g);
        }
    }
    out.sort();
    Ok(out)
}

/// Largest number of neighbours of `f` that a single set incomparable to
/// `f` can be comparable to. Requires `|f| = ⌊n/2⌋`.
pub fn max_comparable_capture(f: &PointSet, n: u32) -> Result<u64> {
    check_subset(f, n)?;
    if f.len() != (n / 2) as usize || n < 2 {
        return Err(Error::param(format!(
            "the opening set must have {} elements, got {f}",
            n / 2
        )));
    }
    check_scan(n)?;
    let nbhd = neighborhood(f, n)?;
    Ok(all_subsets(n)
        .filter(|g| !comparable(g, f))
        .map(|g| nbhd.iter().filter(|h| comparable(h, &g)).count() as u64)
        .max()
        .unwrap_or(0))
}

/// Slow's opening move, `{1, ..., ⌊n/2⌋}`.
pub fn slow_opening(n: u32) -> PointSet {
    PointSet::range(1, n / 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpernerSolveResult {
    pub value: u64,
    pub principal_variation: Vec<PointSet>,
    pub positions_expanded: u64,
}

/// Exact game value; `first` is the role of the player who opens.
pub fn solve_sperner_full(n: u32, first: Role) -> Result<SpernerSolveResult> {
    if n > SPERNER_SOLVE_MAX_N {
        return Err(Error::Resource(format!(
            "exact Sperner solve is limited to n <= {SPERNER_SOLVE_MAX_N}, got {n}"
        )));
    }
    let subsets: Vec<PointSet> = all_subsets(n).collect();
    let board = ConflictBoard::new(subsets.len(), |i, j| comparable(&subsets[i], &subsets[j]));
    let mut mm = Minimax::new(board, first == Role::Minimizer, |pos: u64| {
        Ok(pos.count_ones() as u64)
    });
    let value = mm.value(0)?;
    let pv = mm.principal_variation(0)?;
    Ok(SpernerSolveResult {
        value,
        principal_variation: pv.into_iter().map(|i| subsets[i].clone()).collect(),
        positions_expanded: mm.positions_expanded(),
    })
}

pub fn solve_sperner(n: u32, first: Role) -> Result<u64> {
    Ok(solve_sperner_full(n, first)?.value)
}

/// Move policies for Sperner play.
#[derive(Debug, Clone)]
pub enum SpernerPolicy {
    LexFirst,
    /// Claims `{1, ..., ⌊n/2⌋}` if it is legal, otherwise the first legal set.
    SlowOpening,
    Random(Box<ChaCha8Rng>),
}

impl SpernerPolicy {
    pub fn random(seed: u64) -> Self {
        SpernerPolicy::Random(Box::new(ChaCha8Rng::seed_from_u64(seed)))
    }

    pub fn from_name(name: &str, seed: u64) -> Result<Self> {
        match name {
            "lex-first" => Ok(SpernerPolicy::LexFirst),
            "slow-opening" => Ok(SpernerPolicy::SlowOpening),
            "random" => Ok(Self::random(seed)),
            _ => Err(Error::param(format!(
                "unknown Sperner strategy {name:?} (expected lex-first, slow-opening or random)"
            ))),
        }
    }

    fn pick(&mut self, claimed: &[PointSet], n: u32) -> Result<Option<PointSet>> {
        let mut legal = sperner_legal_moves(claimed, n)?;
        match self {
            SpernerPolicy::LexFirst => Ok(legal.next()),
            SpernerPolicy::SlowOpening => {
                let open = slow_opening(n);
                let all: Vec<PointSet> = legal.collect();
                Ok(all.iter().find(|s| **s == open).or(all.first()).cloned())
            }
            SpernerPolicy::Random(rng) => {
                let all: Vec<PointSet> = legal.collect();
                Ok(all.choose(rng).cloned())
            }
        }
    }
}

/// Plays until the claimed antichain is maximal and returns the transcript.
pub fn play_sperner(
    n: u32,
    first: Role,
    a: &mut SpernerPolicy,
    b: &mut SpernerPolicy,
    seed: u64,
) -> Result<TranscriptRecord> {
    check_scan(n)?;
    let mut claimed: Vec<PointSet> = Vec::new();
    let mut moves = Vec::new();
    loop {
        let seat = if claimed.len().is_multiple_of(2) {
            Seat::A
        } else {
            Seat::B
        };
        let policy = match seat {
            Seat::A => &mut *a,
            Seat::B => &mut *b,
        };
        let Some(s) = policy.pick(&claimed, n)? else {
            break;
        };
        moves.push(MoveRecord {
            player: seat,
            set: s.to_vec(),
        });
        claimed.push(s);
    }
    Ok(TranscriptRecord {
        game: GameFamily::Sperner,
        kind: GameKind::Saturation,
        n,
        k: 0,
        first: Seat::A,
        first_role: Some(first),
        score: claimed.len() as u64,
        moves,
        certificate: None,
        mode: Mode::FullPlay,
        seed,
        degrees: None,
    })
}

/// Replays a Sperner transcript and checks the antichain property, turn
/// order, maximality and score.
pub fn replay_sperner(rec: &TranscriptRecord) -> Result<Vec<PointSet>> {
    if rec.game != GameFamily::Sperner {
        return Err(Error::param("not a Sperner transcript"));
    }
    let mut claimed: Vec<PointSet> = Vec::new();
    for (t, m) in rec.moves.iter().enumerate() {
        let expected = if t % 2 == 0 {
            rec.first
        } else {
            rec.first.other()
        };
        if m.player != expected {
            return Err(Error::RuleViolation(format!(
                "move {} is out of turn",
                t + 1
            )));
        }
        let s: PointSet = m.set.iter().copied().collect();
        check_subset(&s, rec.n)?;
        if let Some(c) = claimed.iter().find(|c| comparable(c, &s)) {
            return Err(Error::RuleViolation(format!(
                "{s} is comparable to the claimed {c}"
            )));
        }
        claimed.push(s);
    }
    if rec.mode == Mode::FullPlay && sperner_legal_moves(&claimed, rec.n)?.next().is_some() {
        return Err(Error::state("the recorded antichain is not maximal"));
    }
    if claimed.len() as u64 != rec.score {
        return Err(Error::state(format!(
            "recorded score {} but {} sets were claimed",
            rec.score,
            claimed.len()
        )));
    }
    Ok(claimed)
}
