//! Batch verification suites behind the `verify` subcommand.
//!
//! Every suite is deterministic: random opponents and random families are
//! seeded from the options, and rows come out in a fixed order.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{
    new_game, run_game, GameKind, GreedyStar, Mode, RandomLegal, Role, RoleAssignment, RunOptions,
    Seat, Strategy, Transcript,
};
use crate::maximizer::{self, Maximizer};
use crate::minimizer::{self, Minimizer, MinimizerMemory};
use crate::points::PointSet;
use crate::setfam::{
    check_disjointness_certificate, check_size_bounds, complete_to_maximal, covering_number,
    covering_number_exhaustive, degree_j, gen_ksubsets, legal_moves, KSet, Params, SetFamily,
};
use crate::solver::{self, ConflictBoard};
use crate::sperner;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Setfam,
    Minimizer,
    Maximizer,
    Solver,
    Sperner,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Setfam,
        Suite::Minimizer,
        Suite::Maximizer,
        Suite::Solver,
        Suite::Sperner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Setfam => "setfam",
            Suite::Minimizer => "minimizer",
            Suite::Maximizer => "maximizer",
            Suite::Solver => "solver",
            Suite::Sperner => "sperner",
        }
    }

    /// Parses a suite name; `all` gives every suite.
    pub fn parse_list(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .map(|s| vec![s])
            .ok_or_else(|| Error::param(format!("unknown suite {name:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Values of k for the strategy suites; each suite has its own default.
    pub ks: Option<Vec<u32>>,
    /// Random opponents (or random starts) per instance.
    pub seeds: u64,
    pub base_seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            ks: None,
            seeds: 100,
            base_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub suite: String,
    pub instance: String,
    pub measured: String,
    pub bound: String,
    pub pass: bool,
}

impl Row {
    fn new(suite: Suite, instance: String, measured: String, bound: String, pass: bool) -> Self {
        Row {
            suite: suite.name().to_string(),
            instance,
            measured,
            bound,
            pass,
        }
    }
}

pub fn run_suites(suites: &[Suite], opts: &VerifyOptions) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for &s in suites {
        rows.extend(match s {
            Suite::Setfam => setfam_suite(opts)?,
            Suite::Minimizer => minimizer_suite(opts)?,
            Suite::Maximizer => maximizer_suite(opts)?,
            Suite::Solver => solver_suite()?,
            Suite::Sperner => sperner_suite()?,
        });
    }
    Ok(rows)
}

pub fn all_pass(rows: &[Row]) -> bool {
    rows.iter().all(|r| r.pass)
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 output")
}

pub fn render_table(rows: &[Row]) -> String {
    let header = ["suite", "instance", "measured", "bound", "pass"];
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.suite.clone(),
                r.instance.clone(),
                r.measured.clone(),
                r.bound.clone(),
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for c in &cells {
        for (w, s) in width.iter_mut().zip(c) {
            *w = (*w).max(s.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |c: &[&str]| {
        let parts: Vec<String> = c
            .iter()
            .zip(width)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&header);
    for c in &cells {
        line(&c.each_ref().map(String::as_str));
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    let _ = writeln!(out, "{} rows, {} failed", rows.len(), failed);
    out
}

fn role_name(r: Role) -> &'static str {
    match r {
        Role::Minimizer => "min",
        Role::Maximizer => "max",
    }
}

fn bool_row(suite: Suite, instance: String, failures: usize, total: usize) -> Row {
    Row::new(
        suite,
        instance,
        format!("{failures} failures in {total}"),
        "0".into(),
        failures == 0,
    )
}

// ---------------------------------------------------------------- setfam

/// Every intersecting family on the board of `p`, in a fixed order.
pub fn all_intersecting_families(p: Params) -> Result<Vec<SetFamily>> {
    let sets: Vec<KSet> = gen_ksubsets(p)?.collect();
    if sets.len() > solver::HARD_SOLVE_CAP {
        return Err(Error::Resource(format!(
            "{} k-sets is too many to enumerate",
            sets.len()
        )));
    }
    let board = ConflictBoard::new(sets.len(), |i, j| !sets[i].meets(&sets[j]));
    let mut out = Vec::new();
    let mut stack = vec![(0u64, 0usize)];
    while let Some((pos, from)) = stack.pop() {
        out.push(SetFamily::from_sets(
            p,
            (0..sets.len())
                .filter(|i| pos >> i & 1 == 1)
                .map(|i| sets[i].clone()),
        )?);
        let avail = board.available(pos);
        for i in (from..sets.len()).rev() {
            if avail >> i & 1 == 1 {
                stack.push((pos | 1 << i, i + 1));
            }
        }
    }
    Ok(out)
}

/// A random intersecting family of `1..=max_sets` members, each drawn
/// uniformly from the legal moves.
pub fn random_intersecting_family(
    p: Params,
    max_sets: usize,
    rng: &mut ChaCha8Rng,
) -> Result<SetFamily> {
    let mut fam = SetFamily::new(p);
    let target = rng.gen_range(1..=max_sets);
    while fam.len() < target {
        let legal: Vec<KSet> = legal_moves(&fam)?.collect();
        match legal.choose(rng) {
            Some(s) => fam.push(s.clone())?,
            None => break,
        }
    }
    Ok(fam)
}

/// The maximal families behind the size-bound and degree-chain checks:
/// completions of every intersecting family for k = 2, n <= 10, and of
/// `starts` random families for k = 3, n <= 12.
pub fn size_bound_families(starts: u64, seed: u64) -> Result<Vec<(String, Vec<SetFamily>)>> {
    let mut groups = Vec::new();
    for n in 4..=10 {
        let p = Params::new(n, 2)?;
        let mut seen = HashSet::new();
        let mut fams = Vec::new();
        for start in all_intersecting_families(p)? {
            let m = complete_to_maximal(&start)?;
            if seen.insert(m.sorted_members()) {
                fams.push(m);
            }
        }
        groups.push((format!("n={n} k=2 all starts"), fams));
    }
    for n in 6..=12 {
        let p = Params::new(n, 3)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32);
        let mut fams = Vec::new();
        for _ in 0..starts {
            let start = random_intersecting_family(p, 4, &mut rng)?;
            fams.push(complete_to_maximal(&start)?);
        }
        groups.push((format!("n={n} k=3 {starts} random starts"), fams));
    }
    Ok(groups)
}

/// First `j < τ` with `d_j > k·d_{j+1}`, if any.
pub fn degree_chain_violation(fam: &SetFamily) -> Result<Option<u32>> {
    let k = fam.params().k();
    let (tau, _) = covering_number(fam)?;
    for j in 1..tau.min(k) {
        if degree_j(fam, j)? > k as u64 * degree_j(fam, j + 1)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Brute-force legal moves: every k-set on the board, filtered.
pub fn legal_moves_by_filter(fam: &SetFamily) -> Result<Vec<KSet>> {
    Ok(gen_ksubsets(fam.params())?
        .filter(|s| !fam.contains(s) && fam.iter().all(|m| m.meets(s)))
        .collect())
}

fn setfam_suite(opts: &VerifyOptions) -> Result<Vec<Row>> {
    let s = Suite::Setfam;
    let mut rows = Vec::new();
    let groups = size_bound_families(200, opts.base_seed)?;
    for (name, fams) in &groups {
        let mut bad_size = 0;
        let mut bad_chain = 0;
        for f in fams {
            if !check_size_bounds(f)?.pass {
                bad_size += 1;
            }
            if degree_chain_violation(f)?.is_some() {
                bad_chain += 1;
            }
        }
        rows.push(bool_row(
            s,
            format!("size bounds {name}"),
            bad_size,
            fams.len(),
        ));
        rows.push(bool_row(
            s,
            format!("degree chain {name}"),
            bad_chain,
            fams.len(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.base_seed ^ 0x5e7f);
    let (mut cover_bad, mut legal_bad) = (0, 0);
    let total = 1000;
    for _ in 0..total {
        let n = rng.gen_range(4..=10);
        let k = rng.gen_range(2..=(n / 2).min(4));
        let p = Params::new(n, k)?;
        let fam = random_intersecting_family(p, 6, &mut rng)?;
        if covering_number(&fam)?.0 != covering_number_exhaustive(&fam)?.0 {
            cover_bad += 1;
        }
        if legal_moves(&fam)?.collect::<Vec<_>>() != legal_moves_by_filter(&fam)? {
            legal_bad += 1;
        }
    }
    rows.push(bool_row(
        s,
        "covering number vs exhaustive, n<=10".into(),
        cover_bad,
        total,
    ));
    rows.push(bool_row(
        s,
        "legal moves vs board filter, n<=10".into(),
        legal_bad,
        total,
    ));
    Ok(rows)
}

// ------------------------------------------------------------- minimizer

/// Everything checked about one game played by the minimizer strategy.
#[derive(Debug, Clone)]
pub struct MinimizerAudit {
    pub transcript: Transcript,
    pub certificate_valid: bool,
    pub cover_size: usize,
    /// `(round, property, witness)` for every failed per-round check.
    pub round_failures: Vec<(u32, char, String)>,
    /// Rounds whose cover exceeded the growth bound.
    pub growth_failures: Vec<u32>,
    pub memory: MinimizerMemory,
}

/// Plays the minimizer against `opponent` in certify mode, then replays the
/// game and runs the per-round checks after each of its moves.
pub fn audit_minimizer(
    p: Params,
    first: Role,
    opponent: &mut dyn Strategy,
) -> Result<MinimizerAudit> {
    let roles = RoleAssignment::new(first);
    let mut me = Minimizer::new();
    let (a, b): (&mut dyn Strategy, &mut dyn Strategy) = match first {
        Role::Minimizer => (&mut me, opponent),
        Role::Maximizer => (opponent, &mut me),
    };
    let t = run_game(
        p,
        GameKind::Tau,
        roles,
        a,
        b,
        Mode::Certify,
        &RunOptions::default(),
    )?;
    let cert = t
        .certificate
        .clone()
        .ok_or_else(|| Error::internal("minimizer finished without a certificate"))?;
    let certificate_valid = check_disjointness_certificate(&cert, p)?;

    let mut mem = MinimizerMemory::new();
    let mut state = new_game(p, GameKind::Tau, roles)?;
    let mut round_failures = Vec::new();
    for (_, mv) in &t.moves {
        if state.role_to_move() == Role::Minimizer && !mem.is_complete(p.k()) {
            let (x, next) = minimizer::minimizer_move(&state, &mem)?;
            if &x != mv {
                return Err(Error::internal("minimizer replay diverged from the game"));
            }
            mem = next;
            state = state.apply_move(x)?;
            let r = minimizer::check_round_invariants(&state, &mem);
            for f in r.failures() {
                round_failures.push((r.round, f.property, f.witness.clone().unwrap_or_default()));
            }
        } else {
            state = state.apply_move(mv.clone())?;
        }
    }
    let growth_failures = minimizer::growth_report(&mem, p.k())
        .into_iter()
        .filter(|g| !g.pass)
        .map(|g| g.round)
        .collect();
    Ok(MinimizerAudit {
        cover_size: cert.cover.len(),
        transcript: t,
        certificate_valid,
        round_failures,
        growth_failures,
        memory: mem,
    })
}

fn minimizer_suite(opts: &VerifyOptions) -> Result<Vec<Row>> {
    let s = Suite::Minimizer;
    let ks = opts.ks.clone().unwrap_or_else(|| (3..=9).collect());
    let mut rows = Vec::new();
    for &k in &ks {
        if k < 2 {
            return Err(Error::param(format!(
                "the minimizer suite needs k >= 2, got {k}"
            )));
        }
        let p = Params::new(minimizer::min_universe(k) as u32, k)?;
        for first in [Role::Minimizer, Role::Maximizer] {
            let bound = minimizer::cover_bound(k, first == Role::Minimizer);
            let mut opponents: Vec<(String, Box<dyn Strategy>)> = vec![
                ("maximizer".into(), Box::new(Maximizer::new())),
                ("greedy-star".into(), Box::new(GreedyStar::new())),
            ];
            for i in 0..opts.seeds {
                let seed = opts.base_seed + i;
                opponents.push((
                    format!("random seed {seed}"),
                    Box::new(RandomLegal::new(seed)),
                ));
            }
            let (mut worst, mut invalid, mut rounds_bad, mut growth_bad) = (0, 0, 0, 0);
            let mut named = Vec::new();
            for (name, opp) in opponents.iter_mut() {
                let a = audit_minimizer(p, first, opp.as_mut())?;
                worst = worst.max(a.cover_size);
                let fail = !a.certificate_valid
                    || a.cover_size > bound as usize
                    || !a.round_failures.is_empty()
                    || !a.growth_failures.is_empty();
                invalid += usize::from(!a.certificate_valid);
                rounds_bad += a.round_failures.len();
                growth_bad += a.growth_failures.len();
                if fail && named.len() < 3 {
                    let what = a
                        .round_failures
                        .first()
                        .map(|(r, c, w)| format!("round {r} property {c}: {w}"))
                        .unwrap_or_else(|| "certificate or growth".into());
                    named.push(format!("{name} ({what})"));
                }
            }
            let inst = format!(
                "k={k} n={} first={} vs {} opponents",
                p.n(),
                role_name(first),
                opponents.len()
            );
            rows.push(Row::new(
                s,
                format!("{inst}: max |cover|"),
                worst.to_string(),
                format!("<= {bound}"),
                worst <= bound as usize,
            ));
            rows.push(bool_row(
                s,
                format!("{inst}: invalid certificates"),
                invalid,
                opponents.len(),
            ));
            let mut r = bool_row(
                s,
                format!("{inst}: round checks a-d"),
                rounds_bad,
                opponents.len(),
            );
            if !named.is_empty() {
                r.measured = format!("{}; {}", r.measured, named.join("; "));
            }
            rows.push(r);
            rows.push(bool_row(
                s,
                format!("{inst}: cover growth"),
                growth_bad,
                opponents.len(),
            ));
        }
    }
    Ok(rows)
}

// ------------------------------------------------------------- maximizer

#[derive(Debug, Clone)]
pub struct MaximizerAudit {
    pub transcript: Transcript,
    pub max_degree: u32,
    pub tau: u32,
    pub tau_lower: u32,
    pub union_size: usize,
    pub l: u32,
    /// `(round, property, witness)` for every failed per-round check.
    pub round_failures: Vec<(u32, char, String)>,
}

/// Plays the maximizer against `opponent` in certify mode and checks the
/// family of its first `l + 1` moves.
pub fn audit_maximizer(
    p: Params,
    first: Role,
    opponent: &mut dyn Strategy,
) -> Result<MaximizerAudit> {
    let roles = RoleAssignment::new(first);
    let mut me = Maximizer::new();
    let (a, b): (&mut dyn Strategy, &mut dyn Strategy) = match first {
        Role::Maximizer => (&mut me, opponent),
        Role::Minimizer => (opponent, &mut me),
    };
    let t = run_game(
        p,
        GameKind::Tau,
        roles,
        a,
        b,
        Mode::Certify,
        &RunOptions::default(),
    )?;
    let mem = me
        .memory()
        .ok_or_else(|| Error::internal("maximizer never moved"))?;
    let seat = if first == Role::Maximizer {
        Seat::A
    } else {
        Seat::B
    };
    let own = t
        .moves
        .iter()
        .filter(|(s, _)| *s == seat)
        .map(|(_, m)| m.clone())
        .take(mem.rounds_total() as usize);
    let fam = SetFamily::from_sets(p, own)?;
    let (tau, _) = covering_number(&fam)?;
    let degrees = t
        .degrees
        .clone()
        .ok_or_else(|| Error::internal("no degree table"))?;
    let mut round_failures = Vec::new();
    for i in 1..=mem.round() {
        let r = maximizer::check_round_properties(mem, i)?;
        for f in r.failures() {
            round_failures.push((i, f.property, f.witness.clone().unwrap_or_default()));
        }
    }
    Ok(MaximizerAudit {
        max_degree: degrees.max_degree,
        tau,
        tau_lower: maximizer::certify_tau_lower(mem)?,
        union_size: mem.schedule().union().len(),
        l: mem.schedule().l(),
        transcript: t,
        round_failures,
    })
}

fn maximizer_suite(opts: &VerifyOptions) -> Result<Vec<Row>> {
    let s = Suite::Maximizer;
    let ks = opts.ks.clone().unwrap_or_else(|| vec![4, 9, 16, 25]);
    let mut rows = Vec::new();
    for &k in &ks {
        let n_own = maximizer::min_universe(k);
        // The minimizer strategy needs a larger universe than the maximizer.
        let n_vs_min = n_own.max(minimizer::min_universe(k));
        for first in [Role::Minimizer, Role::Maximizer] {
            let mut games: Vec<(String, Params, Box<dyn Strategy>)> = vec![(
                "minimizer".into(),
                Params::new(n_vs_min as u32, k)?,
                Box::new(Minimizer::new()),
            )];
            for i in 0..opts.seeds {
                let seed = opts.base_seed + i;
                games.push((
                    format!("random seed {seed}"),
                    Params::new(n_own as u32, k)?,
                    Box::new(RandomLegal::new(seed)),
                ));
            }
            let (mut deg_bad, mut tau_bad, mut u_bad, mut rounds_bad) = (0, 0, 0, 0);
            let (mut worst_deg, mut min_tau, mut lower) = (0, u32::MAX, 0);
            let mut named = Vec::new();
            for (name, p, opp) in games.iter_mut() {
                let a = audit_maximizer(*p, first, opp.as_mut())?;
                let l = a.l as usize;
                worst_deg = worst_deg.max(a.max_degree);
                min_tau = min_tau.min(a.tau);
                lower = a.tau_lower;
                deg_bad += usize::from(a.max_degree > 2);
                tau_bad += usize::from(a.tau < a.tau_lower);
                u_bad += usize::from(a.union_size != l * (l + 1) / 2);
                rounds_bad += a.round_failures.len();
                if let Some((r, c, w)) = a.round_failures.first() {
                    if named.len() < 3 {
                        named.push(format!("{name} (round {r} property {c}: {w})"));
                    }
                }
            }
            let inst = format!(
                "k={k} n={n_own} first={} vs {} opponents",
                role_name(first),
                games.len()
            );
            rows.push(Row::new(
                s,
                format!("{inst}: max degree"),
                worst_deg.to_string(),
                "<= 2".into(),
                deg_bad == 0,
            ));
            rows.push(Row::new(
                s,
                format!("{inst}: min covering number"),
                min_tau.to_string(),
                format!(">= {lower}"),
                tau_bad == 0,
            ));
            rows.push(bool_row(
                s,
                format!("{inst}: |U| = l(l+1)/2"),
                u_bad,
                games.len(),
            ));
            let mut r = bool_row(
                s,
                format!("{inst}: round checks 1-3"),
                rounds_bad,
                games.len(),
            );
            if !named.is_empty() {
                r.measured = format!("{}; {}", r.measured, named.join("; "));
            }
            rows.push(r);
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------- solver

fn solver_suite() -> Result<Vec<Row>> {
    let s = Suite::Solver;
    let mut rows = Vec::new();
    for n in 4..=7 {
        let p = Params::new(n, 2)?;
        for (first, want) in [(Role::Minimizer, 3), (Role::Maximizer, n as u64 - 1)] {
            let r = solver::solve(p, GameKind::Saturation, RoleAssignment::new(first))?;
            let label = first.player_name(GameKind::Saturation);
            rows.push(Row::new(
                s,
                format!("saturation n={n} k=2 first={label}"),
                r.value.to_string(),
                format!("= {want}"),
                r.value == want,
            ));
            let b = solver::bounds_sanity(p, &r)?;
            rows.push(Row::new(
                s,
                format!("bounds n={n} k=2 first={label}"),
                r.value.to_string(),
                format!("in [{}, {}]", b.lower, b.upper),
                b.pass,
            ));
        }
    }
    for (n, k) in [(4, 2), (5, 2), (6, 2), (7, 2), (6, 3)] {
        let p = Params::new(n, k)?;
        for first in [Role::Minimizer, Role::Maximizer] {
            let r = solver::solve(p, GameKind::Tau, RoleAssignment::new(first))?;
            rows.push(Row::new(
                s,
                format!("tau n={n} k={k} first={}", first.player_name(GameKind::Tau)),
                r.value.to_string(),
                format!("in [1, {k}]"),
                (1..=k as u64).contains(&r.value),
            ));
        }
    }
    Ok(rows)
}

// --------------------------------------------------------------- sperner

fn sperner_suite() -> Result<Vec<Row>> {
    let s = Suite::Sperner;
    let mut rows = Vec::new();
    for n in 1..=4 {
        let v = sperner::solve_sperner(n, Role::Minimizer)?;
        rows.push(Row::new(
            s,
            format!("solve n={n} first=Fast"),
            v.to_string(),
            "= 1".into(),
            v == 1,
        ));
    }
    for n in 2..=4 {
        let v = sperner::solve_sperner(n, Role::Maximizer)?;
        rows.push(Row::new(
            s,
            format!("solve n={n} first=Slow"),
            v.to_string(),
            format!(">= {}", n as f64 / 2.0),
            2 * v >= n as u64,
        ));
    }
    for n in 2..=10u32 {
        let f: PointSet = sperner::slow_opening(n);
        let nb = sperner::neighborhood(&f, n)?.len() as u64;
        let want = ((n / 2) * n.div_ceil(2)) as u64;
        rows.push(Row::new(
            s,
            format!("neighbourhood size n={n}"),
            nb.to_string(),
            format!("= {want}"),
            nb == want,
        ));
        let c = sperner::max_comparable_capture(&f, n)?;
        let want = n.div_ceil(2) as u64;
        rows.push(Row::new(
            s,
            format!("max comparable capture n={n}"),
            c.to_string(),
            format!("= {want}"),
            c == want,
        ));
    }
    Ok(rows)
}
