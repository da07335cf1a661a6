//! Acceptance suite: one pass/fail line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::collections::{BTreeMap, HashMap};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satgame::game::{GameKind, GreedyStar, RandomLegal, Role, RoleAssignment, Seat, Strategy};
use satgame::maximizer::{self, Maximizer};
use satgame::minimizer::{self, round_cover_bound, Minimizer};
use satgame::setfam::{
    binomial, check_size_bounds, covering_number, gen_ksubsets, legal_moves, CoverCertificate,
    KSet, Params, SetFamily,
};
use satgame::solver::solve;
use satgame::sperner::{max_comparable_capture, neighborhood, slow_opening, solve_sperner};
use satgame::verify::{audit_maximizer, audit_minimizer, size_bound_families};
use satgame::PointSet;

type Outcome = Result<String, String>;

// ------------------------------------------------------------ oracles

/// Smallest hitting set size by trying every subset of the union in order
/// of size.
fn tau_exhaustive(sets: &[PointSet]) -> u32 {
    let pts: Vec<u32> = sets.iter().fold(PointSet::new(), |u, s| &u | s).to_vec();
    (1..=pts.len() as u32)
        .find(|&t| has_cover_of_size(sets, &pts, t))
        .unwrap_or(0)
}

fn has_cover_of_size(sets: &[PointSet], pts: &[u32], t: u32) -> bool {
    fn go(sets: &[PointSet], pts: &[u32], from: usize, left: u32, pick: &mut PointSet) -> bool {
        if left == 0 {
            return sets.iter().all(|s| s.meets(pick));
        }
        (from..pts.len()).any(|i| {
            pick.insert(pts[i]);
            let hit = go(sets, pts, i + 1, left - 1, pick);
            pick.remove(pts[i]);
            hit
        })
    }
    go(sets, pts, 0, t, &mut PointSet::new())
}

/// `d_j` by counting every j-subset of every member.
fn degree_oracle(sets: &[Vec<u32>], j: usize) -> u64 {
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    fn subsets(
        v: &[u32],
        j: usize,
        from: usize,
        cur: &mut Vec<u32>,
        out: &mut HashMap<Vec<u32>, u64>,
    ) {
        if cur.len() == j {
            *out.entry(cur.clone()).or_default() += 1;
            return;
        }
        for i in from..v.len() {
            cur.push(v[i]);
            subsets(v, j, i + 1, cur, out);
            cur.pop();
        }
    }
    for s in sets {
        subsets(s, j, 0, &mut Vec::new(), &mut counts);
    }
    counts.values().copied().max().unwrap_or(0)
}

/// Checks a cover certificate against the minimizer's own moves: `k + 1`
/// distinct witnesses it claimed, each with a non-empty residue outside
/// the cover, residues pairwise disjoint.
fn certificate_ok(cert: &CoverCertificate, own: &[KSet], k: u32) -> Result<(), String> {
    if cert.witnesses.len() != k as usize + 1 {
        return Err(format!(
            "{} witnesses, expected {}",
            cert.witnesses.len(),
            k + 1
        ));
    }
    let mut seen = PointSet::new();
    for (i, w) in cert.witnesses.iter().enumerate() {
        if !own.contains(w) || cert.witnesses[..i].contains(w) {
            return Err(format!("witness {w} is not a distinct own move"));
        }
        let residue = w.points() - &cert.cover;
        if residue.is_empty() {
            return Err(format!("witness {w} lies inside the cover"));
        }
        if residue.meets(&seen) {
            return Err(format!("residue of {w} overlaps an earlier residue"));
        }
        seen = &seen | &residue;
    }
    Ok(())
}

fn own_moves(t: &satgame::game::Transcript, seat: Seat) -> Vec<KSet> {
    t.moves
        .iter()
        .filter(|(s, _)| *s == seat)
        .map(|(_, m)| m.clone())
        .collect()
}

fn seat_of(role: Role, first: Role) -> Seat {
    if role == first {
        Seat::A
    } else {
        Seat::B
    }
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let el = start.elapsed();
    if el > limit {
        Err(format!("{detail}; took {el:.1?}, limit {limit:?}"))
    } else {
        Ok(format!("{detail}; {el:.1?}"))
    }
}

// ---------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 4..=7 {
        let p = Params::new(n, 2).unwrap();
        for (first, want) in [(Role::Minimizer, 3), (Role::Maximizer, n as u64 - 1)] {
            let v = solve(p, GameKind::Saturation, RoleAssignment::new(first))
                .map_err(|e| e.to_string())?
                .value;
            if v != want {
                return Err(format!("n={n} first={first:?}: value {v}, expected {want}"));
            }
        }
    }
    within(start, Duration::from_secs(120), "8 values match".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut games = 0;
    for k in 3..=9 {
        let p = Params::new(minimizer::min_universe(k) as u32, k).unwrap();
        for first in [Role::Minimizer, Role::Maximizer] {
            let bound = minimizer::cover_bound(k, first == Role::Minimizer) as usize;
            let mut opponents: Vec<(String, Box<dyn Strategy>)> = vec![
                ("maximizer".into(), Box::new(Maximizer::new())),
                ("greedy-star".into(), Box::new(GreedyStar::new())),
            ];
            for seed in 0..100 {
                opponents.push((format!("random {seed}"), Box::new(RandomLegal::new(seed))));
            }
            for (name, opp) in opponents.iter_mut() {
                let tag = format!("k={k} first={first:?} vs {name}");
                let a =
                    audit_minimizer(p, first, opp.as_mut()).map_err(|e| format!("{tag}: {e}"))?;
                let cert = a
                    .transcript
                    .certificate
                    .clone()
                    .ok_or(format!("{tag}: no certificate"))?;
                let own = own_moves(&a.transcript, seat_of(Role::Minimizer, first));
                certificate_ok(&cert, &own, k).map_err(|e| format!("{tag}: {e}"))?;
                if !a.certificate_valid {
                    return Err(format!("{tag}: library rejects the certificate"));
                }
                if cert.cover.len() > bound {
                    return Err(format!("{tag}: |cover| = {} > {bound}", cert.cover.len()));
                }
                if let Some((r, c, w)) = a.round_failures.first() {
                    return Err(format!("{tag}: round {r} property {c} fails: {w}"));
                }
                for step in a.memory.steps() {
                    if (2..=k).contains(&step.round) {
                        let b = round_cover_bound(step.round, k).unwrap() as usize;
                        if step.cover.len() > b {
                            return Err(format!(
                                "{tag}: round {} cover {} > {b}",
                                step.round,
                                step.cover.len()
                            ));
                        }
                    }
                }
                games += 1;
            }
        }
    }
    within(
        start,
        Duration::from_secs(300),
        format!("{games} games, all certificates valid"),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut games = 0;
    for k in [4u32, 9, 16, 25] {
        let n = maximizer::min_universe(k);
        if (n * n) < (k as u64).pow(3) || ((n - 1) * (n - 1)) >= (k as u64).pow(3) {
            return Err(format!("k={k}: n={n} is not the ceiling of k^1.5"));
        }
        let n_min = n.max(minimizer::min_universe(k));
        let l = (1..).take_while(|x: &u32| x * x <= k).last().unwrap() - 1;
        let lower = (l + 1).div_ceil(2);
        for first in [Role::Minimizer, Role::Maximizer] {
            let mut opponents: Vec<(String, u64, Box<dyn Strategy>)> =
                vec![("minimizer".into(), n_min, Box::new(Minimizer::new()))];
            for seed in 0..100 {
                opponents.push((
                    format!("random {seed}"),
                    n,
                    Box::new(RandomLegal::new(seed)),
                ));
            }
            for (name, nn, opp) in opponents.iter_mut() {
                let tag = format!("k={k} n={nn} first={first:?} vs {name}");
                let p = Params::new(*nn as u32, k).unwrap();
                let a =
                    audit_maximizer(p, first, opp.as_mut()).map_err(|e| format!("{tag}: {e}"))?;
                let own = own_moves(&a.transcript, seat_of(Role::Maximizer, first));
                let fam: Vec<PointSet> = own
                    .iter()
                    .take(l as usize + 1)
                    .map(|m| m.points().clone())
                    .collect();
                if fam.len() != l as usize + 1 {
                    return Err(format!("{tag}: only {} maximizer moves", fam.len()));
                }
                let mut deg: BTreeMap<u32, u32> = BTreeMap::new();
                for s in &fam {
                    for x in s.iter() {
                        *deg.entry(x).or_default() += 1;
                    }
                }
                let max_deg = deg.values().copied().max().unwrap_or(0);
                if max_deg > 2 {
                    return Err(format!("{tag}: a point has degree {max_deg}"));
                }
                let pts = fam.iter().fold(PointSet::new(), |u, s| &u | s).to_vec();
                if lower > 1 && has_cover_of_size(&fam, &pts, lower - 1) {
                    return Err(format!("{tag}: covering number below {lower}"));
                }
                if a.tau < lower {
                    return Err(format!(
                        "{tag}: library covering number {} < {lower}",
                        a.tau
                    ));
                }
                if a.union_size != (l * (l + 1) / 2) as usize {
                    return Err(format!("{tag}: |U| = {}", a.union_size));
                }
                if let Some((r, c, w)) = a.round_failures.first() {
                    return Err(format!("{tag}: round {r} property {c} fails: {w}"));
                }
                games += 1;
            }
        }
    }
    within(
        start,
        Duration::from_secs(300),
        format!("{games} games, degrees <= 2"),
    )
}

fn criterion_4_families() -> Result<Vec<SetFamily>, String> {
    let groups = size_bound_families(200, 0).map_err(|e| e.to_string())?;
    Ok(groups.into_iter().flat_map(|(_, f)| f).collect())
}

fn criterion_4(fams: &[SetFamily]) -> Outcome {
    for f in fams {
        let r = check_size_bounds(f).map_err(|e| e.to_string())?;
        let p = f.params();
        let sets: Vec<PointSet> = f.iter().map(|m| m.points().clone()).collect();
        let tau = tau_exhaustive(&sets);
        let lo = binomial((p.n() - tau) as u64, (p.k() - tau) as u64).unwrap();
        let hi = (p.k() as u128).pow(tau) * lo;
        let size = f.len() as u128;
        if !r.pass || r.tau != tau || !(lo <= size && size <= hi) {
            return Err(format!(
                "n={} k={} size {size} tau {tau}: bounds [{lo}, {hi}], library says {:?}",
                p.n(),
                p.k(),
                r
            ));
        }
    }
    Ok(format!("{} maximal families within bounds", fams.len()))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = 1000;
    for t in 0..trials {
        let n = rng.gen_range(4..=10);
        let k = rng.gen_range(2..=(n / 2).min(4));
        let p = Params::new(n, k).unwrap();
        let board: Vec<KSet> = gen_ksubsets(p).unwrap().collect();
        let mut fam = SetFamily::new(p);
        let want = rng.gen_range(1..=6);
        for _ in 0..200 {
            if fam.len() == want {
                break;
            }
            let s = &board[rng.gen_range(0..board.len())];
            if !fam.contains(s) && fam.iter().all(|m| m.meets(s)) {
                fam.push(s.clone()).unwrap();
            }
        }
        let sets: Vec<PointSet> = fam.iter().map(|m| m.points().clone()).collect();
        let (bb, cover) = covering_number(&fam).map_err(|e| e.to_string())?;
        let ex = tau_exhaustive(&sets);
        if bb != ex || cover.len() as u32 != bb || !sets.iter().all(|s| s.meets(&cover)) {
            return Err(format!("trial {t}: branch and bound {bb}, exhaustive {ex}"));
        }
        let fast: Vec<KSet> = legal_moves(&fam).unwrap().collect();
        let slow: Vec<KSet> = board
            .iter()
            .filter(|s| !fam.contains(s) && fam.iter().all(|m| m.meets(s)))
            .cloned()
            .collect();
        if fast != slow {
            return Err(format!(
                "trial {t}: {} legal moves vs {} by filtering",
                fast.len(),
                slow.len()
            ));
        }
    }
    Ok(format!("{trials} random families agree"))
}

fn criterion_6(fams: &[SetFamily]) -> Outcome {
    let mut checks = 0;
    for f in fams {
        let k = f.params().k() as usize;
        let lists: Vec<Vec<u32>> = f.iter().map(KSet::elements).collect();
        let sets: Vec<PointSet> = f.iter().map(|m| m.points().clone()).collect();
        let tau = tau_exhaustive(&sets) as usize;
        for j in 1..tau.min(k) {
            let (dj, dj1) = (degree_oracle(&lists, j), degree_oracle(&lists, j + 1));
            if dj > k as u64 * dj1 {
                return Err(format!(
                    "d_{j} = {dj} > {k} * {dj1} on a family of size {}",
                    f.len()
                ));
            }
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} inequalities hold on {} families",
        fams.len()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for n in 1..=4 {
        let v = solve_sperner(n, Role::Minimizer).map_err(|e| e.to_string())?;
        if v != 1 {
            return Err(format!("n={n}: Fast-first value {v}"));
        }
    }
    for n in 2..=4 {
        let v = solve_sperner(n, Role::Maximizer).map_err(|e| e.to_string())?;
        if 2 * v < n as u64 {
            return Err(format!("n={n}: Slow-first value {v} < n/2"));
        }
    }
    for n in 2..=10u32 {
        let f = slow_opening(n);
        let nb = neighborhood(&f, n).map_err(|e| e.to_string())?;
        if nb.len() as u32 != (n / 2) * n.div_ceil(2) {
            return Err(format!("n={n}: neighbourhood has {} sets", nb.len()));
        }
        // Independent scan over all subsets as bitmasks.
        let fm: u32 = f.iter().fold(0, |m, x| m | 1 << (x - 1));
        let nm: Vec<u32> = nb
            .iter()
            .map(|s| s.iter().fold(0, |m, x| m | 1 << (x - 1)))
            .collect();
        let cmp = |a: u32, b: u32| a & b == a || a & b == b;
        let best = (0..1u32 << n)
            .filter(|&g| !cmp(g, fm))
            .map(|g| nm.iter().filter(|&&h| cmp(g, h)).count() as u64)
            .max()
            .unwrap();
        let lib = max_comparable_capture(&f, n).map_err(|e| e.to_string())?;
        let want = n.div_ceil(2) as u64;
        if best != want || lib != want {
            return Err(format!(
                "n={n}: capture {lib} (scan {best}), expected {want}"
            ));
        }
    }
    within(
        start,
        Duration::from_secs(120),
        "Sperner values and counts match".into(),
    )
}

fn criterion_8() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_satgame");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let invocations: Vec<Vec<String>> = [
        "verify --suite solver",
        "verify --suite sperner --format csv",
        "verify --suite setfam --format csv",
        "verify --suite minimizer --k 3..5 --seeds 10",
        "verify --suite maximizer --k 4,9 --seeds 10 --format json",
        "play --n 30 --k 3 --kind tau --first min --a minimizer --b random --mode certify --seed 1",
        "play --n 27 --k 9 --kind tau --first max --a maximizer --b random --mode certify --seed 4",
        "play --n 8 --k 3 --kind saturation --first fast --a random --b random --seed 11",
        "play --n 5 --sperner --first slow --a slow-opening --b random --seed 2",
    ]
    .iter()
    .map(|s| s.split(' ').map(String::from).collect())
    .collect();
    for (i, args) in invocations.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let path = dir.path().join(format!("out-{i}-{rep}"));
            let out = Command::new(exe)
                .args(args)
                .arg("--out")
                .arg(&path)
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!(
                    "`{}` exited with {}: {}",
                    args.join(" "),
                    out.status,
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
            let file = std::fs::read(&path).map_err(|e| e.to_string())?;
            if file.is_empty() {
                return Err(format!("`{}` wrote nothing", args.join(" ")));
            }
            outputs.push((file, out.stdout, out.stderr));
        }
        if outputs[0] != outputs[1] {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
    }
    Ok(format!(
        "{} invocations byte-identical across runs",
        invocations.len()
    ))
}

fn main() {
    let fams = criterion_4_families();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 exact k=2 closed forms", criterion_1()),
        ("2 minimizer certificate bound", criterion_2()),
        ("3 maximizer lower bound", criterion_3()),
        (
            "4 size bounds on maximal families",
            fams.clone().and_then(|f| criterion_4(&f)),
        ),
        ("5 oracle agreement", criterion_5()),
        ("6 degree chain", fams.and_then(|f| criterion_6(&f))),
        ("7 antichain game", criterion_7()),
        ("8 determinism", criterion_8()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(d) => println!("criterion {name}: PASS ({d})"),
            Err(e) => {
                failed += 1;
                println!("criterion {name}: FAIL ({e})");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
