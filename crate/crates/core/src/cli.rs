//! Command-line front end.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::game::{
    legal_moves_sample, run_game, GameKind, GameState, GreedyStar, LexFirst, Mode, RandomLegal,
    Role, RoleAssignment, RunOptions, Strategy, DEFAULT_FULLPLAY_CAP,
};
use crate::maximizer::Maximizer;
use crate::minimizer::Minimizer;
use crate::setfam::{KSet, Params};
use crate::solver::{self, Optimal};
use crate::sperner::{self, SpernerPolicy};
use crate::verify::{self, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_FORFEIT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

/// Exit status for an error that ends a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Param(_) | Error::State(_) | Error::UniverseTooSmall { .. } => EXIT_CONFIG,
        Error::RuleViolation(_) | Error::Forfeit { .. } => EXIT_FORFEIT,
        Error::Resource(_) => EXIT_CAP,
        Error::Internal(_) => EXIT_VERIFY_FAILED,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "satgame",
    version,
    about = "Saturation games on intersecting families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one game and write its transcript as JSON.
    Play(PlayArgs),
    /// Compute an exact game value by exhaustive search.
    Solve(SolveArgs),
    /// Run verification suites and print a pass/fail report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Saturation,
    Tau,
}

impl From<KindArg> for GameKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Saturation => GameKind::Saturation,
            KindArg::Tau => GameKind::Tau,
        }
    }
}

/// Role of the player who moves first (seat A).
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FirstArg {
    #[value(alias = "minimizer")]
    Min,
    #[value(alias = "maximizer")]
    Max,
    Fast,
    Slow,
}

impl From<FirstArg> for Role {
    fn from(f: FirstArg) -> Self {
        match f {
            FirstArg::Min | FirstArg::Fast => Role::Minimizer,
            FirstArg::Max | FirstArg::Slow => Role::Maximizer,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Certify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, clap::Args)]
pub struct PlayArgs {
    #[arg(long)]
    pub n: u32,
    /// Set size; ignored with --sperner.
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "saturation")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "min")]
    pub first: FirstArg,
    /// Strategy for seat A, which moves first.
    #[arg(long, default_value = "lex-first")]
    pub a: String,
    /// Strategy for seat B.
    #[arg(long, default_value = "lex-first")]
    pub b: String,
    #[arg(long, value_enum, default_value = "full")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest board a full play-out may use.
    #[arg(long, default_value_t = DEFAULT_FULLPLAY_CAP)]
    pub cap: u128,
    /// Play the antichain game on all subsets of [n] instead.
    #[arg(long)]
    pub sperner: bool,
    /// Transcript path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "saturation")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "fast")]
    pub first: FirstArg,
    #[arg(long)]
    pub sperner: bool,
    /// Largest number of board elements to search.
    #[arg(long, default_value_t = solver::DEFAULT_SOLVE_CAP)]
    pub cap: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, clap::Args)]
pub struct VerifyArgs {
    /// setfam, minimizer, maximizer, solver, sperner or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Values of k: `3..9`, `3..=9`, `4,9,16,25` or a single value.
    #[arg(long)]
    pub k: Option<String>,
    /// Random opponents per instance.
    #[arg(long, default_value_t = 100)]
    pub seeds: u64,
    /// First random seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `3..9` (inclusive), `3..=9`, `4,9,16` or `5`.
pub fn parse_k_list(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::param(format!("cannot read k list {s:?}"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(num).collect()
}

/// Reads moves from a line-based input and prompts on `prompt`.
pub struct Human<'a> {
    input: &'a mut dyn BufRead,
    prompt: &'a mut dyn Write,
}

impl<'a> Human<'a> {
    pub fn new(input: &'a mut dyn BufRead, prompt: &'a mut dyn Write) -> Self {
        Human { input, prompt }
    }

    fn say(&mut self, msg: &str) {
        let _ = writeln!(self.prompt, "{msg}");
    }
}

fn parse_set(line: &str, p: Params) -> Result<KSet> {
    let nums = line
        .split(|c: char| c == ',' || c.is_whitespace() || c == '{' || c == '}')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::param(format!("{t:?} is not a number")))
        })
        .collect::<Result<Vec<_>>>()?;
    KSet::new(p, nums)
}

const HUMAN_SAMPLE: usize = 5;

impl Strategy for Human<'_> {
    fn name(&self) -> &str {
        "human"
    }

    fn next_move(&mut self, state: &GameState) -> Result<Option<KSet>> {
        let p = state.params();
        let seat = state.seat_to_move();
        let claimed: Vec<String> = state.claimed().iter().map(ToString::to_string).collect();
        let sample: Vec<String> = legal_moves_sample(state, HUMAN_SAMPLE)?
            .iter()
            .map(ToString::to_string)
            .collect();
        self.say(&format!("claimed: [{}]", claimed.join(" ")));
        self.say(&format!("some legal moves: {}", sample.join(" ")));
        loop {
            let _ = write!(
                self.prompt,
                "seat {seat:?} ({}), enter {} numbers: ",
                state.role_to_move().player_name(state.kind()),
                p.k()
            );
            let _ = self.prompt.flush();
            let mut line = String::new();
            if self
                .input
                .read_line(&mut line)
                .map_err(|e| Error::param(e.to_string()))?
                == 0
            {
                return Err(Error::Forfeit {
                    strategy: format!("human (seat {seat:?})"),
                    reason: "input ended before the game did".into(),
                });
            }
            let attempt = parse_set(&line, p).and_then(|s| {
                state.apply_move(s.clone())?;
                Ok(s)
            });
            match attempt {
                Ok(s) => return Ok(Some(s)),
                Err(e) => self.say(&format!("rejected: {e}")),
            }
        }
    }
}

/// Builds a non-interactive strategy from its command-line name.
pub fn strategy_by_name(name: &str, seed: u64) -> Result<Box<dyn Strategy>> {
    Ok(match name {
        "minimizer" => Box::new(Minimizer::new()),
        "maximizer" => Box::new(Maximizer::new()),
        "random" => Box::new(RandomLegal::new(seed)),
        "greedy-star" => Box::new(GreedyStar::new()),
        "lex-first" => Box::new(LexFirst),
        "optimal" => Box::new(Optimal::new()),
        _ => {
            return Err(Error::param(format!(
                "unknown strategy {name:?} (expected minimizer, maximizer, random, \
                 greedy-star, lex-first, optimal or human)"
            )))
        }
    })
}

/// Seat B's random stream is derived from the seed so the seats differ.
pub fn seat_seed(seed: u64, seat_b: bool) -> u64 {
    if seat_b {
        seed ^ 0x9e37_79b9_7f4a_7c15
    } else {
        seed
    }
}

fn write_output(path: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::param(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::param(format!("cannot write output: {e}"))),
    }
}

fn cmd_play(
    a: &PlayArgs,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let first = Role::from(a.first);
    if a.sperner {
        if a.mode == ModeArg::Certify {
            return Err(Error::param("the antichain game has no certify mode"));
        }
        let mut pa = SpernerPolicy::from_name(&a.a, seat_seed(a.seed, false))?;
        let mut pb = SpernerPolicy::from_name(&a.b, seat_seed(a.seed, true))?;
        let rec = sperner::play_sperner(a.n, first, &mut pa, &mut pb, a.seed)?;
        return write_output(&a.out, &rec.to_json(), stdout);
    }
    let p = Params::new(a.n, a.k)?;
    if a.a == "human" && a.b == "human" {
        return Err(Error::param("at most one seat can be human"));
    }
    let mut human_slot = None;
    let mut seat_a = None;
    let mut seat_b = None;
    for (name, is_b) in [(&a.a, false), (&a.b, true)] {
        if name == "human" {
            human_slot = Some(is_b);
        } else {
            let s = strategy_by_name(name, seat_seed(a.seed, is_b))?;
            if is_b {
                seat_b = Some(s);
            } else {
                seat_a = Some(s);
            }
        }
    }
    let mut human = Human::new(stdin, stderr);
    let (sa, sb): (&mut dyn Strategy, &mut dyn Strategy) = match human_slot {
        Some(false) => (&mut human, seat_b.as_deref_mut().expect("seat B is set")),
        Some(true) => (seat_a.as_deref_mut().expect("seat A is set"), &mut human),
        None => (
            seat_a.as_deref_mut().expect("seat A is set"),
            seat_b.as_deref_mut().expect("seat B is set"),
        ),
    };
    let mode = match a.mode {
        ModeArg::Full => Mode::FullPlay,
        ModeArg::Certify => Mode::Certify,
    };
    let opts = RunOptions {
        fullplay_cap: a.cap,
        seed: a.seed,
    };
    let t = run_game(
        p,
        a.kind.into(),
        RoleAssignment::new(first),
        sa,
        sb,
        mode,
        &opts,
    )?;
    write_output(&a.out, &t.to_json(), stdout)
}

fn cmd_solve(a: &SolveArgs, stdout: &mut dyn Write) -> Result<()> {
    let first = Role::from(a.first);
    let (value, pv, expanded): (u64, Vec<Vec<u32>>, u64) = if a.sperner {
        let r = sperner::solve_sperner_full(a.n, first)?;
        (
            r.value,
            r.principal_variation.iter().map(|s| s.to_vec()).collect(),
            r.positions_expanded,
        )
    } else {
        let p = Params::new(a.n, a.k)?;
        let r = solver::solve_with_cap(p, a.kind.into(), RoleAssignment::new(first), a.cap)?;
        (
            r.value,
            r.principal_variation.iter().map(KSet::elements).collect(),
            r.positions_expanded,
        )
    };
    let kind = GameKind::from(a.kind);
    let text = if a.json {
        let v = serde_json::json!({
            "game": if a.sperner { "sperner" } else { "intersecting" },
            "kind": if a.sperner { GameKind::Saturation } else { kind },
            "n": a.n,
            "k": if a.sperner { 0 } else { a.k },
            "first_role": first,
            "value": value,
            "principal_variation": pv,
            "positions_expanded": expanded,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
        s.push('\n');
        s
    } else {
        let show = |s: &Vec<u32>| {
            let inner: Vec<String> = s.iter().map(u32::to_string).collect();
            format!("{{{}}}", inner.join(","))
        };
        let line: Vec<String> = pv.iter().map(show).collect();
        let kind = if a.sperner {
            GameKind::Saturation
        } else {
            kind
        };
        format!(
            "value: {value}\nfirst: {}\nprincipal variation: {}\npositions expanded: {expanded}\n",
            first.player_name(kind),
            line.join(" ")
        )
    };
    write_output(&None, &text, stdout)
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<bool> {
    let suites: Vec<Suite> = Suite::parse_list(&a.suite)?;
    let opts = VerifyOptions {
        ks: a.k.as_deref().map(parse_k_list).transpose()?,
        seeds: a.seeds,
        base_seed: a.seed,
    };
    let rows = verify::run_suites(&suites, &opts)?;
    let text = match a.format {
        FormatArg::Table => verify::render_table(&rows),
        FormatArg::Csv => verify::render_csv(&rows),
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
            s.push('\n');
            s
        }
    };
    write_output(&a.out, &text, stdout)?;
    for r in rows.iter().filter(|r| !r.pass) {
        let _ = writeln!(
            stderr,
            "FAIL {}: {}: measured {}, bound {}",
            r.suite, r.instance, r.measured, r.bound
        );
    }
    Ok(verify::all_pass(&rows))
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Play(a) => cmd_play(a, stdin, stdout, stderr).map(|_| true),
        Command::Solve(a) => cmd_solve(a, stdout).map(|_| true),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFY_FAILED,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
