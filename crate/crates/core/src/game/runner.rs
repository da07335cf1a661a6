use crate::error::{Error, Result};
use crate::setfam::{legal_moves, KSet, Params};

use super::{new_game, GameKind, GameState, Mode, RoleAssignment, Seat, Strategy, Transcript};

/// Largest board (number of k-sets) a full play-out is allowed on.
pub const DEFAULT_FULLPLAY_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub fullplay_cap: u128,
    /// Recorded in the transcript; strategies own their random state.
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            fullplay_cap: DEFAULT_FULLPLAY_CAP,
            seed: 0,
        }
    }
}

/// Fallback once a seat has handed off.
pub fn lex_first_move(state: &GameState) -> Result<Option<KSet>> {
    Ok(legal_moves(state.claimed())?.next())
}

/// The first `count` legal moves in lexicographic order.
pub fn legal_moves_sample(state: &GameState, count: usize) -> Result<Vec<KSet>> {
    Ok(legal_moves(state.claimed())?.take(count).collect())
}

/// Plays `a` (seat A, moves first) against `b`.
///
/// Full play continues until the claimed family is maximal. Certify play
/// stops as soon as both seats have handed off, and requires at least one
/// seat with a strategic phase.
pub fn run_game(
    p: Params,
    kind: GameKind,
    roles: RoleAssignment,
    a: &mut dyn Strategy,
    b: &mut dyn Strategy,
    mode: Mode,
    opts: &RunOptions,
) -> Result<Transcript> {
    let mut state = new_game(p, kind, roles)?;
    match mode {
        Mode::FullPlay if p.board_size() > opts.fullplay_cap => {
            return Err(Error::Resource(format!(
                "full play on {} k-sets exceeds the cap of {}",
                p.board_size(),
                opts.fullplay_cap
            )));
        }
        Mode::Certify if a.handed_off() && b.handed_off() => {
            return Err(Error::state(format!(
                "certify mode needs a strategic player, got {} and {}",
                a.name(),
                b.name()
            )));
        }
        _ => {}
    }

    loop {
        if mode == Mode::Certify && a.handed_off() && b.handed_off() {
            break;
        }
        let seat = state.seat_to_move();
        let strat: &mut dyn Strategy = match seat {
            Seat::A => &mut *a,
            Seat::B => &mut *b,
        };
        let mv = match strat.next_move(&state)? {
            Some(mv) => mv,
            None => match lex_first_move(&state)? {
                Some(mv) => mv,
                None => break,
            },
        };
        let name = format!("{} (seat {seat:?})", strat.name());
        state.push_move(mv).map_err(|e| Error::Forfeit {
            strategy: name,
            reason: e.to_string(),
        })?;
        if mode == Mode::FullPlay && state.is_terminal()? {
            break;
        }
    }

    let mut certificate = None;
    let mut degrees = None;
    for s in [&*a, &*b] {
        let r = s.report(&state)?;
        certificate = certificate.or(r.certificate);
        degrees = degrees.or(r.degrees);
    }
    Transcript::from_run(state, mode, opts.seed, certificate, degrees)
}
