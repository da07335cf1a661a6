//! Referee for the saturation game (scored by family size) and the τ-game
//! (scored by covering number) on the board of k-subsets of `[n]`.

mod runner;
mod strategy;
mod transcript;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setfam::{covering_number, legal_moves, KSet, Params, SetFamily};

pub use runner::{legal_moves_sample, lex_first_move, run_game, RunOptions, DEFAULT_FULLPLAY_CAP};
pub use strategy::{
    baseline_strategies, DegreeSummary, GreedyStar, LexFirst, RandomLegal, Scripted, Strategy,
    StrategyReport,
};
pub use transcript::{CertificateRecord, GameFamily, MoveRecord, Transcript, TranscriptRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameKind {
    /// Score is the size of the final family (Fast minimises, Slow maximises).
    Saturation,
    /// Score is the covering number of the final family.
    Tau,
}

/// Which way a player pushes the score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Minimizer,
    Maximizer,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::Minimizer => Role::Maximizer,
            Role::Maximizer => Role::Minimizer,
        }
    }

    /// Conventional player name for this role in a game of the given kind.
    pub fn player_name(self, kind: GameKind) -> &'static str {
        match (kind, self) {
            (GameKind::Saturation, Role::Minimizer) => "Fast",
            (GameKind::Saturation, Role::Maximizer) => "Slow",
            (GameKind::Tau, Role::Minimizer) => "Minimizer",
            (GameKind::Tau, Role::Maximizer) => "Maximizer",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoleAssignment {
    pub first_mover: Role,
}

impl RoleAssignment {
    pub fn new(first_mover: Role) -> Self {
        RoleAssignment { first_mover }
    }
}

/// Seat A always moves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Seat {
    A,
    B,
}

impl Seat {
    pub fn other(self) -> Seat {
        match self {
            Seat::A => Seat::B,
            Seat::B => Seat::A,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Play until the claimed family is maximal.
    #[serde(rename = "full")]
    FullPlay,
    /// Stop once every strategic player has finished its strategic phase.
    Certify,
}

#[derive(Clone)]
pub struct GameState {
    params: Params,
    claimed: SetFamily,
    kind: GameKind,
    roles: RoleAssignment,
}

pub fn new_game(p: Params, kind: GameKind, roles: RoleAssignment) -> Result<GameState> {
    let params = Params::new(p.n(), p.k())?;
    Ok(GameState {
        params,
        claimed: SetFamily::new(params),
        kind,
        roles,
    })
}

impl GameState {
    pub fn params(&self) -> Params {
        self.params
    }

    pub fn claimed(&self) -> &SetFamily {
        &self.claimed
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn roles(&self) -> RoleAssignment {
        self.roles
    }

    /// Equals the number of claimed sets.
    pub fn turn_index(&self) -> usize {
        self.claimed.len()
    }

    pub fn seat_to_move(&self) -> Seat {
        seat_of_turn(self.turn_index())
    }

    pub fn role_to_move(&self) -> Role {
        self.role_of(self.seat_to_move())
    }

    pub fn role_of(&self, seat: Seat) -> Role {
        match seat {
            Seat::A => self.roles.first_mover,
            Seat::B => self.roles.first_mover.other(),
        }
    }

    /// Sets claimed by `seat`, in order.
    pub fn moves_of(&self, seat: Seat) -> impl Iterator<Item = &KSet> {
        self.claimed
            .iter()
            .enumerate()
            .filter(move |(t, _)| seat_of_turn(*t) == seat)
            .map(|(_, s)| s)
    }

    /// Returns the successor state; `self` is left untouched.
    pub fn apply_move(&self, mv: KSet) -> Result<GameState> {
        let mut next = self.clone();
        next.push_move(mv)?;
        Ok(next)
    }

    pub(crate) fn push_move(&mut self, mv: KSet) -> Result<()> {
        if mv.universe_size() != self.params.n() || mv.len() != self.params.k() as usize {
            return Err(Error::RuleViolation(format!(
                "{mv} is not a {}-subset of [{}]",
                self.params.k(),
                self.params.n()
            )));
        }
        if self.claimed.contains(&mv) {
            return Err(Error::RuleViolation(format!(
                "{mv} has already been claimed"
            )));
        }
        if let Some(m) = self.claimed.first_disjoint(&mv) {
            return Err(Error::RuleViolation(format!(
                "{mv} is disjoint from claimed set {m}"
            )));
        }
        self.claimed.push(mv)
    }

    pub fn is_terminal(&self) -> Result<bool> {
        Ok(legal_moves(&self.claimed)?.next().is_none())
    }

    /// Score of the claimed family under this game's rule.
    pub fn score(&self) -> Result<u64> {
        score_family(self.kind, &self.claimed)
    }
}

impl fmt::Debug for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameState")
            .field("params", &self.params)
            .field("kind", &self.kind)
            .field("first_mover", &self.roles.first_mover)
            .field("claimed", &self.claimed)
            .finish()
    }
}

pub fn seat_of_turn(turn: usize) -> Seat {
    if turn.is_multiple_of(2) {
        Seat::A
    } else {
        Seat::B
    }
}

pub fn score_family(kind: GameKind, fam: &SetFamily) -> Result<u64> {
    match kind {
        GameKind::Saturation => Ok(fam.len() as u64),
        GameKind::Tau => Ok(covering_number(fam)?.0 as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, k: u32) -> Params {
        Params::new(n, k).unwrap()
    }

    fn set(p: Params, v: &[u32]) -> KSet {
        KSet::new(p, v.iter().copied()).unwrap()
    }

    #[test]
    fn new_game_examples() {
        let g = new_game(
            p(5, 2),
            GameKind::Saturation,
            RoleAssignment::new(Role::Minimizer),
        )
        .unwrap();
        assert_eq!(g.turn_index(), 0);
        assert!(g.claimed().is_empty());
        let g = new_game(
            p(30, 3),
            GameKind::Tau,
            RoleAssignment::new(Role::Minimizer),
        )
        .unwrap();
        assert_eq!(g.seat_to_move(), Seat::A);
        assert!(Params::new(2, 3).is_err());
    }

    #[test]
    fn apply_move_examples() {
        let pp = p(4, 2);
        let g0 = new_game(
            pp,
            GameKind::Saturation,
            RoleAssignment::new(Role::Maximizer),
        )
        .unwrap();
        let g1 = g0.apply_move(set(pp, &[1, 2])).unwrap();
        assert_eq!(g0.turn_index(), 0);
        assert_eq!(g1.claimed().members(), &[set(pp, &[1, 2])]);
        assert_eq!(g1.seat_to_move(), Seat::B);
        assert_eq!(g1.role_to_move(), Role::Minimizer);

        let err = g1.apply_move(set(pp, &[3, 4])).unwrap_err();
        assert!(matches!(&err, Error::RuleViolation(m) if m.contains("{1,2}")));
        let err = g1.apply_move(set(pp, &[1, 2])).unwrap_err();
        assert!(matches!(err, Error::RuleViolation(_)));
        let wrong = KSet::new(p(5, 2), [1, 5]).unwrap();
        assert!(matches!(g1.apply_move(wrong), Err(Error::RuleViolation(_))));
    }

    #[test]
    fn role_names() {
        assert_eq!(Role::Minimizer.player_name(GameKind::Saturation), "Fast");
        assert_eq!(Role::Maximizer.player_name(GameKind::Tau), "Maximizer");
    }
}
