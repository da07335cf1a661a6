use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setfam::{CoverCertificate, KSet, Params, SetFamily};

use super::{
    new_game, seat_of_turn, DegreeSummary, GameKind, GameState, Mode, Role, RoleAssignment, Seat,
};

/// A finished (or certified) intersecting-family game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub kind: GameKind,
    pub first_mover: Role,
    pub moves: Vec<(Seat, KSet)>,
    pub score: u64,
    /// In certify mode, the partial family at handoff.
    pub final_family: SetFamily,
    pub certificate: Option<CoverCertificate>,
    pub degrees: Option<DegreeSummary>,
    pub mode: Mode,
    pub seed: u64,
}

impl Transcript {
    pub(crate) fn from_run(
        state: GameState,
        mode: Mode,
        seed: u64,
        certificate: Option<CoverCertificate>,
        degrees: Option<DegreeSummary>,
    ) -> Result<Self> {
        let score = if state.claimed().is_empty() {
            0
        } else {
            state.score()?
        };
        let moves = state
            .claimed()
            .iter()
            .enumerate()
            .map(|(t, s)| (seat_of_turn(t), s.clone()))
            .collect();
        Ok(Transcript {
            kind: state.kind(),
            first_mover: state.roles().first_mover,
            moves,
            score,
            final_family: state.claimed().clone(),
            certificate,
            degrees,
            mode,
            seed,
        })
    }

    pub fn params(&self) -> Params {
        self.final_family.params()
    }

    pub fn to_record(&self) -> TranscriptRecord {
        let p = self.params();
        TranscriptRecord {
            game: GameFamily::Intersecting,
            kind: self.kind,
            n: p.n(),
            k: p.k(),
            first: Seat::A,
            first_role: Some(self.first_mover),
            moves: self
                .moves
                .iter()
                .map(|(seat, s)| MoveRecord {
                    player: *seat,
                    set: s.elements(),
                })
                .collect(),
            score: self.score,
            certificate: self.certificate.as_ref().map(|c| CertificateRecord {
                cover: c.cover.to_vec(),
                witnesses: c.witnesses.iter().map(KSet::elements).collect(),
            }),
            mode: self.mode,
            seed: self.seed,
            degrees: self.degrees.clone(),
        }
    }

    /// Rebuilds a transcript by replaying its moves through the referee.
    /// Fails if any move is illegal, a seat is out of turn, or the recorded
    /// score does not match the replayed family.
    pub fn from_record(rec: &TranscriptRecord) -> Result<Self> {
        if rec.game != GameFamily::Intersecting {
            return Err(Error::param("not an intersecting-family transcript"));
        }
        let p = Params::new(rec.n, rec.k)?;
        let first_role = rec
            .first_role
            .ok_or_else(|| Error::param("transcript lacks the first mover's role"))?;
        let roles = match rec.first {
            Seat::A => RoleAssignment::new(first_role),
            Seat::B => RoleAssignment::new(first_role.other()),
        };
        let mut state = new_game(p, rec.kind, roles)?;
        for (t, m) in rec.moves.iter().enumerate() {
            let expected = match rec.first {
                Seat::A => seat_of_turn(t),
                Seat::B => seat_of_turn(t).other(),
            };
            if m.player != expected {
                return Err(Error::RuleViolation(format!(
                    "move {} is recorded for seat {:?} but seat {expected:?} was on turn",
                    t + 1,
                    m.player
                )));
            }
            state.push_move(KSet::new(p, m.set.iter().copied())?)?;
        }
        let certificate = match &rec.certificate {
            None => None,
            Some(c) => Some(CoverCertificate {
                cover: c.cover.iter().copied().collect(),
                witnesses: c
                    .witnesses
                    .iter()
                    .map(|w| KSet::new(p, w.iter().copied()))
                    .collect::<Result<_>>()?,
            }),
        };
        let t = Transcript::from_run(state, rec.mode, rec.seed, certificate, rec.degrees.clone())?;
        if t.score != rec.score {
            return Err(Error::state(format!(
                "recorded score {} but the replayed family scores {}",
                rec.score, t.score
            )));
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        self.to_record().to_json()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Transcript::from_record(&TranscriptRecord::from_json(s)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameFamily {
    Intersecting,
    Sperner,
}

/// On-disk transcript format, shared by both game families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    pub game: GameFamily,
    pub kind: GameKind,
    pub n: u32,
    /// Zero for Sperner games, whose sets have no fixed size.
    pub k: u32,
    pub first: Seat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_role: Option<Role>,
    pub moves: Vec<MoveRecord>,
    pub score: u64,
    pub certificate: Option<CertificateRecord>,
    pub mode: Mode,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<DegreeSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub player: Seat,
    pub set: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub cover: Vec<u32>,
    pub witnesses: Vec<Vec<u32>>,
}

impl TranscriptRecord {
    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(self).expect("transcript records always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::param(format!("malformed transcript: {e}")))
    }
}
