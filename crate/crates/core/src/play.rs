//! Human-against-engine sessions under normal play: whoever makes the last
//! move wins. The engine moves to a position of Grundy value 0 when it can and
//! otherwise takes the first legal move.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::{Mutex, RwLock};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::formula::{self, winning_move};
use crate::game::{is_terminal, legal_moves, Entry, Move, Position, Variant};

pub const DEFAULT_SESSION_CAPACITY: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player {
    Human,
    Engine,
}

impl Player {
    fn other(self) -> Player {
        match self {
            Player::Human => Player::Engine,
            Player::Engine => Player::Human,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    InProgress,
    HumanWon,
    EngineWon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub mover: Player,
    #[serde(rename = "move")]
    pub mv: Move,
}

#[derive(Debug, Error)]
pub enum PlayError {
    #[error("unknown session {0}")]
    NotFound(String),
    #[error("the game is over")]
    Finished,
    #[error("it is not the human's turn")]
    WrongTurn,
    #[error(transparent)]
    Rules(#[from] Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub id: String,
    pub variant: Variant,
    pub initial: Position,
    pub position: Position,
    pub turn: Player,
    pub status: Status,
    pub history: Vec<HistoryEntry>,
}

/// The engine's choice at a nonterminal position.
pub fn engine_move(variant: Variant, p: Position) -> Result<Move, Error> {
    if let Some(m) = winning_move(variant, p)? {
        return Ok(m);
    }
    legal_moves(variant, p)?
        .into_iter()
        .next()
        .ok_or(Error::TerminalPosition {
            variant,
            position: p,
        })
}

impl Session {
    /// Starts a game at `start`, letting the engine open when `human_first`
    /// is false.
    pub fn start(
        id: String,
        variant: Variant,
        start: Position,
        human_first: bool,
    ) -> Result<Session, PlayError> {
        if is_terminal(variant, start)? {
            return Err(Error::TerminalPosition {
                variant,
                position: start,
            }
            .into());
        }
        let mut session = Session {
            id,
            variant,
            initial: start,
            position: start,
            turn: if human_first {
                Player::Human
            } else {
                Player::Engine
            },
            status: Status::InProgress,
            history: Vec::new(),
        };
        if !human_first {
            session.engine_turn()?;
        }
        Ok(session)
    }

    /// Plays the human's move and, if the game continues, the engine's reply.
    pub fn play_human(&mut self, target_entry: Entry, multiplier: u64) -> Result<(), PlayError> {
        if self.status != Status::InProgress {
            return Err(PlayError::Finished);
        }
        if self.turn != Player::Human {
            return Err(PlayError::WrongTurn);
        }
        let m = Move::checked(self.variant, self.position, target_entry, multiplier)?;
        self.record(Player::Human, m)?;
        if self.status == Status::InProgress {
            self.engine_turn()?;
        }
        Ok(())
    }

    fn engine_turn(&mut self) -> Result<(), PlayError> {
        let m = engine_move(self.variant, self.position)?;
        self.record(Player::Engine, m)
    }

    fn record(&mut self, mover: Player, m: Move) -> Result<(), PlayError> {
        self.position = m.result;
        self.history.push(HistoryEntry { mover, mv: m });
        self.turn = mover.other();
        if is_terminal(self.variant, self.position)? {
            self.status = match mover {
                Player::Human => Status::HumanWon,
                Player::Engine => Status::EngineWon,
            };
        }
        Ok(())
    }

    /// Position reached by replaying the history from the initial position,
    /// checking every move against the rules.
    pub fn replay(&self) -> Result<Position, Error> {
        let mut p = self.initial;
        for entry in &self.history {
            let m = Move::checked(self.variant, p, entry.mv.target_entry, entry.mv.multiplier)?;
            if m.result != entry.mv.result {
                return Err(Error::IllegalMove {
                    variant: self.variant,
                    position: p,
                    reason: "history is inconsistent",
                });
            }
            p = m.result;
        }
        Ok(p)
    }

    pub fn winner(&self) -> Option<Player> {
        match self.status {
            Status::InProgress => None,
            Status::HumanWon => Some(Player::Human),
            Status::EngineWon => Some(Player::Engine),
        }
    }

    pub fn view(&self) -> Result<SessionView, Error> {
        let legal_moves = legal_moves(self.variant, self.position)?;
        let grundy = formula::value(self.variant, self.position)?;
        let winning_move = if legal_moves.is_empty() {
            None
        } else {
            winning_move(self.variant, self.position)?
        };
        Ok(SessionView {
            session: self.clone(),
            legal_moves,
            analysis: Summary {
                grundy,
                winning_move_exists: winning_move.is_some(),
                winning_move,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub grundy: u64,
    pub winning_move_exists: bool,
    pub winning_move: Option<Move>,
}

/// A session as returned to clients: its state, the moves available now and a
/// closed-form summary of the current position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    #[serde(flatten)]
    pub session: Session,
    pub legal_moves: Vec<Move>,
    pub analysis: Summary,
}

struct Slot {
    session: Arc<RwLock<Session>>,
    last_used: u64,
}

#[derive(Default)]
struct Slots {
    sessions: HashMap<String, Slot>,
    clock: u64,
}

/// In-memory sessions with a capacity cap; the least recently used session is
/// evicted to make room. Each session has its own lock, so moves in one
/// session never wait on another.
pub struct SessionStore {
    capacity: usize,
    slots: Mutex<Slots>,
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::with_capacity(DEFAULT_SESSION_CAPACITY)
    }
}

impl SessionStore {
    pub fn with_capacity(capacity: usize) -> Self {
        assert!(capacity > 0, "session capacity must be positive");
        SessionStore {
            capacity,
            slots: Mutex::new(Slots::default()),
        }
    }

    pub fn len(&self) -> usize {
        self.slots.lock().sessions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(
        &self,
        variant: Variant,
        start: Position,
        human_first: bool,
    ) -> Result<SessionView, PlayError> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session::start(id.clone(), variant, start, human_first)?;
        let view = session.view()?;

        let mut slots = self.slots.lock();
        if slots.sessions.len() >= self.capacity {
            let oldest = slots
                .sessions
                .iter()
                .min_by_key(|(_, s)| s.last_used)
                .map(|(k, _)| k.clone());
            if let Some(oldest) = oldest {
                slots.sessions.remove(&oldest);
            }
        }
        slots.clock += 1;
        let last_used = slots.clock;
        slots.sessions.insert(
            id,
            Slot {
                session: Arc::new(RwLock::new(session)),
                last_used,
            },
        );
        Ok(view)
    }

    fn lookup(&self, id: &str) -> Result<Arc<RwLock<Session>>, PlayError> {
        let mut slots = self.slots.lock();
        slots.clock += 1;
        let now = slots.clock;
        let slot = slots
            .sessions
            .get_mut(id)
            .ok_or_else(|| PlayError::NotFound(id.to_owned()))?;
        slot.last_used = now;
        Ok(Arc::clone(&slot.session))
    }

    pub fn get(&self, id: &str) -> Result<SessionView, PlayError> {
        let session = self.lookup(id)?;
        let view = session.read().view()?;
        Ok(view)
    }

    pub fn play(
        &self,
        id: &str,
        target_entry: Entry,
        multiplier: u64,
    ) -> Result<SessionView, PlayError> {
        let session = self.lookup(id)?;
        let mut session = session.write();
        session.play_human(target_entry, multiplier)?;
        Ok(session.view()?)
    }
}
