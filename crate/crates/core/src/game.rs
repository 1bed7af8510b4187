//! Positions, variants and the subtraction move rule shared by all three games.
//!
//! A move subtracts a positive multiple of one entry from the other. The three
//! variants differ only in where play stops:
//!
//! * Euclid stops once an entry is zero.
//! * Grossman's game stops once the entries are equal.
//! * M-Euclid stops once one entry divides the other.
//!
//! Under Grossman and M-Euclid a move may never produce a zero entry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "euclid", alias = "e")]
    Euclid,
    #[serde(rename = "grossman", alias = "g")]
    Grossman,
    #[serde(rename = "meuclid", alias = "m", alias = "m-euclid")]
    MEuclid,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Euclid, Variant::Grossman, Variant::MEuclid];

    /// Short tag used on the command line and in query strings.
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Euclid => "e",
            Variant::Grossman => "g",
            Variant::MEuclid => "m",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Euclid => "Euclid",
            Variant::Grossman => "Grossman",
            Variant::MEuclid => "M-Euclid",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown variant {0:?} (expected e, g or m)")]
pub struct ParseVariantError(String);

impl FromStr for Variant {
    type Err = ParseVariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "e" | "euclid" => Ok(Variant::Euclid),
            "g" | "grossman" => Ok(Variant::Grossman),
            "m" | "meuclid" | "m-euclid" | "m_euclid" => Ok(Variant::MEuclid),
            _ => Err(ParseVariantError(s.to_owned())),
        }
    }
}

/// A game state. The pair is unordered for every value-level question; the
/// stored orientation is kept only so that moves can be shown in place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub a: u64,
    pub b: u64,
}

impl Position {
    pub const fn new(a: u64, b: u64) -> Self {
        Position { a, b }
    }

    /// The same pair with `a <= b`.
    pub fn canonical(self) -> Position {
        if self.a <= self.b {
            self
        } else {
            Position::new(self.b, self.a)
        }
    }

    pub fn min(self) -> u64 {
        self.a.min(self.b)
    }

    pub fn max(self) -> u64 {
        self.a.max(self.b)
    }

    /// Equality of unordered pairs.
    pub fn same_pair(self, other: Position) -> bool {
        self.canonical() == other.canonical()
    }

    /// gcd of the nonzero entries.
    pub fn gcd(self) -> u64 {
        let (mut x, mut y) = (self.a, self.b);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    }

    pub fn validate(self, variant: Variant) -> Result<()> {
        let reason = if self.a == 0 && self.b == 0 {
            "both entries are zero"
        } else if (self.a == 0 || self.b == 0) && variant != Variant::Euclid {
            "zero entries only occur in Euclid"
        } else {
            return Ok(());
        };
        Err(Error::InvalidPosition {
            variant,
            a: self.a,
            b: self.b,
            reason,
        })
    }

    pub fn entry(self, entry: Entry) -> u64 {
        match entry {
            Entry::A => self.a,
            Entry::B => self.b,
        }
    }

    /// The entry a move reduces: the larger one, or `b` on a tie.
    pub fn larger_entry(self) -> Entry {
        if self.a > self.b {
            Entry::A
        } else {
            Entry::B
        }
    }
}

impl From<(u64, u64)> for Position {
    fn from((a, b): (u64, u64)) -> Self {
        Position::new(a, b)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected a position of the form a,b with nonnegative integers, got {0:?}")]
pub struct ParsePositionError(String);

impl FromStr for Position {
    type Err = ParsePositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParsePositionError(s.to_owned());
        let (a, b) = s.split_once(',').ok_or_else(err)?;
        let a = a.trim().parse().map_err(|_| err())?;
        let b = b.trim().parse().map_err(|_| err())?;
        Ok(Position::new(a, b))
    }
}

/// Which stored entry of a position a move reduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entry {
    A,
    B,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Entry::A => "a",
            Entry::B => "b",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub target_entry: Entry,
    pub multiplier: u64,
    pub result: Position,
}

impl Move {
    /// Builds the move reducing `target_entry` of `from` by `multiplier` times
    /// the other entry, checking it against the variant's rules.
    pub fn checked(
        variant: Variant,
        from: Position,
        target_entry: Entry,
        multiplier: u64,
    ) -> Result<Move> {
        from.validate(variant)?;
        let illegal = |reason| Error::IllegalMove {
            variant,
            position: from,
            reason,
        };
        if is_terminal(variant, from)? {
            return Err(illegal("the position is terminal"));
        }
        if target_entry != from.larger_entry() {
            return Err(illegal("only the larger entry can be reduced"));
        }
        if multiplier == 0 {
            return Err(illegal("the multiplier must be positive"));
        }
        let larger = from.entry(target_entry);
        let smaller = from.min();
        if multiplier > max_multiplier(variant, larger, smaller) {
            return Err(illegal("the multiplier is out of range"));
        }
        let reduced = larger - multiplier * smaller;
        let result = match target_entry {
            Entry::A => Position::new(reduced, from.b),
            Entry::B => Position::new(from.a, reduced),
        };
        Ok(Move {
            target_entry,
            multiplier,
            result,
        })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} on {} -> {}",
            self.multiplier, self.target_entry, self.result
        )
    }
}

// Caller guarantees 0 < smaller <= larger.
fn max_multiplier(variant: Variant, larger: u64, smaller: u64) -> u64 {
    match variant {
        Variant::Euclid => larger / smaller,
        Variant::Grossman | Variant::MEuclid => (larger - 1) / smaller,
    }
}

pub fn is_terminal(variant: Variant, p: Position) -> Result<bool> {
    p.validate(variant)?;
    let (lo, hi) = (p.min(), p.max());
    Ok(match variant {
        Variant::Euclid => lo == 0,
        Variant::Grossman => lo == hi,
        Variant::MEuclid => hi % lo == 0,
    })
}

/// All legal moves from `p`, larger entry first with ascending multipliers.
/// Empty exactly when `p` is terminal.
pub fn legal_moves(variant: Variant, p: Position) -> Result<Vec<Move>> {
    if is_terminal(variant, p)? {
        return Ok(Vec::new());
    }
    let target = p.larger_entry();
    let (larger, smaller) = (p.entry(target), p.min());
    let moves = (1..=max_multiplier(variant, larger, smaller))
        .map(|k| {
            let reduced = larger - k * smaller;
            let result = match target {
                Entry::A => Position::new(reduced, p.b),
                Entry::B => Position::new(p.a, reduced),
            };
            Move {
                target_entry: target,
                multiplier: k,
                result,
            }
        })
        .collect();
    Ok(moves)
}

/// Applies a legal move and returns the resulting position in canonical form.
pub fn apply_move(variant: Variant, p: Position, m: &Move) -> Result<Position> {
    let expected = Move::checked(variant, p, m.target_entry, m.multiplier)?;
    if expected.result != m.result {
        return Err(Error::IllegalMove {
            variant,
            position: p,
            reason: "the move's result does not match its multiplier",
        });
    }
    Ok(expected.result.canonical())
}

/// Minimum excludant: the least nonnegative integer not in `values`.
pub fn mex<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    let values: Vec<u64> = values.into_iter().collect();
    // The answer is at most values.len().
    let mut seen = vec![false; values.len() + 1];
    for v in values {
        if let Some(slot) = usize::try_from(v).ok().and_then(|i| seen.get_mut(i)) {
            *slot = true;
        }
    }
    seen.iter().position(|&s| !s).unwrap_or(seen.len()) as u64
}
