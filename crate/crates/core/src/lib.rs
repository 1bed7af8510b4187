//! Euclid, Grossman's game and M-Euclid: three impartial subtraction games on
//! pairs of integers.
//!
//! The crate provides the move rules and a brute-force memoized Sprague-Grundy
//! oracle ([`game`], [`oracle`]), continued-fraction machinery with the
//! closed-form Grundy functions ([`cf`], [`formula`]), exhaustive desk-scale
//! verification of the closed forms against the oracle ([`verify`]) and the
//! session model used by the play service ([`play`]).

pub mod analysis;
pub mod cf;
mod error;
pub mod formula;
pub mod game;
pub mod oracle;
pub mod play;
pub mod verify;

pub use analysis::{analyze, Analysis, OracleCheck};
pub use cf::ContinuedFraction;
pub use error::{Error, Result};
pub use formula::{grundy_formula, move_to_value, winning_move, winning_moves};
pub use game::{apply_move, is_terminal, legal_moves, mex, Entry, Move, Position, Variant};
pub use oracle::{oracle_grundy, GrundyReport, Method, Oracle, DEFAULT_ORACLE_BOUND};
