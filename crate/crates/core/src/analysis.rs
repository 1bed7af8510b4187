//! Full analysis of one position, shared by the command line and the service.

use serde::{Deserialize, Serialize};

use crate::cf::ContinuedFraction;
use crate::error::Result;
use crate::formula::{grundy_formula, winning_moves};
use crate::game::{is_terminal, Move, Position, Variant};
use crate::oracle::Oracle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub value: u64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub variant: Variant,
    pub position: Position,
    pub terminal: bool,
    pub report: crate::oracle::GrundyReport,
    /// Expansion of `max/min`; absent for Euclid positions with a zero entry.
    pub cf: Option<ContinuedFraction>,
    pub winning_moves: Vec<Move>,
    pub oracle: Option<OracleCheck>,
}

/// Closed-form analysis of `p`. When `oracle_bound` is given the oracle value
/// is computed as well, failing if `p` exceeds the bound.
pub fn analyze(variant: Variant, p: Position, oracle_bound: Option<u64>) -> Result<Analysis> {
    let report = grundy_formula(variant, p)?;
    let terminal = is_terminal(variant, p)?;
    let cf = (p.min() > 0)
        .then(|| ContinuedFraction::expand(p.a, p.b))
        .transpose()?;
    let winning_moves = if terminal {
        Vec::new()
    } else {
        winning_moves(variant, p)?
    };
    let oracle = match oracle_bound {
        Some(bound) => {
            let value = Oracle::with_bound(variant, bound).grundy(p)?;
            Some(OracleCheck {
                value,
                agrees: value == report.value,
            })
        }
        None => None,
    };
    Ok(Analysis {
        variant,
        position: p,
        terminal,
        report,
        cf,
        winning_moves,
        oracle,
    })
}
