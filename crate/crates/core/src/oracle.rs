//! Brute-force Sprague-Grundy values by memoized mex recursion over the game
//! tree. This is the reference the closed forms are checked against.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{legal_moves, mex, Position, Variant};

/// Largest entry the oracle accepts unless configured otherwise.
pub const DEFAULT_ORACLE_BOUND: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Oracle,
}

/// A Grundy value together with how it was obtained and the quantities the
/// closed forms are built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrundyReport {
    pub value: u64,
    pub method: Method,
    /// `max / min`; absent when an entry is zero.
    pub quotient: Option<u64>,
    pub index_i: Option<usize>,
    /// Absent for degree-0 expansions.
    pub index_j: Option<usize>,
}

/// Memoized oracle for one variant. The memo is keyed on canonical positions
/// and lives as long as the oracle.
#[derive(Debug, Clone)]
pub struct Oracle {
    variant: Variant,
    bound: u64,
    memo: HashMap<(u64, u64), u64>,
}

impl Oracle {
    pub fn new(variant: Variant) -> Self {
        Oracle::with_bound(variant, DEFAULT_ORACLE_BOUND)
    }

    pub fn with_bound(variant: Variant, bound: u64) -> Self {
        Oracle {
            variant,
            bound,
            memo: HashMap::new(),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Number of memoized positions.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn grundy(&mut self, p: Position) -> Result<u64> {
        p.validate(self.variant)?;
        if p.max() > self.bound {
            return Err(Error::OracleBoundExceeded {
                entry: p.max(),
                bound: self.bound,
            });
        }
        let root = key(p);
        if let Some(&v) = self.memo.get(&root) {
            return Ok(v);
        }

        // Explicit worklist: a node is resolved once all of its options are.
        // Options are pushed largest first so the deepest one is expanded next,
        // which keeps long subtraction chains from re-pushing each other.
        let mut stack = vec![root];
        while let Some(&top) = stack.last() {
            if self.memo.contains_key(&top) {
                stack.pop();
                continue;
            }
            let options = self.option_keys(top)?;
            let before = stack.len();
            stack.extend(options.iter().filter(|o| !self.memo.contains_key(o)));
            if stack.len() == before {
                let value = mex(options.iter().map(|o| self.memo[o]));
                self.memo.insert(top, value);
                stack.pop();
            }
        }
        Ok(self.memo[&root])
    }

    pub fn report(&mut self, p: Position) -> Result<GrundyReport> {
        let value = self.grundy(p)?;
        Ok(GrundyReport {
            value,
            method: Method::Oracle,
            quotient: (p.min() > 0).then(|| p.max() / p.min()),
            index_i: None,
            index_j: None,
        })
    }

    fn option_keys(&self, (a, b): (u64, u64)) -> Result<Vec<(u64, u64)>> {
        let moves = legal_moves(self.variant, Position::new(a, b))?;
        Ok(moves.iter().map(|m| key(m.result)).collect())
    }
}

fn key(p: Position) -> (u64, u64) {
    let c = p.canonical();
    (c.a, c.b)
}

/// One-shot oracle query with the default bound.
pub fn oracle_grundy(variant: Variant, p: Position) -> Result<GrundyReport> {
    Oracle::new(variant).report(p)
}
