//! Closed-form Grundy values from the continued fraction of `max/min`, and the
//! move searches built on them.
//!
//! With `q = max / min`, `[a0..an]` the expansion, `I` and `J` its indices:
//!
//! * Euclid: `q - (I odd)`.
//! * Grossman: the Euclid value, except `Euclid - (-1)^I` when all quotients
//!   are equal.
//! * M-Euclid: `q - (J odd)`.
//!
//! Terminal positions of each variant have value 0.

use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::game::{is_terminal, legal_moves, Move, Position, Variant};
use crate::oracle::{GrundyReport, Method};

pub fn grundy_formula(variant: Variant, p: Position) -> Result<GrundyReport> {
    let terminal = is_terminal(variant, p)?;
    let (lo, hi) = (p.min(), p.max());
    if lo == 0 {
        // Only Euclid admits zero entries, and those positions are terminal.
        return Ok(GrundyReport {
            value: 0,
            method: Method::ClosedForm,
            quotient: None,
            index_i: None,
            index_j: None,
        });
    }

    let cf = ContinuedFraction::expand(lo, hi)?;
    let quotient = hi / lo;
    let index_i = cf.index_i();
    let index_j = cf.index_j().ok();

    let value = if terminal {
        0
    } else {
        let euclid = quotient - odd(index_i);
        match variant {
            Variant::Euclid => euclid,
            Variant::Grossman if cf.all_equal() => {
                if index_i % 2 == 0 {
                    euclid - 1
                } else {
                    euclid + 1
                }
            }
            Variant::Grossman => euclid,
            // Nonterminal M-Euclid positions have degree >= 1.
            Variant::MEuclid => quotient - odd(index_j.expect("degree >= 1")),
        }
    };

    Ok(GrundyReport {
        value,
        method: Method::ClosedForm,
        quotient: Some(quotient),
        index_i: Some(index_i),
        index_j,
    })
}

fn odd(i: usize) -> u64 {
    (i % 2) as u64
}

pub(crate) fn value(variant: Variant, p: Position) -> Result<u64> {
    grundy_formula(variant, p).map(|r| r.value)
}

fn nonterminal_moves(variant: Variant, p: Position) -> Result<Vec<Move>> {
    if is_terminal(variant, p)? {
        return Err(Error::TerminalPosition {
            variant,
            position: p,
        });
    }
    legal_moves(variant, p)
}

/// The first legal move (smallest multiplier) to an option of Grundy value
/// `target`, if any.
pub fn move_to_value(variant: Variant, p: Position, target: u64) -> Result<Option<Move>> {
    for m in nonterminal_moves(variant, p)? {
        if value(variant, m.result)? == target {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// A move to a position of value 0, when `p` is a next-player win.
pub fn winning_move(variant: Variant, p: Position) -> Result<Option<Move>> {
    move_to_value(variant, p, 0)
}

/// Every move to a position of value 0, in canonical order.
pub fn winning_moves(variant: Variant, p: Position) -> Result<Vec<Move>> {
    let mut found = Vec::new();
    for m in nonterminal_moves(variant, p)? {
        if value(variant, m.result)? == 0 {
            found.push(m);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Entry;
    use crate::oracle::Oracle;

    fn f(variant: Variant, a: u64, b: u64) -> u64 {
        value(variant, Position::new(a, b)).unwrap()
    }

    #[test]
    fn value_examples() {
        assert_eq!(f(Variant::MEuclid, 4, 5), 1);
        assert_eq!(f(Variant::Euclid, 2, 5), 1);
        assert_eq!(f(Variant::Grossman, 2, 5), 2);
        assert_eq!(f(Variant::MEuclid, 2, 5), 2);
        assert_eq!(f(Variant::Euclid, 5, 12), 2);
        assert_eq!(f(Variant::Grossman, 5, 12), 1);
        assert_eq!(f(Variant::MEuclid, 5, 12), 1);
        assert_eq!(f(Variant::MEuclid, 3, 6), 0);
        assert_eq!(f(Variant::Euclid, 6, 9), 0);
        assert_eq!(f(Variant::Euclid, 0, 9), 0);
        assert_eq!(f(Variant::Euclid, 4, 4), 1);
        assert_eq!(f(Variant::Grossman, 4, 4), 0);
        assert_eq!(f(Variant::Grossman, 5, 7), 0);
    }

    #[test]
    fn report_carries_indices() {
        let r = grundy_formula(Variant::Euclid, Position::new(12, 5)).unwrap();
        assert_eq!(
            (r.quotient, r.index_i, r.index_j),
            (Some(2), Some(2), Some(1))
        );
        assert_eq!(r.method, Method::ClosedForm);

        let r = grundy_formula(Variant::MEuclid, Position::new(3, 6)).unwrap();
        assert_eq!((r.value, r.index_j), (0, None));
        assert!(grundy_formula(Variant::MEuclid, Position::new(0, 6)).is_err());
    }

    // The oracle fixes the expected values for every example above.
    #[test]
    fn examples_agree_with_oracle() {
        let cases = [
            (Variant::MEuclid, 4, 5),
            (Variant::Euclid, 2, 5),
            (Variant::Grossman, 2, 5),
            (Variant::MEuclid, 2, 5),
            (Variant::Euclid, 5, 12),
            (Variant::Grossman, 5, 12),
            (Variant::MEuclid, 5, 12),
            (Variant::Euclid, 6, 9),
            (Variant::Grossman, 5, 7),
        ];
        for (variant, a, b) in cases {
            let mut o = Oracle::new(variant);
            assert_eq!(
                f(variant, a, b),
                o.grundy(Position::new(a, b)).unwrap(),
                "{variant} ({a},{b})"
            );
        }
    }

    #[test]
    fn winning_move_examples() {
        let m = winning_move(Variant::MEuclid, Position::new(2, 5))
            .unwrap()
            .unwrap();
        assert_eq!(
            (m.target_entry, m.multiplier, m.result),
            (Entry::B, 2, Position::new(2, 1))
        );

        assert_eq!(
            winning_move(Variant::Euclid, Position::new(6, 9)).unwrap(),
            None
        );

        let m = winning_move(Variant::Euclid, Position::new(1, 1))
            .unwrap()
            .unwrap();
        assert_eq!(m.multiplier, 1);
        assert!(m.result.same_pair(Position::new(0, 1)));

        let m = winning_move(Variant::Grossman, Position::new(5, 12))
            .unwrap()
            .unwrap();
        assert_eq!((m.multiplier, m.result), (1, Position::new(5, 7)));

        assert!(matches!(
            winning_move(Variant::MEuclid, Position::new(3, 6)),
            Err(Error::TerminalPosition { .. })
        ));
    }

    #[test]
    fn move_to_value_examples() {
        let p = Position::new(2, 5);
        let m = move_to_value(Variant::MEuclid, p, 1).unwrap().unwrap();
        assert_eq!((m.multiplier, m.result), (1, Position::new(2, 3)));
        let m = move_to_value(Variant::MEuclid, p, 0).unwrap().unwrap();
        assert_eq!((m.multiplier, m.result), (2, Position::new(2, 1)));
        assert_eq!(
            move_to_value(Variant::MEuclid, Position::new(3, 7), 2).unwrap(),
            None
        );
    }

    #[test]
    fn range_law_and_base_case() {
        for variant in Variant::ALL {
            for a in 1..=60 {
                for b in a..=60 {
                    let p = Position::new(a, b);
                    if is_terminal(variant, p).unwrap() {
                        continue;
                    }
                    let v = f(variant, a, b);
                    assert!(v == b / a || v + 1 == b / a, "{variant} {p}: {v}");
                }
            }
        }
        for a1 in 2..=500 {
            assert_eq!(f(Variant::MEuclid, a1, a1 + 1), 1);
        }
    }

    #[test]
    fn handles_large_entries() {
        let p = Position::new(u64::MAX - 1, u64::MAX);
        assert_eq!(f(Variant::MEuclid, p.a, p.b), 1);
        // Consecutive Fibonacci numbers give the longest expansions.
        let (mut x, mut y) = (1u64, 2u64);
        while let Some(z) = x.checked_add(y) {
            (x, y) = (y, z);
        }
        let r = grundy_formula(Variant::Euclid, Position::new(x, y)).unwrap();
        assert_eq!(r.quotient, Some(1));
        assert!(ContinuedFraction::expand(x, y).unwrap().degree() > 80);
    }
}
