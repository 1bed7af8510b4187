use thiserror::Error;

use crate::game::{Position, Variant};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid position ({a},{b}) for {variant}: {reason}")]
    InvalidPosition {
        variant: Variant,
        a: u64,
        b: u64,
        reason: &'static str,
    },

    #[error("illegal move from {position} under {variant}: {reason}")]
    IllegalMove {
        variant: Variant,
        position: Position,
        reason: &'static str,
    },

    #[error("position {position} is terminal under {variant}")]
    TerminalPosition {
        variant: Variant,
        position: Position,
    },

    #[error("oracle bound exceeded: entry {entry} > bound {bound}")]
    OracleBoundExceeded { entry: u64, bound: u64 },

    #[error("continued fraction input must be positive")]
    ZeroInput,

    #[error("malformed continued fraction: {0}")]
    MalformedCf(&'static str),

    #[error("J index is undefined for a degree-0 expansion")]
    DegreeZero,

    #[error("continued fraction value does not fit in 64 bits")]
    Overflow,
}
