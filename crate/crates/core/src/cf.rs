//! Finite simple continued fractions of rationals `b/a >= 1`.
//!
//! Expansions are written `[a0, a1, ..., an]` with `an >= 2` whenever `n >= 1`,
//! which is exactly what the division algorithm produces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ContinuedFraction {
    quotients: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(quotients: Vec<u64>) -> Result<Self> {
        match quotients.as_slice() {
            [] => Err(Error::MalformedCf("no quotients")),
            qs if qs.contains(&0) => Err(Error::MalformedCf("quotients must be positive")),
            [_, .., 1] => Err(Error::MalformedCf("last quotient must exceed 1")),
            _ => Ok(ContinuedFraction { quotients }),
        }
    }

    /// Expansion of `max(a,b) / min(a,b)` by repeated division.
    pub fn expand(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::ZeroInput);
        }
        let (mut den, mut num) = (a.min(b), a.max(b));
        let mut quotients = Vec::new();
        loop {
            quotients.push(num / den);
            let rem = num % den;
            if rem == 0 {
                break;
            }
            (num, den) = (den, rem);
        }
        Ok(ContinuedFraction { quotients })
    }

    pub fn quotients(&self) -> &[u64] {
        &self.quotients
    }

    /// `n`, one less than the number of quotients.
    pub fn degree(&self) -> usize {
        self.quotients.len() - 1
    }

    /// The coprime pair `(a, b)`, `a <= b`, with `b/a` equal to this fraction.
    pub fn value(&self) -> Result<(u64, u64)> {
        let (&last, rest) = self.quotients.split_last().expect("nonempty");
        let (mut num, mut den) = (last, 1u64);
        for &q in rest.iter().rev() {
            let next = q
                .checked_mul(num)
                .and_then(|x| x.checked_add(den))
                .ok_or(Error::Overflow)?;
            (num, den) = (next, num);
        }
        Ok((den, num))
    }

    /// Length of the maximal run of quotients equal to `a0`.
    pub fn leading_run(&self) -> usize {
        let first = self.quotients[0];
        self.quotients.iter().take_while(|&&q| q == first).count()
    }

    pub fn all_equal(&self) -> bool {
        self.leading_run() == self.quotients.len()
    }

    /// Largest `i <= n` with `a0 = ... = a(i-1) <= ai`.
    ///
    /// The admissible `i` form a prefix of `0..=n`, so the answer follows from
    /// the leading run `r`: it is `r` when `a(r)` exists and exceeds `a0`, and
    /// `r - 1` otherwise.
    pub fn index_i(&self) -> usize {
        let run = self.leading_run();
        match self.quotients.get(run) {
            Some(&next) if next > self.quotients[0] => run,
            _ => run - 1,
        }
    }

    /// `index_i` restricted to `j < n`, i.e. `min(index_i, n - 1)`.
    pub fn index_j(&self) -> Result<usize> {
        match self.degree() {
            0 => Err(Error::DegreeZero),
            n => Ok(self.index_i().min(n - 1)),
        }
    }
}

impl TryFrom<Vec<u64>> for ContinuedFraction {
    type Error = Error;

    fn try_from(quotients: Vec<u64>) -> Result<Self> {
        ContinuedFraction::new(quotients)
    }
}

impl From<ContinuedFraction> for Vec<u64> {
    fn from(cf: ContinuedFraction) -> Self {
        cf.quotients
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, q) in self.quotients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("]")
    }
}

pub fn cf_expand(a: u64, b: u64) -> Result<ContinuedFraction> {
    ContinuedFraction::expand(a, b)
}

pub fn cf_value(cf: &ContinuedFraction) -> Result<(u64, u64)> {
    cf.value()
}
