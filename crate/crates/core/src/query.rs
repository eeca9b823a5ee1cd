use std::fmt;

use crate::error::{Error, Result};

/// A question "does the generic degree-`d` surface in P^3 contain a
/// complete intersection of type `(a, b, c)`?".
///
/// The constructor sorts `a <= b <= c` but accepts any positive `d`; the
/// cases `d <= c` are answered by elementary triage before anything else.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CIQuery {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl CIQuery {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        let mut abc = [a, b, c];
        abc.sort_unstable();
        let [a, b, c] = abc;
        if a == 0 || d == 0 {
            return Err(Error::domain(format!(
                "degrees must be positive, got ({a},{b},{c}) and d = {d}"
            )));
        }
        if d > crate::hilbert::MAX_DEGREE {
            return Err(Error::InvalidDegree {
                degree: d as i64,
                reason: "surface degrees are capped at 10^6",
            });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn abc(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    /// `c < d`: the range where the Hilbert-function criterion applies.
    pub fn is_canonical(&self) -> bool {
        self.c < self.d
    }

    pub fn with_d(&self, d: u64) -> Result<Self> {
        Self::new(self.a, self.b, self.c, d)
    }

    pub(crate) fn require_canonical(&self) -> Result<()> {
        if !self.is_canonical() {
            return Err(Error::domain(format!(
                "query {self} needs c < d for this operation"
            )));
        }
        Ok(())
    }

    /// Degrees `(a, b, c, d - c, d - b, d - a)` of the six forms whose
    /// quotient must vanish in degree `d`.
    pub fn generator_degrees(&self) -> Result<[u64; 6]> {
        self.require_canonical()?;
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        Ok([a, b, c, d - c, d - b, d - a])
    }

    /// `a,b,c,d` as signed integers, for the Hilbert-function helpers.
    pub(crate) fn signed(&self) -> (i64, i64, i64, i64) {
        (self.a as i64, self.b as i64, self.c as i64, self.d as i64)
    }
}

impl fmt::Display for CIQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for CIQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CI({},{},{}) on degree {}", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_validates() {
        let q = CIQuery::new(9, 3, 9, 10).unwrap();
        assert_eq!(q.abc(), [3, 9, 9]);
        assert!(q.is_canonical());
        assert!(CIQuery::new(0, 1, 1, 3).is_err());
        assert!(CIQuery::new(1, 1, 1, 0).is_err());
        assert!(!CIQuery::new(2, 3, 5, 4).unwrap().is_canonical());
    }

    #[test]
    fn six_degrees() {
        let q = CIQuery::new(6, 8, 9, 20).unwrap();
        assert_eq!(q.generator_degrees().unwrap(), [6, 8, 9, 11, 12, 14]);
        assert!(CIQuery::new(2, 3, 5, 5).unwrap().generator_degrees().is_err());
    }
}
