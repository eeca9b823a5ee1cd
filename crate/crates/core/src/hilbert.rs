//! Hilbert functions of quotients of `k[x0..x3]` by regular sequences.
//!
//! For generator degrees `a_1..a_k` (k <= 4) the Hilbert series is
//! `prod(1 - t^{a_i}) / (1 - t)^4`. Values are read off by expanding the
//! numerator into a merged sparse polynomial and pairing it with the
//! coefficients `binom(n + 3, 3)` of `1 / (1 - t)^4`, which vanish for
//! `n < 0`.
//!
//! [`h_poly`] is deliberately different: it evaluates the alternating sum
//! with the *polynomial* `binom(x, 3) = x(x-1)(x-2)/6`, which does not
//! vanish for negative `x`. The two agree only in a restricted region.

use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted generator degree.
pub const MAX_DEGREE: u64 = 1_000_000;
/// Largest accepted evaluation degree.
pub const MAX_EVAL_DEGREE: i64 = 10_000_000;
/// Most generators a [`DegreeTuple`] may hold.
pub const MAX_GENERATORS: usize = 6;
/// Most generators for which a generic choice is a regular sequence in
/// four variables.
pub const MAX_REGULAR: usize = 4;

/// Sorted generator degrees of a homogeneous ideal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeTuple(Vec<u64>);

impl DegreeTuple {
    pub fn new(mut degrees: Vec<u64>) -> Result<Self> {
        if degrees.is_empty() || degrees.len() > MAX_GENERATORS {
            return Err(Error::domain(format!(
                "a degree tuple needs 1 to {MAX_GENERATORS} entries, got {}",
                degrees.len()
            )));
        }
        for &a in &degrees {
            if a == 0 || a > MAX_DEGREE {
                return Err(Error::InvalidDegree {
                    degree: a as i64,
                    reason: "generator degrees must lie in [1, 10^6]",
                });
            }
        }
        degrees.sort_unstable();
        Ok(Self(degrees))
    }

    pub fn degrees(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn require_regular(&self) -> Result<()> {
        if self.len() > MAX_REGULAR {
            return Err(Error::domain(format!(
                "{} generic forms in four variables are not a regular sequence; \
                 closed forms cover at most {MAX_REGULAR}, use the witness oracle instead",
                self.len()
            )));
        }
        Ok(())
    }

    fn require_artinian(&self) -> Result<()> {
        if self.len() != MAX_REGULAR {
            return Err(Error::domain(format!(
                "Gorenstein quantities need exactly {MAX_REGULAR} degrees, got {}",
                self.len()
            )));
        }
        Ok(())
    }

    /// Coefficients of `prod(1 - t^{a_i})` as `(exponent, coefficient)`,
    /// merged and with zero coefficients dropped.
    fn numerator(&self) -> Vec<(i64, i64)> {
        let mut terms: Vec<(i64, i64)> = vec![(0, 1)];
        for &a in &self.0 {
            let shifted: Vec<(i64, i64)> = terms.iter().map(|&(e, c)| (e + a as i64, -c)).collect();
            terms.extend(shifted);
            terms.sort_unstable();
            let mut merged: Vec<(i64, i64)> = Vec::with_capacity(terms.len());
            for (e, c) in terms {
                match merged.last_mut() {
                    Some((le, lc)) if *le == e => *lc += c,
                    _ => merged.push((e, c)),
                }
            }
            merged.retain(|&(_, c)| c != 0);
            terms = merged;
        }
        terms
    }
}

impl fmt::Debug for DegreeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DegreeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Coefficient of `t^n` in `1 / (1 - t)^4`: `binom(n + 3, 3)` for `n >= 0`,
/// zero otherwise.
pub fn series_coefficient(n: i64) -> i128 {
    if n < 0 {
        return 0;
    }
    let n = n as i128;
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// The polynomial `x(x-1)(x-2)/6`, defined for every integer `x`.
pub fn poly_binom3(x: i64) -> i128 {
    let x = x as i128;
    x * (x - 1) * (x - 2) / 6
}

fn check_eval_degree(d: i64) -> Result<()> {
    if d > MAX_EVAL_DEGREE {
        return Err(Error::InvalidDegree {
            degree: d,
            reason: "evaluation degree above 10^7",
        });
    }
    Ok(())
}

fn to_count(v: i128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::DimensionOverflow(format!("Hilbert value {v} out of range")))
}

/// Hilbert function in degree `d` of `R / (F_1..F_k)` for a regular sequence
/// of the given degrees, `k <= 4`. Zero for `d < 0`.
pub fn hf_ci(degrees: &DegreeTuple, d: i64) -> Result<u64> {
    degrees.require_regular()?;
    check_eval_degree(d)?;
    if d < 0 {
        return Ok(0);
    }
    let value: i128 = degrees
        .numerator()
        .into_iter()
        .map(|(e, c)| c as i128 * series_coefficient(d - e))
        .sum();
    to_count(value)
}

/// Sum of the generator degrees minus four: the top nonzero degree of an
/// Artinian complete intersection in four variables.
pub fn socle_degree(degrees: &DegreeTuple) -> Result<i64> {
    degrees.require_artinian()?;
    Ok(degrees.0.iter().sum::<u64>() as i64 - 4)
}

/// The alternating sum over the Koszul shifts of `(a, b, c, d - c)` in
/// degree `d`, evaluated with [`poly_binom3`]. The shifts that only enter
/// in degrees below zero (`a + d`, `b + d`, `a + b + d`) are omitted. After
/// simplification the value is `a^2 b / 2 + a b^2 / 2 - 2 a b + 1`.
pub fn h_poly(a: i64, b: i64, c: i64, d: i64) -> i128 {
    let t = |x: i64| poly_binom3(x + 3);
    t(d) - (t(d - a) + t(d - b) + t(d - c) + t(c))
        + (t(d - a - b) + t(d - a - c) + t(c - a) + t(d - b - c) + t(c - b) + 1)
        - (t(d - a - b - c) + t(c - a - b))
}

/// Hilbert function of `W / (G)` in degree `d`, where `W` is the
/// quotient by four generic forms of the given degrees and `G` is one more
/// generic form of degree `e`, assuming multiplication by `G` has maximal
/// rank: `max(H(W, d) - H(W, d - e), 0)`.
pub fn slp_quotient_hf(degrees: &DegreeTuple, e: i64, d: i64) -> Result<u64> {
    degrees.require_artinian()?;
    if e < 1 {
        return Err(Error::InvalidDegree {
            degree: e,
            reason: "the extra form must have positive degree",
        });
    }
    let top = hf_ci(degrees, d)?;
    let below = hf_ci(degrees, d - e)?;
    Ok(top.saturating_sub(below))
}

fn surface_tuple(a: i64, b: i64, c: i64, d: i64) -> Result<DegreeTuple> {
    if !(1 <= a && a <= b && b <= c && c < d) {
        return Err(Error::domain(format!(
            "need 1 <= a <= b <= c < d, got ({a},{b},{c},{d})"
        )));
    }
    DegreeTuple::new(vec![a as u64, b as u64, c as u64, (d - c) as u64])
}

/// `H(W, a) + H(W, b) - H(W, d)` for `W` the quotient by generic forms of
/// degrees `(a, b, c, d - c)`. A negative value proves that the generic
/// degree-`d` surface contains no complete intersection of type `(a, b, c)`:
/// the multiples of the two remaining generators cannot fill `W_d`.
pub fn nonexistence_margin(a: i64, b: i64, c: i64, d: i64) -> Result<i128> {
    let w = surface_tuple(a, b, c, d)?;
    let ha = hf_ci(&w, a)? as i128;
    let hb = hf_ci(&w, b)? as i128;
    let hd = hf_ci(&w, d)? as i128;
    Ok(ha + hb - hd)
}

/// Values of a Hilbert function on a contiguous range of degrees `0..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    degrees: DegreeTuple,
    values: Vec<u64>,
}

impl HilbertTable {
    /// Table for degrees `0..=top`, built by multiplying the series
    /// `1 / (1 - t)^4` by each factor `1 - t^a` in place.
    pub fn through(degrees: &DegreeTuple, top: usize) -> Result<Self> {
        degrees.require_regular()?;
        check_eval_degree(top as i64)?;
        let mut s: Vec<i128> = (0..=top as i64).map(series_coefficient).collect();
        for &a in degrees.degrees() {
            let a = a as usize;
            for n in (a..=top).rev() {
                s[n] -= s[n - a];
            }
        }
        let values = s.into_iter().map(to_count).collect::<Result<_>>()?;
        Ok(Self {
            degrees: degrees.clone(),
            values,
        })
    }

    /// Whole table of an Artinian quotient: degrees `0..=socle + 1`, the last
    /// entry being zero.
    pub fn artinian(degrees: &DegreeTuple) -> Result<Self> {
        let socle = socle_degree(degrees)?;
        Self::through(degrees, (socle + 1) as usize)
    }

    pub fn degrees(&self) -> &DegreeTuple {
        &self.degrees
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, d: i64) -> Option<u64> {
        if d < 0 {
            return Some(0);
        }
        self.values.get(d as usize).copied()
    }
}
