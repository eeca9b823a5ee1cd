//! Prime fields GF(p) with p < 2^31.
//!
//! The bound keeps every product of two reduced residues below 2^62, so the
//! elimination kernels can accumulate in plain `u64` without widening.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// 2^31 - 1, a Mersenne prime. Reduction modulo it is shift-and-add, which is
/// why the rank kernel has a dedicated fast path for it.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Largest prime below [`DEFAULT_PRIME`]; used when re-running a witness
/// search in a second characteristic.
pub const SECOND_PRIME: u64 = 2_147_483_629;

const MODULUS_BOUND: u64 = 1 << 31;

/// Deterministic primality test by trial division. Only meant for the
/// moduli accepted by [`PrimeField`], i.e. below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut k = 5u64;
    while k * k <= n {
        if n % k == 0 || n % (k + 2) == 0 {
            return false;
        }
        k += 6;
    }
    true
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i64) as u64)
}

/// The field GF(p) for a validated prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_BOUND || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Self { p })
    }

    pub fn default_prime() -> Self {
        Self { p: DEFAULT_PRIME }
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    #[inline]
    pub fn mul(self, x: u64, y: u64) -> u64 {
        (x * y) % self.p
    }

    /// Inverse of a residue, `None` for zero.
    pub fn inv(self, x: u64) -> Option<u64> {
        let x = self.reduce(x);
        if x == 0 {
            None
        } else {
            mod_inverse(x, self.p)
        }
    }

    pub fn element(self, value: u64) -> FieldElement {
        FieldElement {
            value: self.reduce(value),
            modulus: self.p,
        }
    }

    pub fn from_signed(self, value: i64) -> FieldElement {
        FieldElement {
            value: value.rem_euclid(self.p as i64) as u64,
            modulus: self.p,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// An element of GF(p). The residue is always in `[0, p)`.
///
/// Arithmetic between elements of different fields is a programming error
/// and panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<FieldElement> {
        self.field().inv(self.value).map(|value| FieldElement {
            value,
            modulus: self.modulus,
        })
    }

    pub fn pow(self, mut exp: u64) -> FieldElement {
        let p = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        FieldElement {
            value: acc,
            modulus: p,
        }
    }

    #[inline]
    fn check(self, other: FieldElement) {
        assert_eq!(
            self.modulus, other.modulus,
            "field elements from different moduli"
        );
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        self.check(rhs);
        let mut value = self.value + rhs.value;
        if value >= self.modulus {
            value -= self.modulus;
        }
        FieldElement { value, ..self }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        let value = if self.value == 0 {
            0
        } else {
            self.modulus - self.value
        };
        FieldElement { value, ..self }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            value: self.value * rhs.value % self.modulus,
            ..self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constants_are_prime() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(SECOND_PRIME));
        assert!(((SECOND_PRIME + 1)..DEFAULT_PRIME).all(|n| !is_prime(n)));
    }

    #[test]
    fn rejects_bad_moduli() {
        for p in [0, 1, 4, 91, 1 << 31, (1 << 31) + 11] {
            assert_eq!(PrimeField::new(p), Err(Error::InvalidModulus(p)));
        }
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.zero().inv(), None);
        assert_eq!(f.element(3).inv(), Some(f.element(5)));
    }

    #[test]
    #[should_panic(expected = "different moduli")]
    fn mixing_fields_panics() {
        let a = PrimeField::new(7).unwrap().one();
        let b = PrimeField::new(11).unwrap().one();
        let _ = a + b;
    }

    fn field() -> impl Strategy<Value = PrimeField> {
        prop_oneof![
            Just(PrimeField::new(2).unwrap()),
            Just(PrimeField::new(101).unwrap()),
            Just(PrimeField::new(65_521).unwrap()),
            Just(PrimeField::default_prime()),
            Just(PrimeField::new(SECOND_PRIME).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(f in field(), x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
            let (a, b, c) = (f.element(x), f.element(y), f.element(z));
            prop_assert!(a.value() < f.modulus());
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + f.zero(), a);
            prop_assert_eq!(a * f.one(), a);
            prop_assert_eq!(a + (-a), f.zero());
            prop_assert_eq!(a - b + b, a);
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), f.one());
                // Fermat
                prop_assert_eq!(a.pow(f.modulus() - 1), f.one());
            }
        }
    }
}
