//! Homogeneous forms in four variables `x0..x3` over GF(p).
//!
//! A form of degree `d` is a dense coefficient vector indexed by
//! [`monomial_basis`]`(d)`, whose length is `binom(d + 3, 3)`.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{FieldElement, PrimeField};

pub const NUM_VARS: usize = 4;

/// `binom(d + 3, 3)`, the number of monomials of degree `d`.
pub fn num_monomials(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// A monomial `x0^e0 x1^e1 x2^e2 x3^e3`.
///
/// Ordered by degree first, then lexicographically on the exponent vector
/// with `x0` most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; NUM_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; NUM_VARS] };

    pub fn new(exps: [u32; NUM_VARS]) -> Self {
        Self { exps }
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        let mut exps = [0; NUM_VARS];
        exps[i] = 1;
        Self { exps }
    }

    pub fn exponents(&self) -> [u32; NUM_VARS] {
        self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e += o;
        }
        Monomial { exps }
    }

    /// Position in `monomial_basis(self.degree())`.
    pub fn index(&self) -> usize {
        let d = self.degree() as usize;
        let [e0, e1, e2, _] = self.exps.map(|e| e as usize);
        // monomials with smaller x0 exponent: sum of binom(d - t + 2, 2)
        let before_e0: usize = (0..e0).map(|t| (d - t + 1) * (d - t + 2) / 2).sum();
        // then smaller x1 exponent among those with this x0 exponent
        let rest = d - e0;
        let before_e1: usize = (0..e1).map(|t| rest - t + 1).sum();
        before_e0 + before_e1 + e2
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        Ok(())
    }
}

/// All monomials of degree `d`, strictly increasing.
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(num_monomials(d));
    for e0 in 0..=d {
        for e1 in 0..=d - e0 {
            for e2 in 0..=d - e0 - e1 {
                out.push(Monomial::new([e0, e1, e2, d - e0 - e1 - e2]));
            }
        }
    }
    out
}

/// A homogeneous polynomial with a dense coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    field: PrimeField,
    degree: u32,
    coeffs: Vec<u32>,
}

impl HomogeneousForm {
    pub fn zero(field: PrimeField, degree: u32) -> Self {
        Self {
            field,
            degree,
            coeffs: vec![0; num_monomials(degree)],
        }
    }

    /// Build from a coefficient vector in basis order; values are reduced.
    pub fn from_coefficients(field: PrimeField, degree: u32, coeffs: &[u64]) -> Result<Self> {
        if coeffs.len() != num_monomials(degree) {
            return Err(Error::domain(format!(
                "degree {degree} form needs {} coefficients, got {}",
                num_monomials(degree),
                coeffs.len()
            )));
        }
        Ok(Self {
            field,
            degree,
            coeffs: coeffs.iter().map(|&c| field.reduce(c) as u32).collect(),
        })
    }

    /// Build from `(monomial, coefficient)` terms, summing repeats.
    pub fn from_terms(field: PrimeField, degree: u32, terms: &[(Monomial, i64)]) -> Result<Self> {
        let mut f = Self::zero(field, degree);
        for &(m, c) in terms {
            if m.degree() != degree {
                return Err(Error::domain(format!(
                    "monomial {m} has degree {}, form has degree {degree}",
                    m.degree()
                )));
            }
            let slot = &mut f.coeffs[m.index()];
            *slot = (field.element(*slot as u64) + field.from_signed(c)).value() as u32;
        }
        Ok(f)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficients as residues in basis order.
    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        if m.degree() != self.degree {
            return self.field.zero();
        }
        self.field.element(self.coeffs[m.index()] as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, FieldElement)> + '_ {
        monomial_basis(self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m, self.field.element(c as u64)))
    }

    pub fn checked_add(&self, other: &HomogeneousForm) -> Result<HomogeneousForm> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::domain(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.reduce(a as u64 + b as u64) as u32)
            .collect();
        Ok(HomogeneousForm { coeffs, ..*self })
    }

    pub(crate) fn check_compatible(&self, other: &HomogeneousForm) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    /// Scatter the coefficients of `m * self` into `out`, a vector indexed by
    /// `monomial_basis(deg m + deg self)`. Entries not hit are left untouched.
    pub(crate) fn scatter_shifted(&self, m: &Monomial, basis: &[Monomial], out: &mut [u64]) {
        for (mu, &c) in basis.iter().zip(&self.coeffs) {
            if c != 0 {
                out[m.mul(mu).index()] = c as u64;
            }
        }
    }
}

impl fmt::Debug for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogeneousForm(deg {}, {}: ", self.degree, self.field)?;
        let mut any = false;
        for (m, c) in self.terms() {
            if any {
                write!(f, " + ")?;
            }
            any = true;
            write!(f, "{c}*{m}")?;
        }
        if !any {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// The product `m * f`.
pub fn multiply_by_monomial(m: &Monomial, f: &HomogeneousForm) -> HomogeneousForm {
    let mut out = HomogeneousForm::zero(f.field, f.degree + m.degree());
    for (mu, &c) in monomial_basis(f.degree).iter().zip(&f.coeffs) {
        out.coeffs[m.mul(mu).index()] = c;
    }
    out
}

/// A form of degree `d` with every coefficient drawn uniformly from GF(p).
pub fn random_homogeneous_form<R: Rng + ?Sized>(
    d: u32,
    field: PrimeField,
    rng: &mut R,
) -> Result<HomogeneousForm> {
    if d == 0 {
        return Err(Error::InvalidDegree {
            degree: 0,
            reason: "constant forms are units and cannot generate a proper ideal",
        });
    }
    let p = field.modulus();
    let coeffs = (0..num_monomials(d))
        .map(|_| rng.random_range(0..p) as u32)
        .collect();
    Ok(HomogeneousForm {
        field,
        degree: d,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn binom3(n: u64) -> u64 {
        // independent of num_monomials: multiplicative formula
        (1..=3).fold(1, |acc, k| acc * (n + 1 - k) / k)
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(0), vec![Monomial::ONE]);
        assert_eq!(monomial_basis(2).len(), 10);
        assert_eq!(monomial_basis(15).len(), binom3(18) as usize);
        assert_eq!(monomial_basis(15).len(), 816);
        for d in 0..25 {
            assert_eq!(monomial_basis(d).len(), binom3(d as u64 + 3) as usize);
            assert_eq!(num_monomials(d), binom3(d as u64 + 3) as usize);
        }
    }

    #[test]
    fn basis_is_strictly_increasing_and_indexed() {
        for d in 0..18 {
            let basis = monomial_basis(d);
            assert!(basis.windows(2).all(|w| w[0] < w[1]));
            for (i, m) in basis.iter().enumerate() {
                assert_eq!(m.degree(), d);
                assert_eq!(m.index(), i);
            }
        }
    }

    #[test]
    fn degree_order_dominates() {
        let x3_cubed = Monomial::new([0, 0, 0, 3]);
        let x0_sq = Monomial::new([2, 0, 0, 0]);
        assert!(x0_sq < x3_cubed);
    }

    #[test]
    fn multiply_by_one_is_identity() {
        let f = random_homogeneous_form(3, gf(101), &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(multiply_by_monomial(&Monomial::ONE, &f), f);
    }

    #[test]
    fn multiply_variables() {
        let field = gf(101);
        let x1 = HomogeneousForm::from_terms(field, 1, &[(Monomial::var(1), 1)]).unwrap();
        let prod = multiply_by_monomial(&Monomial::var(0), &x1);
        let x0x1 = Monomial::new([1, 1, 0, 0]);
        assert_eq!(prod.degree(), 2);
        assert_eq!(prod.terms().collect::<Vec<_>>(), vec![(x0x1, field.one())]);
    }

    #[test]
    fn multiply_binomial_by_square() {
        // x0^2 (x0 + 2 x1) = x0^3 + 2 x0^2 x1 over GF(7)
        let field = gf(7);
        let f = HomogeneousForm::from_terms(field, 1, &[(Monomial::var(0), 1), (Monomial::var(1), 2)])
            .unwrap();
        let prod = multiply_by_monomial(&Monomial::new([2, 0, 0, 0]), &f);
        let expected = HomogeneousForm::from_terms(
            field,
            3,
            &[(Monomial::new([3, 0, 0, 0]), 1), (Monomial::new([2, 1, 0, 0]), 2)],
        )
        .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn random_forms_are_seeded() {
        let field = gf(101);
        let a = random_homogeneous_form(1, field, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = random_homogeneous_form(1, field, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
        let big = random_homogeneous_form(6, PrimeField::default_prime(), &mut ChaCha8Rng::seed_from_u64(0))
            .unwrap();
        assert_eq!(big.coefficients().len(), 84);
    }

    #[test]
    fn distinct_seeds_give_distinct_forms() {
        let field = PrimeField::default_prime();
        let differing = (0..100u64)
            .filter(|&s| {
                let a = random_homogeneous_form(2, field, &mut ChaCha8Rng::seed_from_u64(2 * s)).unwrap();
                let b = random_homogeneous_form(2, field, &mut ChaCha8Rng::seed_from_u64(2 * s + 1)).unwrap();
                a != b
            })
            .count();
        assert_eq!(differing, 100);
    }

    #[test]
    fn constant_forms_rejected() {
        let err = random_homogeneous_form(0, gf(101), &mut ChaCha8Rng::seed_from_u64(0)).unwrap_err();
        assert!(matches!(err, Error::InvalidDegree { degree: 0, .. }));
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(HomogeneousForm::from_coefficients(gf(7), 2, &[1, 2, 3]).is_err());
        assert!(HomogeneousForm::from_terms(gf(7), 2, &[(Monomial::var(0), 1)]).is_err());
    }

    proptest! {
        #[test]
        fn multiplication_is_linear(seed in any::<u64>(), fd in 1u32..5, e in [0u32..4, 0..4, 0..4, 0..4]) {
            let field = gf(65_521);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_homogeneous_form(fd, field, &mut rng).unwrap();
            let g = random_homogeneous_form(fd, field, &mut rng).unwrap();
            let m = Monomial::new(e);
            let lhs = multiply_by_monomial(&m, &f.checked_add(&g).unwrap());
            let rhs = multiply_by_monomial(&m, &f).checked_add(&multiply_by_monomial(&m, &g)).unwrap();
            prop_assert_eq!(lhs.degree(), m.degree() + fd);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_coefficients_are_shifted(seed in any::<u64>(), fd in 1u32..5, e in [0u32..3, 0..3, 0..3, 0..3]) {
            let field = gf(101);
            let f = random_homogeneous_form(fd, field, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let m = Monomial::new(e);
            let prod = multiply_by_monomial(&m, &f);
            let shifted: Vec<Monomial> = monomial_basis(fd).iter().map(|mu| m.mul(mu)).collect();
            for nu in monomial_basis(prod.degree()) {
                match shifted.iter().position(|s| *s == nu) {
                    Some(i) => prop_assert_eq!(prod.coefficient(&nu), f.coefficient(&monomial_basis(fd)[i])),
                    None => prop_assert!(prod.coefficient(&nu).is_zero()),
                }
            }
        }
    }
}
