//! Random-specialization oracle.
//!
//! For a query `(a, b, c, d)` the generic degree-`d` surface contains a
//! complete intersection of type `(a, b, c)` exactly when six generic forms
//! of degrees `(a, b, c, d-c, d-b, d-a)` span all of `R_d`. Here the forms
//! are drawn with random coefficients in GF(p) and the span is measured by
//! exact rank.
//!
//! Only one direction is a proof. Reducing integer coefficients mod p can
//! only lower a rank, so a specialization whose quotient vanishes in degree
//! `d` forces vanishing for generic complex forms: [`WitnessVerdict::CertifiedYes`].
//! A nonzero value may be bad luck or a bad characteristic and is reported
//! as [`WitnessVerdict::NoWitnessFound`], never as non-existence.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, EchelonBasis, PrimeField};
use crate::poly::{monomial_basis, num_monomials, random_homogeneous_form, HomogeneousForm};
use crate::query::CIQuery;

/// Default bound on `rows * cols` of an assembled matrix.
pub const DEFAULT_RESOURCE_CAP: u64 = 100_000_000;
pub const DEFAULT_SEED: u64 = 20_110_101;
pub const DEFAULT_TRIALS: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub prime: PrimeField,
    pub seed: u64,
    pub trials: u32,
    pub resource_cap: u64,
    /// Characteristic for a second round of trials when the first finds no
    /// witness.
    pub second_prime: Option<PrimeField>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            prime: PrimeField::default_prime(),
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            resource_cap: DEFAULT_RESOURCE_CAP,
            second_prime: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessVerdict {
    CertifiedYes,
    NoWitnessFound,
}

impl WitnessVerdict {
    pub fn name(self) -> &'static str {
        match self {
            WitnessVerdict::CertifiedYes => "CertifiedYes",
            WitnessVerdict::NoWitnessFound => "NoWitnessFound",
        }
    }
}

impl fmt::Display for WitnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One specialization: which field and RNG stream produced the forms, and
/// the resulting Hilbert value in degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TrialOutcome {
    pub prime: u64,
    pub trial: u32,
    pub hilbert_value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessReport {
    pub query: CIQuery,
    pub prime: u64,
    pub seed: u64,
    pub trials: u32,
    /// Trials in the order they ran. The search stops at the first zero.
    pub outcomes: Vec<TrialOutcome>,
    pub verdict: WitnessVerdict,
}

impl WitnessReport {
    pub fn certified(&self) -> bool {
        self.verdict == WitnessVerdict::CertifiedYes
    }

    pub fn hilbert_values(&self) -> Vec<u64> {
        self.outcomes.iter().map(|o| o.hilbert_value).collect()
    }

    /// The smallest Hilbert value observed, an upper bound on the generic one.
    pub fn best_value(&self) -> Option<u64> {
        self.outcomes.iter().map(|o| o.hilbert_value).min()
    }
}

/// RNG for a given trial. Trials share the seed and differ by stream.
pub fn trial_rng(seed: u64, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Number of entries of the matrix whose rows are the monomials of degree
/// `d` and whose columns are the products `m * F_i`.
pub fn assembly_entries(form_degrees: &[u64], d: i64) -> u128 {
    if d < 0 {
        return 0;
    }
    let rows = num_monomials(d as u32) as u128;
    let cols: u128 = form_degrees
        .iter()
        .filter(|&&e| e as i64 <= d)
        .map(|&e| num_monomials((d - e as i64) as u32) as u128)
        .sum();
    rows * cols
}

fn check_inputs(forms: &[HomogeneousForm], d: i64, cap: u64) -> Result<()> {
    if let Some(first) = forms.first() {
        for f in &forms[1..] {
            first.check_compatible(f)?;
        }
    }
    if d > crate::hilbert::MAX_EVAL_DEGREE {
        return Err(Error::InvalidDegree {
            degree: d,
            reason: "evaluation degree above 10^7",
        });
    }
    let degrees: Vec<u64> = forms.iter().map(|f| f.degree() as u64).collect();
    let requested = assembly_entries(&degrees, d);
    if requested > cap as u128 {
        return Err(Error::ResourceCap { requested, cap });
    }
    Ok(())
}

/// Products `m * F` spanning the degree-`d` piece of the ideal, in generator
/// order. Forms of degree above `d` contribute nothing.
fn for_each_product(forms: &[HomogeneousForm], d: u32, mut sink: impl FnMut(Vec<u64>) -> bool) {
    let len = num_monomials(d);
    for f in forms.iter().filter(|f| f.degree() <= d) {
        let form_basis = monomial_basis(f.degree());
        for m in monomial_basis(d - f.degree()) {
            let mut v = vec![0u64; len];
            f.scatter_shifted(&m, &form_basis, &mut v);
            if sink(v) {
                return;
            }
        }
    }
}

/// Dimension of the degree-`d` piece of the ideal generated by `forms`,
/// under the default resource cap.
pub fn graded_ideal_dim(forms: &[HomogeneousForm], d: i64) -> Result<usize> {
    graded_ideal_dim_capped(forms, d, DEFAULT_RESOURCE_CAP)
}

pub fn graded_ideal_dim_capped(forms: &[HomogeneousForm], d: i64, cap: u64) -> Result<usize> {
    check_inputs(forms, d, cap)?;
    if forms.is_empty() || d < 0 {
        return Ok(0);
    }
    let d = d as u32;
    let mut basis = EchelonBasis::new(forms[0].field(), num_monomials(d));
    for_each_product(forms, d, |v| basis.push(v));
    Ok(basis.rank())
}

/// `binom(d + 3, 3) - graded_ideal_dim(forms, d)`: the Hilbert function of
/// `R / (forms)` in degree `d`.
pub fn quotient_hf_explicit(forms: &[HomogeneousForm], d: i64) -> Result<u64> {
    quotient_hf_explicit_capped(forms, d, DEFAULT_RESOURCE_CAP)
}

pub fn quotient_hf_explicit_capped(forms: &[HomogeneousForm], d: i64, cap: u64) -> Result<u64> {
    let dim = graded_ideal_dim_capped(forms, d, cap)?;
    if d < 0 {
        return Ok(0);
    }
    Ok((num_monomials(d as u32) - dim) as u64)
}

/// The full matrix with rows indexed by `monomial_basis(d)` and one column
/// per product `m * F_i`. Only needed when the matrix itself is wanted;
/// [`graded_ideal_dim`] streams the same columns without storing them.
pub fn assemble_ideal_matrix(forms: &[HomogeneousForm], d: i64, cap: u64) -> Result<DenseMatrix> {
    check_inputs(forms, d, cap)?;
    let field = forms.first().map_or_else(PrimeField::default_prime, HomogeneousForm::field);
    if d < 0 {
        return DenseMatrix::zeros(field, 0, 0);
    }
    let d = d as u32;
    let degrees: Vec<u64> = forms.iter().map(|f| f.degree() as u64).collect();
    let rows = num_monomials(d);
    let cols = (assembly_entries(&degrees, d as i64) / rows as u128) as usize;
    let mut m = DenseMatrix::zeros(field, rows, cols)?;
    let mut col = 0;
    for_each_product(forms, d, |v| {
        for (r, &x) in v.iter().enumerate() {
            if x != 0 {
                m.set_raw(r, col, x);
            }
        }
        col += 1;
        false
    });
    Ok(m)
}

/// Draw the six forms of one trial.
pub fn witness_forms(q: &CIQuery, field: PrimeField, seed: u64, trial: u32) -> Result<Vec<HomogeneousForm>> {
    let mut rng = trial_rng(seed, trial);
    q.generator_degrees()?
        .iter()
        .map(|&e| random_homogeneous_form(e as u32, field, &mut rng))
        .collect()
}

/// Search for a specialization certifying that the generic degree-`d`
/// surface contains a complete intersection of type `(a, b, c)`.
pub fn ci_witness(q: &CIQuery, cfg: &OracleConfig) -> Result<WitnessReport> {
    let degrees = q.generator_degrees()?;
    if cfg.trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    let requested = assembly_entries(&degrees, q.d() as i64);
    if requested > cfg.resource_cap as u128 {
        return Err(Error::ResourceCap {
            requested,
            cap: cfg.resource_cap,
        });
    }
    let mut outcomes = Vec::new();
    let primes = std::iter::once(cfg.prime).chain(cfg.second_prime);
    'search: for field in primes {
        for trial in 0..cfg.trials {
            let forms = witness_forms(q, field, cfg.seed, trial)?;
            let value = quotient_hf_explicit_capped(&forms, q.d() as i64, cfg.resource_cap)?;
            outcomes.push(TrialOutcome {
                prime: field.modulus(),
                trial,
                hilbert_value: value,
            });
            if value == 0 {
                break 'search;
            }
        }
    }
    let verdict = if outcomes.iter().any(|o| o.hilbert_value == 0) {
        WitnessVerdict::CertifiedYes
    } else {
        WitnessVerdict::NoWitnessFound
    };
    Ok(WitnessReport {
        query: *q,
        prime: cfg.prime.modulus(),
        seed: cfg.seed,
        trials: cfg.trials,
        outcomes,
        verdict,
    })
}
