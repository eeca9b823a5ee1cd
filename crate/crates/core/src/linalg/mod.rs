//! Exact linear algebra over prime fields.

mod echelon;
mod field;
mod matrix;

pub use echelon::EchelonBasis;
pub use field::{is_prime, FieldElement, PrimeField, DEFAULT_PRIME, SECOND_PRIME};
pub use matrix::{rank_mod_p, DenseMatrix};
