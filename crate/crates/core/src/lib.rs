//! Complete-intersection points on generic surfaces in P^3.
//!
//! Given `a <= b <= c` and `d`, does the generic surface of degree `d`
//! contain a zero-dimensional complete intersection of type `(a, b, c)`?
//! The crate answers with a [`Decision`] whose certificate names every rule
//! that fired, backed by closed-form Hilbert functions ([`hilbert`]) and a
//! finite-field rank oracle ([`oracle`]).

pub mod decider;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod query;

pub use decider::{classify, decide, normalize, DecideOptions, Decision, Rule, Step, Verdict};
pub use error::{Error, Result};
pub use query::CIQuery;
