use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into three families: configuration problems (bad
/// modulus), domain errors (inputs outside an operation's contract) and
/// resource errors (work that would exceed a size cap). [`Error::is_resource`]
/// lets front ends map the last family to a distinct exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^31)")]
    InvalidModulus(u64),

    #[error("operands live in different fields (moduli {left} and {right})")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: i64, reason: &'static str },

    #[error("{0}")]
    Domain(String),

    #[error("dimension overflow: {0}")]
    DimensionOverflow(String),

    #[error("assembly needs {requested} matrix entries, above the resource cap of {cap}")]
    ResourceCap { requested: u128, cap: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by size limits rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap { .. } | Error::DimensionOverflow(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
