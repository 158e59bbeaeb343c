use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (bad weights, non-spherical triple, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// An enumeration hit its element cap before finishing.
    #[error("resource cap of {cap} elements exceeded ({found} elements found so far)")]
    CapExceeded { cap: u64, found: u64 },

    #[error("relation {index} ({relation}) does not hold under the given images")]
    RelationFailed { index: usize, relation: String },

    #[error("no witness for orders ({a}, {b}, {c}) in degrees up to {max_degree}")]
    WitnessNotFound {
        a: u64,
        b: u64,
        c: u64,
        max_degree: usize,
    },

    #[error("division by zero")]
    DivisionByZero,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn cap(cap: u64, found: impl Into<BigUint>) -> Self {
        let found: BigUint = found.into();
        Error::CapExceeded {
            cap,
            found: u64::try_from(found).unwrap_or(u64::MAX),
        }
    }

    /// True for errors caused by an effort bound (element cap, search degree)
    /// rather than by the input itself.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::WitnessNotFound { .. })
    }
}
