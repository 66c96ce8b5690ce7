use alloc::string::String;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A tuple or matrix had the wrong length or shape.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    /// An argument was outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input data failed a structural check (associativity, group axioms, ...).
    #[error("validation failed: {0}")]
    Validation(String),
    /// The computation would exceed the configured size bound.
    #[error("capacity exceeded: {needed} entries requested, limit is {limit}")]
    Capacity { needed: usize, limit: usize },
    /// Fixed-width integer arithmetic overflowed.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::Error::Domain(alloc::format!($($arg)*))
    };
}

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::Validation(alloc::format!($($arg)*))
    };
}

pub(crate) use {domain, invalid};

pub(crate) fn check_capacity(needed: usize, limit: usize) -> Result<()> {
    if needed > limit {
        Err(Error::Capacity { needed, limit })
    } else {
        Ok(())
    }
}
