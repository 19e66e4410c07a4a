use thiserror::Error;

/// Errors raised by the computational core.
///
/// The variants follow the failure classes the CLI maps onto exit codes:
/// everything here is an input problem (exit code 2) except `Internal`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid or mismatched parameters (non-prime `p`, `p <= h`, mixed `p`).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A module violates a structural invariant (`eta^p != 0`, non-homogeneous operator).
    #[error("structural error: {0}")]
    Structural(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input data (missing seeds, bad shapes, unparsable weights).
    #[error("input error: {0}")]
    Input(String),

    /// A resource cap was exceeded.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// Integer overflow in an exact count.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An invariant that should hold by construction failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Largest prime accepted anywhere in the crate. Products of two residues
/// then fit comfortably in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is an odd prime in the supported range.
pub fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Parameter(format!("p = {p} is not an odd prime")));
    }
    if p >= MAX_PRIME {
        return Err(Error::Parameter(format!("p = {p} exceeds 2^31")));
    }
    Ok(())
}
