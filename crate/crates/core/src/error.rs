use core::fmt;

/// Failure modes shared by every evaluation routine in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the region where the routine is defined.
    Domain(&'static str),
    /// The requested expansion order has no closed-form coefficient table.
    UnsupportedOrder(usize),
    /// The supplied coefficient set was built for a different degree or order.
    CoefficientMismatch,
    /// An iterative or adaptive scheme exhausted its budget.
    NoConvergence(&'static str),
    /// Arithmetic produced a non-finite or degenerate intermediate.
    Numerical(&'static str),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the
    /// numerics.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::UnsupportedOrder(_) | Error::CoefficientMismatch
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::UnsupportedOrder(n) => {
                write!(f, "unsupported expansion order {n} (closed forms exist for 2..=6)")
            }
            Error::CoefficientMismatch => {
                write!(f, "coefficient set does not match the evaluation point")
            }
            Error::NoConvergence(msg) => write!(f, "no convergence: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
