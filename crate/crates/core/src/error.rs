use thiserror::Error;

/// Everything that can go wrong while evaluating or verifying a quantity.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested point is a pole of the function being evaluated.
    #[error("pole: {0}")]
    Pole(String),
    /// The requested accuracy cannot be met with the configured budget.
    #[error("precision error: {0}")]
    Precision(String),
    /// A Mellin integration line passes too close to a pole of its integrand.
    #[error(
        "integration line Re(s) = {abscissa} is {distance:.3} from a pole of the integrand \
         (need >= 0.25); retry with M = {suggested_m}"
    )]
    AbscissaShift {
        abscissa: f64,
        distance: f64,
        suggested_m: i64,
    },
    /// Exact values with different powers of π or i cannot be summed into one term.
    #[error("cannot combine unlike exact terms: {0}")]
    UnlikeTerms(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
