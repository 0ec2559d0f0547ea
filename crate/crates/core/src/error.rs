use num_complex::Complex64;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The function has a pole at the requested point.
    #[error("{function} has a pole at s = {at}")]
    Pole {
        function: &'static str,
        at: Complex64,
    },
    /// A precondition on the arguments is violated.
    #[error("{0}")]
    Domain(String),
    /// NaN or infinity reached an operation.
    #[error("non-finite argument passed to {0}")]
    NonFinite(&'static str),
    /// Two routes that must agree did not, or an algorithm failed to converge.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by the caller's input rather than by the
    /// numerics.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Inconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(s: Complex64, what: &'static str) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

pub(crate) fn check_finite_real(x: f64, what: &'static str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
