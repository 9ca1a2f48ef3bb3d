use thiserror::Error;

/// Errors raised by the numerical and inferential routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The data cannot support the computation (zero variance, too few degrees of freedom).
    #[error("degenerate data: {0}")]
    Degenerate(String),
    /// The requested design cannot be achieved.
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// Checks `0 < alpha <= 0.5`, the range over which the five decisions are disjoint.
pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 0.5 {
        Ok(())
    } else {
        Err(domain(format!("alpha must lie in (0, 0.5], got {alpha}")))
    }
}

pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must lie in (0, 1), got {p}")))
    }
}
