use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value for {0}")]
    NonFinite(&'static str),

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("internal tangency requires rho <= r/2 (rho = {rho}, r = {r})")]
    InternalTangencyInadmissible { rho: f64, r: f64 },

    #[error("discretization level must be at least 1")]
    InvalidLevel,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(value: f64, name: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(name))
    }
}

pub(crate) fn ensure_positive(value: f64, name: &'static str) -> Result<f64> {
    ensure_finite(value, name)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}
