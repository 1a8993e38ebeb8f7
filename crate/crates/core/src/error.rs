use thiserror::Error;

/// Errors raised by the series kernels, gap functions and root solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument {value} outside the admissible domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("tail bound unavailable at cutoff {cutoff}: ratio {ratio} is not below 1")]
    BoundUnavailable { cutoff: u64, ratio: f64 },

    #[error("gap function shows no sign change up to r = {hi}")]
    NoRoot { hi: f64 },

    #[error("gap function is not finite at r = {r}")]
    NonFinite { r: f64 },

    #[error("bisection stopped after {iterations} iterations with bracket width {width}")]
    NotConverged { iterations: u32, width: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
