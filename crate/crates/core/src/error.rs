use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series does not converge at |z| = {modulus}: {reason}")]
    NonConvergent { modulus: f64, reason: String },

    #[error("headroom {headroom} is smaller than truncation {truncation}")]
    HeadroomInsufficient { truncation: usize, headroom: usize },

    #[error("iteration did not converge after {iterations} steps (last change {last_change:e})")]
    NoConvergence { iterations: usize, last_change: f64 },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("singular system at lambda = {re}{im:+}i")]
    SingularSolve { re: f64, im: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
