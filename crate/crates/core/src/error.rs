use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("oscillator index {index} exceeds the supported maximum {max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("rapidity {0} is non-finite or outside the supported range |eta| <= {max}", max = crate::oscillator::MAX_RAPIDITY)]
    RapidityOutOfRange(f64),

    #[error("velocity ratio beta = {0} must satisfy |beta| < 1")]
    InvalidVelocity(f64),

    #[error("boost parameter {0} exceeds the overflow guard |eta| <= {max}", max = crate::little_group::MAX_BOOST)]
    BoostOutOfRange(f64),

    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: f64 },

    #[error("non-finite value {value} in {context}")]
    NonFinite { context: &'static str, value: f64 },

    #[error("integrand is not finite at node {index} (x = {x})")]
    NonFiniteSample { index: usize, x: f64 },

    #[error("contraction undefined: |gamma| * e^-eta = {0} exceeds 1")]
    ContractionUndefined(f64),

    #[error("grid too coarse: estimated truncation error {estimate:e} exceeds tolerance {tolerance:e}")]
    GridTooCoarse { estimate: f64, tolerance: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("tolerance {tol:e} not reachable within index cap (tail {tail:e} at K = {k})")]
    TruncationUnreachable { tol: f64, tail: f64, k: usize },

    #[error("numerical check failed: {what} = {value}")]
    NumericalCheck { what: String, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures that stem from a numerical result falling outside
    /// its tolerance, as opposed to bad input or I/O.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::GridTooCoarse { .. }
                | Error::TruncationUnreachable { .. }
                | Error::NumericalCheck { .. }
                | Error::NonFiniteSample { .. }
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
