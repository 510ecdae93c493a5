use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid exponents p = {p}, q = {q}: require q > p ≥ 2")]
    Exponents { p: f64, q: f64 },

    #[error("invalid domain: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("incompatible data: u0 differs from g(·,0) by {gap:e} at boundary node {node}")]
    Compatibility { node: usize, gap: f64 },

    #[error("solution left the finite range at step {step} (t = {t})")]
    NonFinite { step: usize, t: f64 },

    #[error("horizon T = {horizon} is shorter than the dt floor {floor}")]
    HorizonTooShort { horizon: f64, floor: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("state constraint active at boundary node {node}: u = {value}, R = {r} (h = {h})")]
    ConstraintActive { node: usize, value: f64, r: f64, h: f64 },

    #[error("ergodic solve failed at lambda = {lambda}: {source}")]
    AtLambda {
        lambda: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("constant search exhausted after {doublings} doublings (margin {margin:e})")]
    SearchExhausted { doublings: usize, margin: f64 },

    #[error("sup-convolution window empty: T = {horizon} ≤ 2Kα = {window}")]
    EmptyWindow { horizon: f64, window: f64 },

    #[error("insufficient samples: {found} snapshots in the fitting window, need 3")]
    InsufficientSamples { found: usize },

    #[error("expression error in {name:?}: {message}")]
    Expression { name: String, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Checks the standing assumption q > p ≥ 2.
pub fn check_exponents(p: f64, q: f64) -> Result<()> {
    if p.is_finite() && q.is_finite() && p >= 2.0 && q > p {
        Ok(())
    } else {
        Err(Error::Exponents { p, q })
    }
}
