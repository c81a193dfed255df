use thiserror::Error;

/// Errors raised by the channel model, the objective and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside [0, 1]")]
    Domain { name: &'static str, value: f64 },

    #[error("{name} = {value}: KKT analysis assumes a, b, c, d not in {{0, 1}} so that the objective is differentiable")]
    NotDifferentiable { name: &'static str, value: f64 },

    #[error("weights must be strictly positive, got ({w1}, {w2})")]
    InvalidWeights { w1: f64, w2: f64 },

    #[error("p = {p} is excluded from P2: |h2(p)| = {h2:e} is within tolerance")]
    ExcludedPoint { p: f64, h2: f64 },

    #[error("degenerate output distribution in {term}: Pr[Y=1] = {prob}")]
    DegenerateOutput { term: &'static str, prob: f64 },

    #[error("non-finite value in {term}")]
    NonFinite { term: &'static str },

    #[error("channel is not of 3-parameter type (a = {a}, b = {b})")]
    NotThreeParam { a: f64, b: f64 },

    #[error("degenerate channel: {0}")]
    DegenerateChannel(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that reflect a channel or argument outside the
    /// solvable domain, as opposed to malformed input text.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
