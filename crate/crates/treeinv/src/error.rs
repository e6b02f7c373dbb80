use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} children, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("size limit exceeded: {what} = {value} is above the configured bound {bound}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("compositional inverse is not integral: linear coefficient is {0}, must be 1 or -1")]
    NonUnitLinear(String),

    #[error("rational form is not expandable: denominator constant term is {0}, must be 1 or -1")]
    NonUnitDenominator(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("network error (retriable): {0}")]
    Network(String),

    #[error("malformed response: {reason}; raw payload: {raw}")]
    MalformedResponse { reason: String, raw: String },

    #[error("unknown example key: {0}")]
    UnknownExample(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
