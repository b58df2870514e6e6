use thiserror::Error;

use crate::halfint::HalfInt;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inadmissible representation ({reason}); offending m = {}", fmt_weights(.offending))]
    Inadmissible { reason: String, offending: Vec<HalfInt> },

    #[error("parameter out of bound: {0}")]
    OutOfBound(String),

    #[error("deformation polynomial is not bijective on [0, {upper}]: phi'({witness}) = {derivative} <= 0")]
    NotBijective { witness: f64, derivative: f64, upper: f64 },

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn fmt_weights(ms: &[HalfInt]) -> String {
    let parts: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
