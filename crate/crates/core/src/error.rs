use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("column {column} of A is zero, so the solution set has the recession direction e_{column}")]
    NoncompactColumn { column: usize },

    #[error("the recession cone {{x >= 0 : Ax = 0}} is nontrivial; the polytope is not compact")]
    NoncompactInstance,

    #[error("negative entries require the general (lifted) pipeline")]
    NegativeEntries,

    #[error("x is not a nonnegative solution of Ax = b")]
    NotAWitness,

    #[error("the real relaxation {{x >= 0 : Ax = b}} is empty")]
    EmptyRelaxation { multipliers: Vec<Rational> },

    #[error("linear program too large: {0}")]
    TooLarge(String),

    #[error("flow walk stuck at monomial {0:?}; certificate does not satisfy conservation")]
    Stuck(Vec<u32>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
