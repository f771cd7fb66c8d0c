use thiserror::Error;

use crate::expr::{EvalError, ParseError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("no unique solution: {0}")]
    NotUnique(String),

    #[error("degenerate problem: {0}")]
    Degenerate(String),

    #[error("resonant problem: {0}")]
    Resonant(String),

    #[error("wrong case: expected {expected}, got {got}")]
    WrongCase { expected: String, got: String },

    #[error("contraction not guaranteed: constant {constant:.6} >= 1")]
    ContractionNotGuaranteed { constant: f64 },

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("quadrature failed on [{lo}, {hi}] after depth {depth}")]
    Quadrature { lo: f64, hi: f64, depth: u32 },

    #[error("cannot shoot: {0}")]
    CannotShoot(String),

    #[error("singular transform: {0}")]
    SingularTransform(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),
}
