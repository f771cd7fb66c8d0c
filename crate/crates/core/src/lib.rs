//! Solvers for first-order linear differential equations with a reflected
//! argument,
//!
//! ```text
//! x'(t) + a(t) x(-t) + b(t) x(t) = h(t),
//! ```
//!
//! under an initial condition (constant `a`, `b`) or the periodic condition
//! `x(-T) = x(T)` (variable `a`, `b`), together with the change of variables
//! that reduces a general involution to the reflection `t ↦ -t`.

pub mod bvp;
pub mod classify;
pub mod error;
pub mod expr;
pub mod field;
pub mod involution;
pub mod ivp;
pub mod kernel;
pub mod numerics;
pub mod problem;

pub use classify::{classify_bvp, classify_ivp, CaseTag};
pub use error::{Error, Result};
pub use expr::Expr;
pub use field::{parity_split, Interval, ParityPair, ScalarField};
pub use involution::{
    change_involution, correspondence_map, transport_solution, verify_involution, Correspondence, DiffMap,
    GeneralProblem, Involution, InvolutionCheck,
};
pub use kernel::{oriented_indicator, GreenKernel, Support};
pub use numerics::Grid;
pub use problem::{BvpProblem, IvpProblem};
