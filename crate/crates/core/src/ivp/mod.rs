//! Constant-coefficient initial value problem
//! `x' + a x(-t) + b x = h`, `x(t0) = c`.

pub mod green;
pub mod homogeneous;
pub mod sign;
pub mod solve;

pub use green::{green_ivp, green_ivp_assembled};
pub use homogeneous::{homogeneous_pair, uniqueness_check, HomogeneousPair};
pub use sign::{checked_sign_report, eta, sigma_ab, sign_classify_ivp, SignReport, Verdict, Wedge, WedgeReport};
pub use solve::{alt_solve_c31, alt_solve_c32, solve_ivp, SOLVE_RTOL};
