//! Periodic problem `x' + a(t) x(-t) + b(t) x = h`, `x(-T) = x(T)`.

pub mod auto;
pub mod constant;
pub mod mixed;
pub mod nonconstant;
pub mod primitives;
pub mod resonant;
pub mod sign;

pub use auto::solve_periodic;
pub use constant::{green_bvp_c3, green_bvp_constant, harmonic_periodic_green, harmonic_periodic_green_dt};
pub use mixed::{
    bound_f, contraction_constant, green_ode_periodic, picard_on_grid, picard_solve, solve_mixed_picard,
    GridIterate, PicardOptions, PicardOutcome,
};
pub use nonconstant::{green_bvp_nonconstant, homogeneous_bvp_solution, solve_bvp, starred_condition};
pub use primitives::Primitives;
pub use resonant::{solve_resonant_c4, solve_resonant_c5, SolutionFamily, SOLVABILITY_TOL};
pub use sign::{
    constant_sign_check, hyperbolic_phasor, sample_extremes, sigma_threshold, Phasor, PhasorBranch, SignCheck,
    SignVerdict,
};
