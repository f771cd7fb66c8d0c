//! Quadrature, grids, interpolation, residuals and reference solvers.

pub mod grid;
pub mod hermite;
pub mod oracle;
pub mod quad;
pub mod residual;

pub use grid::Grid;
pub use hermite::{primitive, primitive_table, HermiteTable};
pub use oracle::{oracle_bvp_shooting, oracle_ivp, EvenOddSystem};
pub use quad::{integrate, integrate_fn, integrate_lenient, integrate_piece, lp_norm, DEFAULT_RTOL};
pub use residual::{residual_check, ResidualOptions, ResidualReport};
