use crate::classify::CaseTag;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::ivp::green::green_ivp;
use crate::ivp::homogeneous::{homogeneous_pair, uniqueness_check};
use crate::numerics::hermite::primitive;
use crate::problem::IvpProblem;

/// Relative tolerance of the row integrals inside solution closures.
///
/// Kept well below the residual tolerance: solutions are differentiated
/// numerically, which amplifies quadrature noise by `1 / fd_step`.
pub const SOLVE_RTOL: f64 = 1e-12;

/// Cells of the primitive tables used by the alternative formulas.
const PRIMITIVE_CELLS: usize = 4096;

fn require_symmetric(p: &IvpProblem) -> Result<()> {
    if p.domain().is_symmetric() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "forcing must live on a symmetric interval, got {}",
            p.domain()
        )))
    }
}

/// `u = ∫ G(t, s) h(s) ds + (c - u₀(t₀)) / ũ(t₀) · ũ`.
pub fn solve_ivp(p: &IvpProblem) -> Result<ScalarField> {
    require_symmetric(p)?;
    if !uniqueness_check(p.a, p.b, p.t0)? {
        return Err(Error::NotUnique(format!(
            "ũ vanishes at t0 = {}: the problem has no unique solution",
            p.t0
        )));
    }
    let pair = homogeneous_pair(p.a, p.b)?;
    let g = green_ivp(p.a, p.b)?;
    let u0_t0 = g.apply(&p.h, p.t0, SOLVE_RTOL)?;
    let k = (p.c - u0_t0) / pair.u(p.t0);
    let u0 = g.integrate_against(&p.h, SOLVE_RTOL);
    Ok(u0.zip_with(&pair.u_tilde(p.domain()), move |x, y| x + k * y))
}

/// Closed-form solution for `a = b` by iterated primitives of `h`.
///
/// With `H = ∫_{t0}^t h` and `𝓗 = ∫_{t0}^t H`,
/// `u = H - 2a 𝓗_o + (2at - 1)/(2at₀ - 1) (c + 2a 𝓗_o(t₀))`.
pub fn alt_solve_c31(p: &IvpProblem) -> Result<ScalarField> {
    require_symmetric(p)?;
    let tag = crate::classify::classify_ivp(p.a, p.b)?;
    if tag != CaseTag::C3_1 {
        return Err(Error::WrongCase {
            expected: "C3.1 (a = b)".into(),
            got: tag.to_string(),
        });
    }
    let a = p.a;
    let denom = 2.0 * a * p.t0 - 1.0;
    if denom.abs() <= 1e-12 {
        return Err(Error::Degenerate(format!("2 a t0 = 1 (a = {a}, t0 = {})", p.t0)));
    }
    let big_h = primitive(&p.h, p.t0, PRIMITIVE_CELLS, SOLVE_RTOL);
    let big_hh = primitive(&big_h, p.t0, PRIMITIVE_CELLS, SOLVE_RTOL);
    let odd = move |t: f64| 0.5 * (big_hh.eval(t) - big_hh.eval(-t));
    let shift = p.c + 2.0 * a * odd(p.t0);
    Ok(ScalarField::new(p.domain(), move |t| {
        big_h.eval(t) - 2.0 * a * odd(t) + (2.0 * a * t - 1.0) / denom * shift
    }))
}

/// Closed-form solution for `a = -b`:
/// `u = H - H(t₀) - 2b (𝓗_e(t) - 𝓗_e(t₀)) + c` with primitives from 0.
pub fn alt_solve_c32(p: &IvpProblem) -> Result<ScalarField> {
    require_symmetric(p)?;
    let tag = crate::classify::classify_ivp(p.a, p.b)?;
    if tag != CaseTag::C3_2 {
        return Err(Error::WrongCase {
            expected: "C3.2 (a = -b)".into(),
            got: tag.to_string(),
        });
    }
    let b = p.b;
    let big_h = primitive(&p.h, 0.0, PRIMITIVE_CELLS, SOLVE_RTOL);
    let big_hh = primitive(&big_h, 0.0, PRIMITIVE_CELLS, SOLVE_RTOL);
    let even = move |t: f64| 0.5 * (big_hh.eval(t) + big_hh.eval(-t));
    let (h0, e0, c) = (big_h.eval(p.t0), even(p.t0), p.c);
    Ok(ScalarField::new(p.domain(), move |t| {
        big_h.eval(t) - h0 - 2.0 * b * (even(t) - e0) + c
    }))
}
