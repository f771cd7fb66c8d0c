//! Resonant cases `b_e = -a` (C4') and `a_e = b_e = 0` (C5').
//!
//! Solutions exist only when an integral of `h_e` vanishes, and then form
//! a one-parameter family.

use crate::bvp::primitives::{Primitives, PRIMITIVE_CELLS};
use crate::classify::{classify_bvp, CaseTag, CLASSIFY_TOL};
use crate::error::{Error, Result};
use crate::field::{parity_split, ScalarField};
use crate::ivp::SOLVE_RTOL;
use crate::numerics::hermite::primitive;
use crate::numerics::quad::lp_norm;
use crate::problem::BvpProblem;

/// `u_c = particular + c · homogeneous`.
#[derive(Debug, Clone)]
pub struct SolutionFamily {
    pub particular: ScalarField,
    pub homogeneous: ScalarField,
    pub solvable: bool,
    /// Value of the solvability integral.
    pub obstruction: f64,
}

impl SolutionFamily {
    pub fn member(&self, c: f64) -> ScalarField {
        self.particular.zip_with(&self.homogeneous, move |x, y| x + c * y)
    }
}

/// `|obstruction| ≤ SOLVABILITY_TOL · (1 + ‖h‖₁)` counts as solvable.
pub const SOLVABILITY_TOL: f64 = 1e-9;

fn require(p: &BvpProblem, want: CaseTag) -> Result<()> {
    let tag = classify_bvp(&p.a, &p.b, CLASSIFY_TOL)?;
    if tag == want {
        Ok(())
    } else {
        Err(Error::WrongCase {
            expected: want.to_string(),
            got: tag.to_string(),
        })
    }
}

fn solvable(p: &BvpProblem, obstruction: f64) -> bool {
    let norm = lp_norm(&p.h, 1.0, &[0.0], SOLVE_RTOL);
    obstruction.abs() <= SOLVABILITY_TOL * (1.0 + norm)
}

fn prim(f: &ScalarField) -> ScalarField {
    primitive(f, 0.0, PRIMITIVE_CELLS, SOLVE_RTOL)
}

/// Case C4': solvable iff `∫₀ᵀ e^{B_e} h_e = 0`, and then
///
/// ```text
/// u_c(t) = e^{-B_e(t)} [c + ∫₀ᵗ (e^{B_e(s)} h(s) + 2 a_e(s) ∫₀ˢ e^{B_e} h_e) ds]
/// ```
pub fn solve_resonant_c4(p: &BvpProblem) -> Result<SolutionFamily> {
    require(p, CaseTag::C4p)?;
    let pr = Primitives::of(p);
    let hp = parity_split(&p.h)?;
    let a_e = parity_split(&p.a)?.even;
    let growth = pr.b_e.map(f64::exp);
    let inner = prim(&growth.mul(&hp.even));
    let outer = prim(&growth.mul(&p.h).add(&a_e.mul(&inner).scale(2.0)));
    let obstruction = inner.eval(p.half_period());
    let homogeneous = pr.b_e.map(|x| (-x).exp());
    Ok(SolutionFamily {
        particular: homogeneous.mul(&outer),
        homogeneous,
        solvable: solvable(p, obstruction),
        obstruction,
    })
}

/// Case C5': solvable iff `∫₀ᵀ e^{B-A} h_e = 0`, and then
///
/// ```text
/// u_c(t) = e^{A-B} ∫₀ᵗ e^{B-A} h_e + e^{-A-B} [c + ∫₀ᵗ e^{A+B} h_o]
/// ```
pub fn solve_resonant_c5(p: &BvpProblem) -> Result<SolutionFamily> {
    require(p, CaseTag::C5p)?;
    let pr = Primitives::of(p);
    let hp = parity_split(&p.h)?;
    let diff = pr.B.sub(&pr.A);
    let sum = pr.A.add(&pr.B);
    let j1 = prim(&diff.map(f64::exp).mul(&hp.even));
    let j2 = prim(&sum.map(f64::exp).mul(&hp.odd));
    let obstruction = j1.eval(p.half_period());
    let homogeneous = sum.map(|x| (-x).exp());
    let particular = diff
        .map(|x| (-x).exp())
        .mul(&j1)
        .add(&homogeneous.mul(&j2));
    Ok(SolutionFamily {
        particular,
        homogeneous,
        solvable: solvable(p, obstruction),
        obstruction,
    })
}
