use crate::bvp::mixed::{picard_solve, PicardOptions};
use crate::bvp::nonconstant::solve_bvp;
use crate::classify::{classify_bvp, CaseTag, CLASSIFY_TOL};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::problem::BvpProblem;

/// Unique solution by the route matching the case: the kernel `G₁` for
/// C1'–C3', Picard iteration for mixed coefficients.
///
/// The resonant cases have no unique solution and are reported as such;
/// use the family solvers for them.
pub fn solve_periodic(p: &BvpProblem, picard: &PicardOptions) -> Result<(CaseTag, ScalarField)> {
    let tag = classify_bvp(&p.a, &p.b, CLASSIFY_TOL)?;
    let u = match tag {
        CaseTag::C1p { .. } | CaseTag::C2p { .. } | CaseTag::C3p => solve_bvp(p)?,
        CaseTag::Mixed => picard_solve(p, picard)?.solution,
        CaseTag::C4p | CaseTag::C5p => {
            return Err(Error::Resonant(format!(
                "{tag} is resonant: solutions form a family, if any"
            )))
        }
        other => {
            return Err(Error::WrongCase {
                expected: "a periodic case".into(),
                got: other.to_string(),
            })
        }
    };
    Ok((tag, u))
}
