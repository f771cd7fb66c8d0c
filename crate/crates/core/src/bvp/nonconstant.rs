//! Kernels for `a` even and `b_e = k a`.
//!
//! Writing `u(t) = e^{-B_e(t)} y(A(t))` turns the problem into
//! `y'(τ) + y(-τ) + k y(τ) = e^{B_e} h / a` on `[-A(T), A(T)]`, whose kernel
//! is the constant-coefficient one with `a = 1`, `b = k`. Hence
//!
//! ```text
//! G₁(t, s) = e^{B_e(s) - B_e(t)} k_i(A(t), A(s))
//! ```
//!
//! with the region `i` chosen by `(t, s)`.

use crate::bvp::constant::{ReflectionKernel, RESONANCE_TOL};
use crate::bvp::primitives::Primitives;
use crate::classify::{classify_bvp, CaseTag, CLASSIFY_TOL};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::ivp::SOLVE_RTOL;
use crate::kernel::{GreenKernel, Support};
use crate::problem::BvpProblem;

/// Solution of the homogeneous equation, one per case:
///
/// ```text
/// C1'  e^{-B_e} [cos(ωA) - (1+k)/ω sin(ωA)]      ω = √(1-k²)
/// C2'  e^{-B_e} [cosh(ωA) - (1+k)/ω sinh(ωA)]    ω = √(k²-1)
/// C3'  e^{-B_e} (1 - 2A)
/// C4'  e^{-B_e}
/// C5'  e^{-A-B}
/// ```
pub fn homogeneous_bvp_solution(tag: CaseTag, a: &ScalarField, b: &ScalarField) -> Result<ScalarField> {
    let pr = Primitives::new(a, b);
    let dom = a.domain();
    let (big_a, b_e) = (pr.A.clone(), pr.b_e.clone());
    let decay = move |t: f64| (-b_e.eval(t)).exp();
    Ok(match tag {
        CaseTag::C1p { k } => {
            let w = (1.0 - k * k).sqrt();
            ScalarField::new(dom, move |t| {
                let x = w * big_a.eval(t);
                decay(t) * (x.cos() - (1.0 + k) / w * x.sin())
            })
        }
        CaseTag::C2p { k } => {
            let w = (k * k - 1.0).sqrt();
            ScalarField::new(dom, move |t| {
                let x = w * big_a.eval(t);
                decay(t) * (x.cosh() - (1.0 + k) / w * x.sinh())
            })
        }
        CaseTag::C3p => ScalarField::new(dom, move |t| decay(t) * (1.0 - 2.0 * big_a.eval(t))),
        CaseTag::C4p => ScalarField::new(dom, decay),
        CaseTag::C5p => {
            let big_b = pr.B;
            ScalarField::new(dom, move |t| (-big_a.eval(t) - big_b.eval(t)).exp())
        }
        CaseTag::Mixed => {
            return Err(Error::Unsupported(
                "no closed-form homogeneous solution when a is not even".into(),
            ))
        }
        other => {
            return Err(Error::WrongCase {
                expected: "a periodic case".into(),
                got: other.to_string(),
            })
        }
    })
}

/// Checks the nonresonance condition of the reduced problem.
///
/// For `|k| < 1`, `(1-k²)A(T)² ≠ (nπ)²` and `cos(√(1-k²) A(T)) ≠ 0`; for
/// `|k| > 1` and `k = 1`, `A(T) ≠ 0`.
pub fn starred_condition(tag: CaseTag, a_of_t: f64) -> Result<()> {
    if a_of_t.abs() <= RESONANCE_TOL {
        return Err(Error::Resonant("A(T) = 0".into()));
    }
    if let CaseTag::C1p { k } = tag {
        let x = (1.0 - k * k).sqrt() * a_of_t;
        if x.sin().abs() <= RESONANCE_TOL {
            return Err(Error::Resonant(format!("√(1-k²)·A(T) = {x} is a multiple of π")));
        }
        if x.cos().abs() <= RESONANCE_TOL {
            return Err(Error::Resonant(format!("cos(√(1-k²)·A(T)) = 0 (argument {x})")));
        }
    }
    Ok(())
}

pub(crate) struct Reduced {
    pub tag: CaseTag,
    pub prims: Primitives,
    pub a_of_t: f64,
    pub inner: ReflectionKernel,
}

pub(crate) fn reduce(p: &BvpProblem) -> Result<Reduced> {
    let tag = classify_bvp(&p.a, &p.b, CLASSIFY_TOL)?;
    let prims = Primitives::of(p);
    let a_of_t = prims.A.eval(p.half_period());
    let inner = match tag {
        CaseTag::C1p { k } | CaseTag::C2p { k } => {
            starred_condition(tag, a_of_t)?;
            ReflectionKernel::oscillator(1.0, k, a_of_t)?
        }
        CaseTag::C3p => {
            starred_condition(tag, a_of_t)?;
            ReflectionKernel::linear(1.0, a_of_t)?
        }
        other => {
            return Err(Error::WrongCase {
                expected: "C1', C2' or C3'".into(),
                got: other.to_string(),
            })
        }
    };
    Ok(Reduced {
        tag,
        prims,
        a_of_t,
        inner,
    })
}

/// `G₁(t, s) = e^{B_e(s) - B_e(t)} Ḡ₂(A(t), A(s))`, regions taken in `(t, s)`.
///
/// The inner kernel uses the signed half-width `A(T)`, so negative `a`
/// and even `a` changing sign are handled by the same formula.
pub fn green_bvp_nonconstant(p: &BvpProblem) -> Result<GreenKernel> {
    let r = reduce(p)?;
    let (big_a, b_e, inner) = (r.prims.A, r.prims.b_e, r.inner);
    let eval = move |t: f64, s: f64| {
        let e1 = if t > s { 1.0 } else { -1.0 };
        let e2 = if t + s > 0.0 { 1.0 } else { -1.0 };
        (b_e.eval(s) - b_e.eval(t)).exp() * inner.region(e1, e2, big_a.eval(t), big_a.eval(s))
    };
    Ok(GreenKernel::new(p.half_period(), 1.0, Support::Square, eval).with_regions([
        "t > |s|: k1(A(t), A(s))",
        "s > |t|: k2(A(t), A(s))",
        "-t > |s|: k3(A(t), A(s))",
        "-s > |t|: k4(A(t), A(s))",
    ]))
}

/// `u(t) = ∫ G₁(t, s) h(s) ds`.
pub fn solve_bvp(p: &BvpProblem) -> Result<ScalarField> {
    let g = green_bvp_nonconstant(p)?;
    // surface quadrature trouble here rather than inside the closure
    for t in [-p.half_period(), 0.0, p.half_period()] {
        g.apply(&p.h, t, SOLVE_RTOL)?;
    }
    Ok(g.integrate_against(&p.h, SOLVE_RTOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvp::constant::green_bvp_constant;
    use crate::field::Interval;
    use crate::numerics::grid::Grid;
    use crate::numerics::oracle::oracle_bvp_shooting;
    use crate::numerics::residual::{residual_check, ResidualOptions};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn problem(a: &str, b: &str, h: &str, t_half: f64) -> BvpProblem {
        let dom = Interval::symmetric(t_half);
        BvpProblem::new(
            ScalarField::parse(dom, a).unwrap(),
            ScalarField::parse(dom, b).unwrap(),
            ScalarField::parse(dom, h).unwrap(),
            t_half,
        )
        .unwrap()
    }

    fn residual(p: &BvpProblem, u: &ScalarField) -> f64 {
        residual_check(
            u,
            &p.a,
            &p.b,
            &p.h,
            &Grid::symmetric(p.half_period(), 101).unwrap(),
            &ResidualOptions::default(),
        )
        .max_rel
    }

    #[test]
    fn homogeneous_examples() {
        let dom = Interval::symmetric(1.0);
        let one = ScalarField::constant(dom, 1.0);
        let u = homogeneous_bvp_solution(CaseTag::C1p { k: 0.0 }, &one, &ScalarField::zero(dom)).unwrap();
        for t in [-0.8, 0.1, 0.9] {
            assert!((u.eval(t) - (t.cos() - t.sin())).abs() < 1e-13);
        }
        let u = homogeneous_bvp_solution(CaseTag::C4p, &one, &ScalarField::constant(dom, -1.0)).unwrap();
        assert!((u.eval(0.4) - 1.0).abs() < 1e-15);
        let sin = ScalarField::new(dom, f64::sin);
        let u = homogeneous_bvp_solution(CaseTag::C5p, &sin, &ScalarField::zero(dom)).unwrap();
        for t in [-0.8, 0.3, 1.0] {
            assert!((u.eval(t) - (t.cos() - 1.0).exp()).abs() < 1e-13);
        }
        assert!(matches!(
            homogeneous_bvp_solution(CaseTag::Mixed, &one, &one),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn homogeneous_solutions_solve_equation() {
        for (a, b) in [
            ("cos(t)", "0.5*cos(t) + sin(t)"),
            ("1 + t^2", "2*(1 + t^2) + t"),
            ("2 + cos(t)", "2 + cos(t) - t^3"),
            ("cosh(t)", "-cosh(t) + sin(3*t)"),
            ("sin(t)", "t"),
            ("-1.5", "0.3*t"),
        ] {
            let p = problem(a, b, "0", 1.0);
            let tag = classify_bvp(&p.a, &p.b, CLASSIFY_TOL).unwrap();
            let u = homogeneous_bvp_solution(tag, &p.a, &p.b).unwrap();
            let r = residual(&p, &u);
            assert!(r < 1e-7 * (1.0 + u.max_abs(101)), "{a} {b} {tag} {r}");
        }
    }

    #[test]
    fn identity_change_of_variables() {
        let p = problem("1", "0", "0", 1.0);
        let g1 = green_bvp_nonconstant(&p).unwrap();
        let g = green_bvp_constant(1.0, 0.0, 1.0).unwrap();
        let nodes = Interval::symmetric(1.0).linspace(21);
        for &t in &nodes {
            for &s in &nodes {
                assert!((g1.eval(t, s) - g.eval(t, s)).abs() < 1e-12, "{t} {s}");
            }
        }
    }

    #[test]
    fn cosine_coefficient_jump_and_residual() {
        let p = problem("cos(t)", "0", "1", FRAC_PI_2);
        let g = green_bvp_nonconstant(&p).unwrap();
        for i in 0..20 {
            let t = -1.5 + 3.0 * i as f64 / 19.0 + 1e-3;
            assert!((g.measured_jump(t, 1e-9) - 1.0).abs() < 1e-6);
        }
        let q = problem("cos(t)", "sin(t)", "1", FRAC_PI_2);
        let u = solve_bvp(&q).unwrap();
        assert!(residual(&q, &u) < 1e-5);
        assert!((u.eval(FRAC_PI_2) - u.eval(-FRAC_PI_2)).abs() < 1e-8);
    }

    #[test]
    fn agrees_with_shooting() {
        let p = problem("cos(t)", "0", "1", FRAC_PI_2);
        let u = solve_bvp(&p).unwrap();
        let v = oracle_bvp_shooting(&p).unwrap();
        for t in [-1.5, -0.7, 0.0, 0.7, 1.5] {
            assert!((u.eval(t) - v.eval(t)).abs() < 1e-5);
        }
    }

    #[test]
    fn constant_route_cross_check() {
        let p = problem("1", "0.3", "exp(t) + t", 1.2);
        let u = solve_bvp(&p).unwrap();
        let v = green_bvp_constant(1.0, 0.3, 1.2).unwrap().integrate_against(&p.h, SOLVE_RTOL);
        for t in Interval::symmetric(1.2).linspace(9) {
            assert!((u.eval(t) - v.eval(t)).abs() < 1e-8);
        }
    }

    #[test]
    fn negative_and_sign_changing_coefficients() {
        for (a, b, h) in [
            ("-cos(t)", "0.4*cos(t) + t", "1 + t"),
            ("-2", "3 + t^3", "cos(t)"),
            ("cos(2*t)", "cos(2*t)", "exp(t)"),
            ("t^2 - 0.2", "-(t^2 - 0.2) * 1.7", "1"),
        ] {
            let p = problem(a, b, h, 1.0);
            let u = solve_bvp(&p).unwrap();
            assert!(residual(&p, &u) < 1e-5, "{a} {b}");
            assert!((u.eval(1.0) - u.eval(-1.0)).abs() < 1e-8, "{a} {b}");
            let v = oracle_bvp_shooting(&p).unwrap();
            for t in [-0.9, -0.2, 0.5, 1.0] {
                assert!((u.eval(t) - v.eval(t)).abs() < 1e-5, "{a} {b} {t}");
            }
        }
    }

    #[test]
    fn zero_forcing() {
        let p = problem("cos(t)", "0", "0", FRAC_PI_2);
        assert_eq!(solve_bvp(&p).unwrap().max_abs(41), 0.0);
    }

    #[test]
    fn starred_conditions() {
        // (1-k²)A(T)² = π²
        let p = problem("1", "0", "1", PI);
        assert!(matches!(green_bvp_nonconstant(&p), Err(Error::Resonant(_))));
        // cos(A(T)) = 0
        let p = problem("1", "0", "1", FRAC_PI_2);
        assert!(matches!(green_bvp_nonconstant(&p), Err(Error::Resonant(_))));
        // odd a: A(T) = 0... and a not even, so the case itself is wrong
        let p = problem("t", "0", "1", 1.0);
        assert!(matches!(green_bvp_nonconstant(&p), Err(Error::WrongCase { .. })));
        // even a with zero mean
        let p = problem("cos(t)", "cos(t)", "1", PI);
        assert!(matches!(green_bvp_nonconstant(&p), Err(Error::Resonant(_))));
        let p = problem("1", "-1", "1", 1.0);
        assert!(matches!(green_bvp_nonconstant(&p), Err(Error::WrongCase { .. })));
    }

    #[test]
    fn c3_reduction() {
        let p = problem("1 + t^2", "1 + t^2 + sin(t)", "cos(3*t)", 1.0);
        assert_eq!(classify_bvp(&p.a, &p.b, CLASSIFY_TOL).unwrap(), CaseTag::C3p);
        let g = green_bvp_nonconstant(&p).unwrap();
        for t in [-0.7, 0.2, 0.9] {
            assert!((g.measured_jump(t, 1e-9) - 1.0).abs() < 1e-6);
        }
        let u = solve_bvp(&p).unwrap();
        assert!(residual(&p, &u) < 1e-5);
        assert!((u.eval(1.0) - u.eval(-1.0)).abs() < 1e-8);
    }
}
