//! Brute-force reference solutions by RK4 on the even/odd system.
//!
//! Writing `x = x_e + x_o`, the reflection equation splits into
//!
//! ```text
//! x_o' = (a_o - b_o) x_o - (a_e + b_e) x_e + h_e
//! x_e' = (a_e - b_e) x_o - (a_o + b_o) x_e + h_o
//! ```
//!
//! Started at `t = 0` with `x_o(0) = 0`, the solution keeps its parity, so
//! marching on `[0, L]` determines `x` on `[-L, L]`. Nothing in here uses
//! a Green's function.

use crate::error::{Error, Result};
use crate::field::{parity_split, Interval, ParityPair, ScalarField};
use crate::numerics::grid::Grid;
use crate::numerics::hermite::HermiteTable;
use crate::problem::{BvpProblem, IvpProblem};

/// Coefficients of the even/odd system, already split by parity.
#[derive(Debug, Clone)]
pub struct EvenOddSystem {
    a: ParityPair,
    b: ParityPair,
    h: ParityPair,
}

impl EvenOddSystem {
    pub fn new(a: &ScalarField, b: &ScalarField, h: &ScalarField) -> Result<Self> {
        Ok(Self {
            a: parity_split(a)?,
            b: parity_split(b)?,
            h: parity_split(h)?,
        })
    }

    #[inline]
    fn rhs(&self, t: f64, xo: f64, xe: f64, forced: bool) -> (f64, f64) {
        let (ae, ao) = (self.a.even.eval(t), self.a.odd.eval(t));
        let (be, bo) = (self.b.even.eval(t), self.b.odd.eval(t));
        let (he, ho) = if forced {
            (self.h.even.eval(t), self.h.odd.eval(t))
        } else {
            (0.0, 0.0)
        };
        (
            (ao - bo) * xo - (ae + be) * xe + he,
            (ae - be) * xo - (ao + bo) * xe + ho,
        )
    }

    /// Classic RK4 from `t = 0` to `t = end` in `steps` equal steps.
    pub fn march(&self, end: f64, steps: usize, xe0: f64, forced: bool) -> Trajectory {
        let steps = steps.max(1);
        let h = end / steps as f64;
        let mut xo = Vec::with_capacity(steps + 1);
        let mut xe = Vec::with_capacity(steps + 1);
        let mut dxo = Vec::with_capacity(steps + 1);
        let mut dxe = Vec::with_capacity(steps + 1);
        let (mut o, mut e) = (0.0, xe0);
        for i in 0..=steps {
            let t = i as f64 * h;
            let (k1o, k1e) = self.rhs(t, o, e, forced);
            xo.push(o);
            xe.push(e);
            dxo.push(k1o);
            dxe.push(k1e);
            if i == steps {
                break;
            }
            let (k2o, k2e) = self.rhs(t + 0.5 * h, o + 0.5 * h * k1o, e + 0.5 * h * k1e, forced);
            let (k3o, k3e) = self.rhs(t + 0.5 * h, o + 0.5 * h * k2o, e + 0.5 * h * k2e, forced);
            let (k4o, k4e) = self.rhs(t + h, o + h * k3o, e + h * k3e, forced);
            o += h / 6.0 * (k1o + 2.0 * k2o + 2.0 * k3o + k4o);
            e += h / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
        }
        Trajectory {
            odd: HermiteTable::new(0.0, h, xo, dxo),
            even: HermiteTable::new(0.0, h, xe, dxe),
        }
    }
}

/// Odd and even components tabulated on `[0, L]`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub odd: HermiteTable,
    pub even: HermiteTable,
}

impl Trajectory {
    pub fn end(&self) -> f64 {
        self.odd.domain().hi
    }

    pub fn odd_at_end(&self) -> f64 {
        *self.odd.values().last().unwrap()
    }

    /// `x(t) = x_e(|t|) + sign(t) x_o(|t|)` on `[-L, L]`.
    pub fn into_field(self) -> ScalarField {
        let dom = Interval::symmetric(self.end());
        ScalarField::new(dom, move |t| {
            let s = t.abs();
            let o = self.odd.eval(s);
            self.even.eval(s) + if t < 0.0 { -o } else { o }
        })
    }
}

/// RK4 reference solution of the constant-coefficient IVP on `grid`.
///
/// The step is `grid.step()`. The particular solution with `x(0) = 0` is
/// corrected by a multiple of the homogeneous solution with `x(0) = 1`.
pub fn oracle_ivp(p: &IvpProblem, grid: &Grid) -> Result<ScalarField> {
    let dom = grid.interval();
    if !dom.contains(p.t0) {
        return Err(Error::Domain(format!("t0 = {} outside grid {dom}", p.t0)));
    }
    let a = ScalarField::constant(dom, p.a);
    let b = ScalarField::constant(dom, p.b);
    let h = p.h.with_domain(dom);
    let sys = EvenOddSystem::new(&a, &b, &h)?;
    let steps = grid.center();
    let particular = sys.march(dom.hi, steps, 0.0, true).into_field();
    let homogeneous = sys.march(dom.hi, steps, 1.0, false).into_field();
    let ut0 = homogeneous.eval(p.t0);
    if ut0.abs() < 1e-12 {
        return Err(Error::NotUnique(format!(
            "homogeneous solution vanishes at t0 = {}",
            p.t0
        )));
    }
    let k = (p.c - particular.eval(p.t0)) / ut0;
    Ok(particular.zip_with(&homogeneous, move |x, y| x + k * y))
}

/// Default RK4 step count on `[0, T]` for the shooting oracle.
pub const SHOOTING_STEPS: usize = 4000;

/// Periodic solution by shooting on the free even value `x_e(0)`.
///
/// `x(-T) = x(T)` is `x_o(T) = 0`, which is affine in `x_e(0)`, so a single
/// secant step from two trial values lands on the root.
pub fn oracle_bvp_shooting(p: &BvpProblem) -> Result<ScalarField> {
    oracle_bvp_shooting_with(p, SHOOTING_STEPS)
}

pub fn oracle_bvp_shooting_with(p: &BvpProblem, steps: usize) -> Result<ScalarField> {
    let t_end = p.half_period();
    let sys = EvenOddSystem::new(&p.a, &p.b, &p.h)?;
    let at_zero = sys.march(t_end, steps, 0.0, true);
    let at_one = sys.march(t_end, steps, 1.0, true);
    let f0 = at_zero.odd_at_end();
    let f1 = at_one.odd_at_end();
    let slope = f1 - f0;
    // Size of the free (homogeneous) trajectory, for a scale-aware test.
    let free = sys.march(t_end, steps, 1.0, false);
    let scale = free
        .even
        .values()
        .iter()
        .chain(free.odd.values())
        .fold(1.0f64, |m, v| m.max(v.abs()));
    if slope.abs() <= 1e-9 * scale || f0.signum() == f1.signum() && slope.abs() <= 1e-9 * scale {
        return Err(Error::CannotShoot(format!(
            "x_o(T) does not depend on x_e(0) (slope {slope:.3e}); problem looks resonant"
        )));
    }
    let xi = -f0 / slope;
    Ok(sys.march(t_end, steps, xi, true).into_field())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::symmetric(1.0)
    }

    #[test]
    fn unit_forcing_ivp() {
        let p = IvpProblem::new(1.0, 0.0, 0.0, 0.0, ScalarField::constant(unit(), 1.0)).unwrap();
        let g = Grid::symmetric(1.0, 201).unwrap();
        let u = oracle_ivp(&p, &g).unwrap();
        let exact = 1f64.sin() + 1.0 - 1f64.cos();
        assert!((u.eval(1.0) - exact).abs() < 1e-6);
        assert!((u.eval(1.0) - 1.301169).abs() < 1e-6);
    }

    #[test]
    fn zero_data_zero_solution() {
        let p = IvpProblem::new(2.0, 0.5, 0.3, 0.0, ScalarField::zero(unit())).unwrap();
        let u = oracle_ivp(&p, &Grid::symmetric(1.0, 101).unwrap()).unwrap();
        assert!(u.max_abs(51) == 0.0);
    }

    #[test]
    fn fourth_order_convergence() {
        let h = ScalarField::new(unit(), |t| (2.0 * t).cos() + t);
        let p = IvpProblem::new(1.5, 0.4, 0.0, 0.7, h).unwrap();
        let fine = oracle_ivp(&p, &Grid::symmetric(1.0, 3201).unwrap()).unwrap();
        let err = |n: usize| {
            let u = oracle_ivp(&p, &Grid::symmetric(1.0, n).unwrap()).unwrap();
            [-1.0, 1.0].iter().fold(0.0f64, |m, &t| m.max((u.eval(t) - fine.eval(t)).abs()))
        };
        let ratio = err(41) / err(81);
        assert!((ratio - 16.0).abs() <= 0.3 * 16.0, "ratio {ratio}");
    }

    #[test]
    fn resonant_shooting_rejected() {
        // b_e = -a: x_o' = h_e decouples from x_e(0)
        let p = BvpProblem::constant(1.0, -1.0, ScalarField::new(unit(), |t| t), 1.0).unwrap();
        assert!(matches!(oracle_bvp_shooting(&p), Err(Error::CannotShoot(_))));
    }

    #[test]
    fn shooting_is_periodic() {
        let dom = unit();
        let p = BvpProblem::new(
            ScalarField::new(dom, |t| 1.0 + 0.3 * t.cos()),
            ScalarField::new(dom, |t| 0.2 * t),
            ScalarField::new(dom, |t| t.exp()),
            1.0,
        )
        .unwrap();
        let u = oracle_bvp_shooting(&p).unwrap();
        assert!((u.eval(1.0) - u.eval(-1.0)).abs() < 1e-12);
    }

    #[test]
    fn zero_forcing_shoots_to_zero() {
        let p = BvpProblem::constant(1.0, 0.0, ScalarField::zero(unit()), 1.0).unwrap();
        let u = oracle_bvp_shooting(&p).unwrap();
        assert!(u.max_abs(101) < 1e-14);
    }
}
