//! Adaptive Simpson quadrature with caller-supplied breakpoints.
//!
//! The interval is cut at every breakpoint and each panel is integrated
//! separately, so a panel never straddles a known discontinuity of the
//! integrand. Inside a panel the classic recursive scheme with Richardson
//! correction is used.

use crate::error::{Error, Result};
use crate::field::ScalarField;

/// Maximum recursion depth before a panel is declared non-convergent.
pub const MAX_DEPTH: u32 = 40;

/// Integrand evaluations allowed per panel; past it refinement stops and the
/// panel counts as non-convergent. Guards against rounding noise that no
/// bisection can resolve.
pub const MAX_EVALS: usize = 1 << 16;

/// Default relative tolerance for kernel integrals.
pub const DEFAULT_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
struct Node {
    x: f64,
    fx: f64,
}

struct Simpson<'a, F> {
    f: &'a F,
    failed: Option<(f64, f64)>,
    evals: usize,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    fn rule(a: Node, m: Node, b: Node) -> f64 {
        (b.x - a.x) / 6.0 * (a.fx + 4.0 * m.fx + b.fx)
    }

    fn node(&mut self, x: f64) -> Node {
        self.evals += 1;
        Node { x, fx: (self.f)(x) }
    }

    fn recurse(&mut self, a: Node, m: Node, b: Node, whole: f64, eps: f64, depth: u32) -> f64 {
        let lm = self.node(0.5 * (a.x + m.x));
        let rm = self.node(0.5 * (m.x + b.x));
        let left = Self::rule(a, lm, m);
        let right = Self::rule(m, rm, b);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * eps || !delta.is_finite() {
            return left + right + delta / 15.0;
        }
        if depth >= MAX_DEPTH || self.evals >= MAX_EVALS || (b.x - a.x) <= 4.0 * f64::EPSILON * a.x.abs().max(b.x.abs()) {
            if self.failed.is_none() {
                self.failed = Some((a.x, b.x));
            }
            return left + right + delta / 15.0;
        }
        self.recurse(a, lm, m, left, 0.5 * eps, depth + 1)
            + self.recurse(m, rm, b, right, 0.5 * eps, depth + 1)
    }

    /// Scale of the panel: composite Simpson estimate of `∫|f|` on 16 cells.
    fn abs_scale(&self, a: f64, b: f64) -> f64 {
        const CELLS: usize = 16;
        let h = (b - a) / CELLS as f64;
        let mut acc = 0.0;
        for i in 0..CELLS {
            let x0 = if i == 0 { a.next_up() } else { a + i as f64 * h };
            let x1 = if i + 1 == CELLS { b.next_down() } else { a + (i + 1) as f64 * h };
            let xm = 0.5 * (x0 + x1);
            acc += (x1 - x0) / 6.0
                * ((self.f)(x0).abs() + 4.0 * (self.f)(xm).abs() + (self.f)(x1).abs());
        }
        acc
    }

    fn panel(&mut self, lo: f64, hi: f64, rtol: f64, atol: f64) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        self.evals = 0;
        // Endpoints are sampled just inside the panel so that a breakpoint
        // value belonging to the neighbouring branch is never seen.
        let a = Node { x: lo, fx: (self.f)(lo.next_up()) };
        let b = Node { x: hi, fx: (self.f)(hi.next_down()) };
        let m = self.node(0.5 * (lo + hi));
        let whole = Self::rule(a, m, b);
        let eps = (rtol * self.abs_scale(lo, hi)).max(atol);
        self.recurse(a, m, b, whole, eps, 0)
    }
}

fn panel_edges(t1: f64, t2: f64, breakpoints: &[f64]) -> Vec<f64> {
    let mut edges = Vec::with_capacity(breakpoints.len() + 2);
    edges.push(t1);
    let mut inner: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > t1 && x < t2)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    edges.extend(inner);
    edges.push(t2);
    edges
}

/// Integrates `f` over `[t1, t2]`, splitting at `breakpoints`.
///
/// Breakpoints outside the open interval are ignored. Each panel must meet
/// the relative tolerance `rtol` (relative to `∫|f|` on the panel) within
/// [`MAX_DEPTH`] bisections.
pub fn integrate_fn<F>(f: F, t1: f64, t2: f64, breakpoints: &[f64], rtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (value, failed) = integrate_inner(&f, t1, t2, breakpoints, rtol, 0.0);
    match failed {
        Some((lo, hi)) => Err(Error::Quadrature {
            lo,
            hi,
            depth: MAX_DEPTH,
        }),
        None => Ok(value),
    }
}

/// Like [`integrate_fn`] but returns the best estimate even when a panel did
/// not converge. Used inside solution closures, which cannot report errors.
pub fn integrate_lenient<F>(f: F, t1: f64, t2: f64, breakpoints: &[f64], rtol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    integrate_inner(&f, t1, t2, breakpoints, rtol, 0.0).0
}

/// Like [`integrate_lenient`] with an absolute floor `atol` on each panel's
/// error target, for pieces of a larger integral.
pub fn integrate_piece<F>(f: F, t1: f64, t2: f64, rtol: f64, atol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    integrate_inner(&f, t1, t2, &[], rtol, atol).0
}

fn integrate_inner<F>(
    f: &F,
    t1: f64,
    t2: f64,
    breakpoints: &[f64],
    rtol: f64,
    atol: f64,
) -> (f64, Option<(f64, f64)>)
where
    F: Fn(f64) -> f64,
{
    if t1 == t2 {
        return (0.0, None);
    }
    let (lo, hi, sign) = if t1 < t2 { (t1, t2, 1.0) } else { (t2, t1, -1.0) };
    let mut s = Simpson { f, failed: None, evals: 0 };
    let edges = panel_edges(lo, hi, breakpoints);
    let total: f64 = edges.windows(2).map(|w| s.panel(w[0], w[1], rtol, atol)).sum();
    (sign * total, s.failed)
}

/// Integrates a field over `[t1, t2]` (see [`integrate_fn`]).
pub fn integrate(f: &ScalarField, t1: f64, t2: f64, breakpoints: &[f64], rtol: f64) -> Result<f64> {
    if t1 > t2 {
        return Err(Error::Domain(format!("integration bounds reversed: {t1} > {t2}")));
    }
    integrate_fn(|t| f.eval(t), t1, t2, breakpoints, rtol)
}

/// `∫|f|^p` over `[t1, t2]`, raised to `1/p`; `p = ∞` gives the sup on a grid.
pub fn lp_norm(f: &ScalarField, p: f64, breakpoints: &[f64], rtol: f64) -> f64 {
    let d = f.domain();
    if p.is_infinite() {
        return f.max_abs(4097);
    }
    let v = integrate_lenient(|t| f.eval(t).abs().powf(p), d.lo, d.hi, breakpoints, rtol);
    v.powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_over_half_period() {
        let v = integrate_fn(f64::sin, 0.0, PI, &[], 1e-9).unwrap();
        // closed antiderivative: -cos(π) + cos(0)
        assert!((v - 2.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(integrate_fn(|t| t.exp(), 0.0, 0.0, &[], 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn sign_with_breakpoint() {
        let v = integrate_fn(|t: f64| t.signum(), -1.0, 1.0, &[0.0], 1e-9).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn jump_without_breakpoint_fails() {
        let r = integrate_fn(|t: f64| if t < 0.3 { 0.0 } else { 1.0 }, 0.0, 1.0, &[], 1e-12);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
        let ok = integrate_fn(|t: f64| if t < 0.3 { 0.0 } else { 1.0 }, 0.0, 1.0, &[0.3], 1e-12);
        assert!((ok.unwrap() - 0.7).abs() < 1e-14);
    }

    #[test]
    fn noise_is_bounded_by_budget() {
        // pure rounding noise: never converges, must still return promptly
        let f = |t: f64| if (t * 1e12) as i64 % 3 == 0 { 1.0 } else { -0.5 };
        let r = integrate_fn(f, 0.0, 1.0, &[], 1e-12);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn cubics_are_exact() {
        let v = integrate_fn(|t| 1.0 - 2.0 * t + 3.0 * t * t - 4.0 * t * t * t, -0.5, 2.0, &[], 1e-3)
            .unwrap();
        let anti = |t: f64| t - t * t + t * t * t - t.powi(4);
        assert!((v - (anti(2.0) - anti(-0.5))).abs() < 1e-13);
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let a = integrate_fn(f64::cos, 0.0, 1.0, &[], 1e-10).unwrap();
        let b = integrate_fn(f64::cos, 1.0, 0.0, &[], 1e-10).unwrap();
        assert_eq!(a, -b);
    }
}
