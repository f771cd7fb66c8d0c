//! Reduction of a general involution to the reflection `t ↦ -t`.
//!
//! For involutions `φ` on `[τ₁, τ₂]` and `ψ` on `[σ₁, σ₂]` with fixed points
//! `t₀`, `s₀`, any increasing bijection `g: [σ₁, s₀] → [τ₁, t₀]` extends to
//!
//! ```text
//! f(s) = g(s)           s ≤ s₀
//!      = φ(g(ψ(s)))     s > s₀
//! ```
//!
//! with `f ∘ ψ = φ ∘ f`. Substituting `x = y ∘ f⁻¹` moves a problem posed
//! with `φ` to one posed with `ψ`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Interval, ScalarField};
use crate::problem::BvpProblem;

/// Tolerance of `φ(φ(t)) = t`.
pub const INVOLUTION_TOL: f64 = 1e-9;

/// Default grid for invariant checks.
pub const CHECK_GRID: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvolutionCheck {
    pub is_involution: bool,
    /// `max |φ(φ(t)) - t|` on the grid.
    pub max_defect: f64,
    pub maps_into_domain: bool,
}

/// Checks `φ ∘ φ = id` on `grid_n` points of `domain`.
pub fn verify_involution(phi: &ScalarField, domain: Interval, grid_n: usize) -> Result<InvolutionCheck> {
    let own = phi.domain();
    let slack = 1e-12 * (1.0 + domain.lo.abs().max(domain.hi.abs()));
    if domain.lo < own.lo - slack || domain.hi > own.hi + slack {
        return Err(Error::Domain(format!("φ is defined on {own}, not on all of {domain}")));
    }
    let mut check = InvolutionCheck {
        is_involution: true,
        max_defect: 0.0,
        maps_into_domain: true,
    };
    for t in domain.linspace(grid_n.max(2)) {
        let y = phi.eval(t);
        if !(domain.lo - slack..=domain.hi + slack).contains(&y) {
            check.maps_into_domain = false;
            continue;
        }
        let d = (phi.eval(y) - t).abs();
        check.max_defect = check.max_defect.max(if d.is_nan() { f64::INFINITY } else { d });
    }
    check.is_involution = check.maps_into_domain && check.max_defect <= INVOLUTION_TOL;
    Ok(check)
}

/// A decreasing involution with its derivative and fixed point.
#[derive(Debug, Clone)]
pub struct Involution {
    pub phi: ScalarField,
    pub dphi: ScalarField,
    pub domain: Interval,
    pub fixed_point: f64,
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    // f(lo) ≥ 0 ≥ f(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl Involution {
    /// Validates `φ` and locates its fixed point.
    pub fn new(phi: ScalarField, dphi: ScalarField, domain: Interval) -> Result<Self> {
        let fp = bisect(|t| phi.eval(t) - t, domain.lo, domain.hi);
        Self::with_fixed_point(phi, dphi, domain, fp)
    }

    /// Like [`Involution::new`] with a caller-supplied fixed point.
    pub fn with_fixed_point(phi: ScalarField, dphi: ScalarField, domain: Interval, fixed_point: f64) -> Result<Self> {
        let check = verify_involution(&phi, domain, CHECK_GRID)?;
        if !check.is_involution {
            return Err(Error::Domain(format!(
                "not an involution on {domain}: max |φ(φ(t)) - t| = {:e}",
                check.max_defect
            )));
        }
        let ts = domain.linspace(CHECK_GRID);
        if ts.windows(2).any(|w| phi.eval(w[1]) >= phi.eval(w[0])) {
            return Err(Error::Domain("φ must be decreasing".into()));
        }
        if !domain.contains(fixed_point) || (phi.eval(fixed_point) - fixed_point).abs() > 1e-9 * (1.0 + fixed_point.abs()) {
            return Err(Error::Domain(format!("{fixed_point} is not a fixed point of φ")));
        }
        let slope = dphi.eval(fixed_point);
        if (slope + 1.0).abs() > 1e-6 {
            return Err(Error::Domain(format!("φ'(t₀) = {slope}, expected -1")));
        }
        Ok(Self {
            phi,
            dphi,
            domain,
            fixed_point,
        })
    }

    /// `t ↦ -t` on `[-half, half]`.
    pub fn reflection(half: f64) -> Self {
        let dom = Interval::symmetric(half);
        Self {
            phi: ScalarField::new(dom, |t| -t),
            dphi: ScalarField::constant(dom, -1.0),
            domain: dom,
            fixed_point: 0.0,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.phi.eval(t)
    }

    /// Whether `φ(t) = -t` on a symmetric domain, up to `INVOLUTION_TOL`.
    pub fn is_reflection(&self) -> bool {
        self.domain.is_symmetric()
            && self
                .domain
                .linspace(CHECK_GRID)
                .iter()
                .all(|&t| (self.phi.eval(t) + t).abs() <= INVOLUTION_TOL)
    }
}

/// A differentiable map given with its derivative.
#[derive(Debug, Clone)]
pub struct DiffMap {
    pub value: ScalarField,
    pub deriv: ScalarField,
}

impl DiffMap {
    pub fn new(value: ScalarField, deriv: ScalarField) -> Self {
        Self { value, deriv }
    }

    /// Increasing affine map of `from` onto `to`.
    pub fn affine(from: Interval, to: Interval) -> Self {
        let slope = to.len() / from.len();
        Self {
            value: ScalarField::new(from, move |s| to.lo + (s - from.lo) * slope),
            deriv: ScalarField::constant(from, slope),
        }
    }
}

/// `f` with `f ∘ ψ = φ ∘ f`, its derivative and its inverse.
#[derive(Clone)]
pub struct Correspondence {
    pub f: ScalarField,
    pub df: ScalarField,
    pub inverse: ScalarField,
    pub dinverse: ScalarField,
    /// Involution on the target side (`f` maps into its domain).
    pub phi: Involution,
    /// Involution on the source side.
    pub psi: Involution,
}

impl std::fmt::Debug for Correspondence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Correspondence")
            .field("source", &self.psi.domain)
            .field("target", &self.phi.domain)
            .finish_non_exhaustive()
    }
}

impl Correspondence {
    /// `max |f(ψ(s)) - φ(f(s))|` on `n` points.
    pub fn conjugation_defect(&self, n: usize) -> f64 {
        self.psi
            .domain
            .linspace(n)
            .into_iter()
            .map(|s| (self.f.eval(self.psi.eval(s)) - self.phi.eval(self.f.eval(s))).abs())
            .fold(0.0, f64::max)
    }

    /// `max |f(f⁻¹(t)) - t|` on `n` points.
    pub fn inverse_defect(&self, n: usize) -> f64 {
        self.phi
            .domain
            .linspace(n)
            .into_iter()
            .map(|t| (self.f.eval(self.inverse.eval(t)) - t).abs())
            .fold(0.0, f64::max)
    }

    /// The correspondence in the other direction, `f⁻¹ ∘ φ = ψ ∘ f⁻¹`.
    pub fn inverted(&self) -> Self {
        Self {
            f: self.inverse.clone(),
            df: self.dinverse.clone(),
            inverse: self.f.clone(),
            dinverse: self.df.clone(),
            phi: self.psi.clone(),
            psi: self.phi.clone(),
        }
    }
}

/// Builds `f` from `g` (default: the affine map `[σ₁, s₀] → [τ₁, t₀]`).
///
/// `f'` is assembled by the chain rule from `g'`, `φ'` and `ψ'`; `g⁻¹` is
/// evaluated by bisection.
pub fn correspondence_map(phi: &Involution, psi: &Involution, g: Option<DiffMap>) -> Result<Correspondence> {
    let (t0, s0) = (phi.fixed_point, psi.fixed_point);
    let left = Interval::new(psi.domain.lo, s0)?;
    let target = Interval::new(phi.domain.lo, t0)?;
    let g = g.unwrap_or_else(|| DiffMap::affine(left, target));
    let tol = 1e-9 * (1.0 + target.lo.abs().max(target.hi.abs()));
    if (g.value.eval(left.lo) - target.lo).abs() > tol || (g.value.eval(s0) - t0).abs() > tol {
        return Err(Error::Domain(format!("g must map {left} onto {target}")));
    }
    let nodes = left.linspace(CHECK_GRID);
    if nodes.windows(2).any(|w| g.value.eval(w[1]) <= g.value.eval(w[0])) {
        return Err(Error::Domain("g must be increasing".into()));
    }

    let (gv, gd) = (Arc::new(g.value), Arc::new(g.deriv));
    let (ph, dph, ps, dps) = (
        phi.phi.clone(),
        phi.dphi.clone(),
        psi.phi.clone(),
        psi.dphi.clone(),
    );
    let f = {
        let (gv, ph, ps) = (gv.clone(), ph.clone(), ps.clone());
        ScalarField::new(psi.domain, move |s| {
            if s <= s0 {
                gv.eval(s)
            } else {
                ph.eval(gv.eval(ps.eval(s)))
            }
        })
    };
    let df = {
        let (gv, gd, ps) = (gv.clone(), gd.clone(), ps.clone());
        let dph = dph.clone();
        ScalarField::new(psi.domain, move |s| {
            if s <= s0 {
                gd.eval(s)
            } else {
                let r = ps.eval(s);
                dph.eval(gv.eval(r)) * gd.eval(r) * dps.eval(s)
            }
        })
    };
    let g_inv = {
        let gv = gv.clone();
        move |t: f64| bisect(|s| t - gv.eval(s), left.lo, left.hi)
    };
    let inverse = {
        let (ph, ps, g_inv) = (ph.clone(), ps.clone(), g_inv.clone());
        ScalarField::new(phi.domain, move |t| {
            if t <= t0 {
                g_inv(t)
            } else {
                ps.eval(g_inv(ph.eval(t)))
            }
        })
    };
    let dinverse = {
        let (inv, df) = (inverse.clone(), df.clone());
        ScalarField::new(phi.domain, move |t| 1.0 / df.eval(inv.eval(t)))
    };
    Ok(Correspondence {
        f,
        df,
        inverse,
        dinverse,
        phi: phi.clone(),
        psi: psi.clone(),
    })
}

/// `d x'(t) + c x'(φ(t)) + b x(t) + a x(φ(t)) = h`, `x(τ₁) = x(τ₂)`.
#[derive(Debug, Clone)]
pub struct GeneralProblem {
    pub a: ScalarField,
    pub b: ScalarField,
    pub c: ScalarField,
    pub d: ScalarField,
    pub h: ScalarField,
    pub involution: Involution,
}

impl GeneralProblem {
    /// Rejects a nonzero `c`: the `x'(φ(t))` term is outside the theory.
    pub fn new(a: ScalarField, b: ScalarField, d: ScalarField, h: ScalarField, involution: Involution) -> Result<Self> {
        let dom = involution.domain;
        Ok(Self {
            a: a.with_domain(dom),
            b: b.with_domain(dom),
            c: ScalarField::zero(dom),
            d: d.with_domain(dom),
            h: h.with_domain(dom),
            involution,
        })
    }

    pub fn with_c(mut self, c: ScalarField) -> Result<Self> {
        if c.max_abs(CHECK_GRID) != 0.0 {
            return Err(Error::Unsupported("terms in x'(φ(t)) are not supported".into()));
        }
        self.c = c.with_domain(self.involution.domain);
        Ok(self)
    }

    pub fn domain(&self) -> Interval {
        self.involution.domain
    }

    /// Divides by `d` to get the reflection problem; needs `φ(t) = -t`.
    pub fn to_reflection_bvp(&self) -> Result<BvpProblem> {
        if !self.involution.is_reflection() {
            return Err(Error::Unsupported("the involution is not t ↦ -t; transform first".into()));
        }
        if self.c.max_abs(CHECK_GRID) != 0.0 {
            return Err(Error::Unsupported("terms in x'(φ(t)) are not supported".into()));
        }
        let dom = self.domain();
        if !bounded_away_from_zero(&self.d, dom) {
            return Err(Error::SingularTransform("leading coefficient d vanishes".into()));
        }
        let over_d = |f: &ScalarField| f.zip_with(&self.d, |x, y| x / y);
        BvpProblem::new(over_d(&self.a), over_d(&self.b), over_d(&self.h), dom.half_width())
    }

    /// Max of `|d x' + c x'(φ) + b x + a x(φ) - h| / (1 + |h|)` at interior
    /// grid nodes, derivative by central differences.
    pub fn residual(&self, x: &ScalarField, grid_n: usize, fd_step: f64) -> f64 {
        let dom = self.domain();
        let phi = &self.involution.phi;
        let dx = |t: f64| (x.eval(t + fd_step) - x.eval(t - fd_step)) / (2.0 * fd_step);
        let ts = dom.linspace(grid_n);
        let fp = self.involution.fixed_point;
        ts[1..ts.len() - 1]
            .iter()
            .filter(|&&t| (t - fp).abs() >= 1e-3)
            .filter(|&&t| dom.contains(phi.eval(t) - fd_step) && dom.contains(phi.eval(t) + fd_step))
            .map(|&t| {
                let pt = phi.eval(t);
                let r = self.d.eval(t) * dx(t) + self.c.eval(t) * dx(pt) + self.b.eval(t) * x.eval(t)
                    + self.a.eval(t) * x.eval(pt)
                    - self.h.eval(t);
                r.abs() / (1.0 + self.h.eval(t).abs())
            })
            .fold(0.0, f64::max)
    }
}

/// No zero and no sign change on a fine grid.
fn bounded_away_from_zero(f: &ScalarField, dom: Interval) -> bool {
    let vals: Vec<f64> = dom.linspace(4 * CHECK_GRID).into_iter().map(|t| f.eval(t)).collect();
    vals.iter().all(|v| v.abs() > 1e-12) && (vals.iter().all(|&v| v > 0.0) || vals.iter().all(|&v| v < 0.0))
}

/// Poses `p` for `ψ` through `f`:
///
/// ```text
/// (d∘f / f') y' + (c∘f / f'∘ψ) y'(ψ) + (b∘f) y + (a∘f) y(ψ) = h∘f
/// ```
///
/// on the domain of `ψ`, with `y = x ∘ f`.
pub fn change_involution(p: &GeneralProblem, psi: &Involution, f: &Correspondence) -> Result<GeneralProblem> {
    let dom = psi.domain;
    if !bounded_away_from_zero(&f.df, dom) {
        return Err(Error::SingularTransform("f' vanishes".into()));
    }
    let fmap = f.f.with_domain(dom);
    let comp = |g: &ScalarField| g.compose(&fmap).with_domain(dom);
    let df = f.df.with_domain(dom);
    let df_psi = df.compose(&psi.phi);
    Ok(GeneralProblem {
        a: comp(&p.a),
        b: comp(&p.b),
        c: comp(&p.c).zip_with(&df_psi, |x, y| x / y),
        d: comp(&p.d).zip_with(&df, |x, y| x / y),
        h: comp(&p.h),
        involution: psi.clone(),
    })
}

/// `x = y ∘ f⁻¹`: a solution of the transformed problem carried back.
pub fn transport_solution(y: &ScalarField, f: &Correspondence) -> ScalarField {
    y.compose(&f.inverse).with_domain(f.phi.domain)
}
