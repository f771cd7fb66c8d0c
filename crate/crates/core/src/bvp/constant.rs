//! Periodic kernels for constant coefficients.
//!
//! With `G` the periodic Green's function of `x'' + μx = 0`, `μ = a² - b²`,
//! the kernel of `x' + a x(-t) + b x = h`, `x(-T) = x(T)` is
//!
//! ```text
//! Ḡ(t, s) = a G(-t, s) - b G(t, s) + ∂G/∂t (t, s).
//! ```
//!
//! `G(t, s) = g(|t - s|)` depends only on the distance, so on each of the
//! four regions cut out by the diagonals `s = ±t` the kernel is one
//! analytic expression `k_i(t, s)`. Keeping that region structure explicit
//! is what allows composing the kernel with a change of variables.

use crate::error::{Error, Result};
use crate::kernel::{GreenKernel, Support};

/// `sin ωT` below this counts as resonance.
pub const RESONANCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Profile {
    /// `μ = ω² > 0`
    Circular { w: f64, d: f64 },
    /// `μ = -m² < 0`
    Hyperbolic { m: f64, d: f64 },
    /// `a = b` (`μ = 0`), handled by the linear kernel.
    Linear,
}

/// Region-aware evaluator shared by the constant and variable kernels.
///
/// `half` may be negative: the variable-coefficient kernel evaluates the
/// region functions at `(A(t), A(s))` with half-width `A(T)`, whose sign is
/// the sign of `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ReflectionKernel {
    a: f64,
    b: f64,
    half: f64,
    profile: Profile,
}

#[inline]
fn side(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        -1.0
    }
}

impl ReflectionKernel {
    /// Kernel for `a ≠ ±b`; fails on resonance `(a² - b²) T² = (nπ)²`.
    pub(crate) fn oscillator(a: f64, b: f64, half: f64) -> Result<Self> {
        let mu = a * a - b * b;
        if mu.abs() <= 1e-14 * (a * a).max(b * b) {
            return Err(Error::Resonant(format!(
                "a² = b² (a = {a}, b = {b}); use the linear kernel"
            )));
        }
        let profile = if mu > 0.0 {
            let w = mu.sqrt();
            let sn = (w * half).sin();
            if sn.abs() <= RESONANCE_TOL {
                return Err(Error::Resonant(format!(
                    "√(a² - b²)·T = {} is a multiple of π",
                    w * half.abs()
                )));
            }
            Profile::Circular { w, d: 2.0 * w * sn }
        } else {
            let m = (-mu).sqrt();
            let sh = (m * half).sinh();
            if sh.abs() <= RESONANCE_TOL {
                return Err(Error::Resonant("T = 0".into()));
            }
            Profile::Hyperbolic { m, d: -2.0 * m * sh }
        };
        Ok(Self { a, b, half, profile })
    }

    /// The `a = b` kernel; requires `a T ≠ 0`.
    pub(crate) fn linear(a: f64, half: f64) -> Result<Self> {
        if a * half == 0.0 || !(a * half).is_finite() {
            return Err(Error::Resonant(format!("a·T = {} must be nonzero", a * half)));
        }
        Ok(Self {
            a,
            b: a,
            half,
            profile: Profile::Linear,
        })
    }

    /// `g(x)` with `G(t, s) = g(|t - s|)`.
    #[inline]
    fn g(&self, x: f64) -> f64 {
        match self.profile {
            Profile::Circular { w, d } => (w * (x - self.half)).cos() / d,
            Profile::Hyperbolic { m, d } => (m * (x - self.half)).cosh() / d,
            Profile::Linear => unreachable!(),
        }
    }

    #[inline]
    fn dg(&self, x: f64) -> f64 {
        match self.profile {
            Profile::Circular { w, d } => -w * (w * (x - self.half)).sin() / d,
            Profile::Hyperbolic { m, d } => m * (m * (x - self.half)).sinh() / d,
            Profile::Linear => unreachable!(),
        }
    }

    /// Region function selected by `e1 = sign(t - s)`, `e2 = sign(t + s)`,
    /// evaluated at arbitrary `(tau, sig)`.
    #[inline]
    pub(crate) fn region(&self, e1: f64, e2: f64, tau: f64, sig: f64) -> f64 {
        match self.profile {
            Profile::Linear => {
                // unit half-width kernel with a·T, at (τ/T, σ/T)
                let al = self.a * self.half;
                let (x, y) = (tau / self.half, sig / self.half);
                let base = 0.5 * (y - x) - al * x * y + 0.25 / al;
                base + match (e1 > 0.0, e2 > 0.0) {
                    (true, true) => 0.5 + al * y,
                    (false, true) => -0.5 + al * x,
                    (false, false) => -0.5 - al * y,
                    (true, false) => 0.5 - al * x,
                }
            }
            _ => {
                let d = e1 * (tau - sig);
                self.a * self.g(e2 * (tau + sig)) - self.b * self.g(d) + e1 * self.dg(d)
            }
        }
    }

    #[inline]
    pub(crate) fn eval(&self, t: f64, s: f64) -> f64 {
        self.region(side(t - s), side(t + s), t, s)
    }

    pub(crate) fn into_kernel(self) -> GreenKernel {
        let half = self.half.abs();
        GreenKernel::new(half, 1.0, Support::Square, move |t, s| self.eval(t, s)).with_regions([
            "t > |s|: k1",
            "s > |t|: k2",
            "-t > |s|: k3",
            "-s > |t|: k4",
        ])
    }
}

/// Periodic Green's function of `x'' + μ x = 0`, `x(±T)`, `x'(±T)` equal.
///
/// Continuous, with `∂G/∂t(t, t⁻) - ∂G/∂t(t, t⁺) = 1`; the value jump
/// recorded in the kernel is therefore 0.
pub fn harmonic_periodic_green(mu: f64, half_period: f64) -> Result<GreenKernel> {
    if !(half_period > 0.0) {
        return Err(Error::Domain(format!("T must be positive, got {half_period}")));
    }
    if mu == 0.0 {
        return Err(Error::Resonant("μ = 0: constants solve the homogeneous problem".into()));
    }
    let t_half = half_period;
    let kernel = if mu > 0.0 {
        let w = mu.sqrt();
        let sn = (w * t_half).sin();
        if sn.abs() <= RESONANCE_TOL {
            return Err(Error::Resonant(format!("√μ·T = {} is a multiple of π", w * t_half)));
        }
        let d = 2.0 * w * sn;
        GreenKernel::new(t_half, 0.0, Support::Square, move |t, s| {
            (w * ((t - s).abs() - t_half)).cos() / d
        })
    } else {
        let m = (-mu).sqrt();
        let d = 2.0 * m * (m * t_half).sinh();
        GreenKernel::new(t_half, 0.0, Support::Square, move |t, s| {
            -(m * ((t - s).abs() - t_half)).cosh() / d
        })
    };
    Ok(kernel.with_regions(["s <= t", "s > t"]).with_breakpoints(|t| vec![t]))
}

/// `∂G/∂t` of [`harmonic_periodic_green`].
pub fn harmonic_periodic_green_dt(mu: f64, half_period: f64) -> Result<GreenKernel> {
    harmonic_periodic_green(mu, half_period)?;
    let t_half = half_period;
    let kernel = if mu > 0.0 {
        let w = mu.sqrt();
        let d = 2.0 * w * (w * t_half).sin();
        GreenKernel::new(t_half, 1.0, Support::Square, move |t, s| {
            let e = if t > s { 1.0 } else { -1.0 };
            -e * w * (w * ((t - s).abs() - t_half)).sin() / d
        })
    } else {
        let m = (-mu).sqrt();
        let d = 2.0 * m * (m * t_half).sinh();
        GreenKernel::new(t_half, 1.0, Support::Square, move |t, s| {
            let e = if t > s { 1.0 } else { -1.0 };
            -e * m * (m * ((t - s).abs() - t_half)).sinh() / d
        })
    };
    Ok(kernel.with_breakpoints(|t| vec![t]))
}

/// `Ḡ(t, s) = a G(-t, s) - b G(t, s) + ∂G/∂t(t, s)` on `[-T, T]²`.
pub fn green_bvp_constant(a: f64, b: f64, half_period: f64) -> Result<GreenKernel> {
    if !(half_period > 0.0) {
        return Err(Error::Domain(format!("T must be positive, got {half_period}")));
    }
    Ok(ReflectionKernel::oscillator(a, b, half_period)?.into_kernel())
}

/// Kernel for `a = b` constant, where `Ḡ` does not exist.
///
/// On `[-1, 1]`:
///
/// ```text
/// G(t, s) = (s - t)/2 - a s t + 1/(4a) + { ½ + a s    t > |s|
///                                        { -½ + a t   s > |t|
///                                        { -½ - a s   -t > |s|
///                                        { ½ - a t    -s > |t|
/// ```
///
/// and `G_T(t, s) = G_{aT}(t/T, s/T)` in general.
pub fn green_bvp_c3(a: f64, half_period: f64) -> Result<GreenKernel> {
    if a == 0.0 {
        return Err(Error::Domain("a = 0 is excluded".into()));
    }
    if !(half_period > 0.0) {
        return Err(Error::Domain(format!("T must be positive, got {half_period}")));
    }
    Ok(ReflectionKernel::linear(a, half_period)?.into_kernel())
}
