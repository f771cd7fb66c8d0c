//! Two-argument Green's kernels and the oriented indicator.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::field::{Interval, ScalarField};
use crate::numerics::quad::{integrate_fn, integrate_lenient};

/// Oriented characteristic function `χ_{t1}^{t2}(t)`.
///
/// `1` on `[t1, t2]`, `-1` on `[t2, t1)`, `0` elsewhere.
pub fn oriented_indicator(t1: f64, t2: f64, t: f64) -> i8 {
    if t1 <= t && t <= t2 {
        1
    } else if t2 <= t && t < t1 {
        -1
    } else {
        0
    }
}

type Eval2 = dyn Fn(f64, f64) -> f64 + Send + Sync;
type Cuts = dyn Fn(f64) -> Vec<f64> + Send + Sync;

/// Rows of the kernel are integrated over this range of `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// `s ∈ [-|t|, |t|]` (initial value kernels).
    Cone,
    /// `s ∈ [-T, T]` (periodic kernels).
    Square,
}

/// A piecewise-smooth kernel `G(t, s)` on `[-T, T]²`.
///
/// `jump` is the expected diagonal discontinuity `G(t, t⁻) - G(t, t⁺)`.
/// `breakpoints(t)` lists the `s`-values where row `t` may be
/// discontinuous; quadrature never straddles them.
#[derive(Clone)]
pub struct GreenKernel {
    eval: Arc<Eval2>,
    half_width: f64,
    jump: f64,
    support: Support,
    regions: Vec<String>,
    breakpoints: Arc<Cuts>,
}

impl fmt::Debug for GreenKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GreenKernel")
            .field("half_width", &self.half_width)
            .field("jump", &self.jump)
            .field("support", &self.support)
            .field("regions", &self.regions)
            .finish_non_exhaustive()
    }
}

impl GreenKernel {
    pub fn new<F>(half_width: f64, jump: f64, support: Support, eval: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            half_width,
            jump,
            support,
            regions: Vec::new(),
            breakpoints: Arc::new(|t: f64| vec![-t.abs(), 0.0, t.abs()]),
        }
    }

    pub fn with_regions<I, S>(mut self, regions: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.regions = regions.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_breakpoints<F>(mut self, f: F) -> Self
    where
        F: Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    {
        self.breakpoints = Arc::new(f);
        self
    }

    #[inline]
    pub fn eval(&self, t: f64, s: f64) -> f64 {
        (self.eval)(t, s)
    }

    /// Half-width `T` of the square domain (infinite for IVP kernels).
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn domain(&self) -> Interval {
        Interval::symmetric(self.half_width)
    }

    pub fn jump(&self) -> f64 {
        self.jump
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// Human-readable region list.
    pub fn regions(&self) -> &[String] {
        &self.regions
    }

    pub fn breakpoints(&self, t: f64) -> Vec<f64> {
        let mut b = (self.breakpoints)(t);
        b.push(t);
        b
    }

    /// Range of `s` integrated for row `t`.
    pub fn row_range(&self, t: f64) -> (f64, f64) {
        match self.support {
            Support::Cone => (-t.abs(), t.abs()),
            Support::Square => (-self.half_width, self.half_width),
        }
    }

    /// `G(t, t - eps) - G(t, t + eps)`.
    pub fn measured_jump(&self, t: f64, eps: f64) -> f64 {
        self.eval(t, t - eps) - self.eval(t, t + eps)
    }

    /// `∫ G(t, s) h(s) ds` over the row range.
    pub fn apply(&self, h: &ScalarField, t: f64, rtol: f64) -> Result<f64> {
        let (lo, hi) = self.row_range(t);
        integrate_fn(|s| self.eval(t, s) * h.eval(s), lo, hi, &self.breakpoints(t), rtol)
    }

    /// `t ↦ ∫ G(t, s) h(s) ds` as a field on the domain of `h`.
    ///
    /// Quadrature failures inside the closure are not reported; call
    /// [`GreenKernel::apply`] at a few points first when that matters.
    pub fn integrate_against(&self, h: &ScalarField, rtol: f64) -> ScalarField {
        let k = self.clone();
        let hh = h.clone();
        ScalarField::new(h.domain(), move |t| {
            let (lo, hi) = k.row_range(t);
            integrate_lenient(|s| k.eval(t, s) * hh.eval(s), lo, hi, &k.breakpoints(t), rtol)
        })
    }

    /// Values on the tensor grid `ts × ss`, row-major by `t`.
    pub fn sample(&self, ts: &[f64], ss: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(ts.len() * ss.len());
        for &t in ts {
            for &s in ss {
                out.push(self.eval(t, s));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_cases() {
        assert_eq!(oriented_indicator(0.0, 2.0, 1.0), 1);
        assert_eq!(oriented_indicator(2.0, 0.0, 1.0), -1);
        assert_eq!(oriented_indicator(0.0, 2.0, 3.0), 0);
    }

    #[test]
    fn indicator_boundary_convention() {
        assert_eq!(oriented_indicator(0.0, 2.0, 0.0), 1);
        assert_eq!(oriented_indicator(0.0, 2.0, 2.0), 1);
        assert_eq!(oriented_indicator(2.0, 0.0, 0.0), -1);
        assert_eq!(oriented_indicator(2.0, 0.0, 2.0), 0);
        assert_eq!(oriented_indicator(1.0, 1.0, 1.0), 1);
    }

    proptest::proptest! {
        #[test]
        fn indicator_antisymmetric(t1 in -5.0f64..5.0, t2 in -5.0f64..5.0, t in -5.0f64..5.0) {
            proptest::prop_assume!(t != t1 && t != t2);
            proptest::prop_assert_eq!(oriented_indicator(t1, t2, t), -oriented_indicator(t2, t1, t));
        }

        #[test]
        fn indicator_integrates_oriented(t1 in -2.0f64..2.0, t2 in -2.0f64..2.0) {
            // ∫ χ_{t1}^{t2} = t2 - t1
            let n = 4000;
            let h = 8.0 / n as f64;
            let total: f64 = (0..n)
                .map(|i| -4.0 + (i as f64 + 0.5) * h)
                .map(|t| oriented_indicator(t1, t2, t) as f64 * h)
                .sum();
            proptest::prop_assert!((total - (t2 - t1)).abs() <= 2.0 * h);
        }
    }

    #[test]
    fn apply_constant_kernel() {
        let k = GreenKernel::new(1.0, 0.0, Support::Square, |_, _| 0.5);
        let h = ScalarField::constant(Interval::symmetric(1.0), 1.0);
        assert!((k.apply(&h, 0.3, 1e-12).unwrap() - 1.0).abs() < 1e-14);
    }
}
