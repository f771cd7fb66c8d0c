use crate::error::{Error, Result};
use crate::field::{Interval, ScalarField};

/// `x'(t) + a x(-t) + b x(t) = h(t)`, `x(t0) = c`, constant `a`, `b`.
///
/// The solution is produced on the domain of `h`.
#[derive(Debug, Clone)]
pub struct IvpProblem {
    pub a: f64,
    pub b: f64,
    pub t0: f64,
    pub c: f64,
    pub h: ScalarField,
}

impl IvpProblem {
    pub fn new(a: f64, b: f64, t0: f64, c: f64, h: ScalarField) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && t0.is_finite() && c.is_finite()) {
            return Err(Error::Domain("non-finite IVP parameter".into()));
        }
        if !h.domain().contains(t0) {
            return Err(Error::Domain(format!(
                "t0 = {t0} outside the forcing domain {}",
                h.domain()
            )));
        }
        Ok(Self { a, b, t0, c, h })
    }

    pub fn domain(&self) -> Interval {
        self.h.domain()
    }
}

/// `x'(t) + a(t) x(-t) + b(t) x(t) = h(t)` on `[-T, T]`, `x(-T) = x(T)`.
#[derive(Debug, Clone)]
pub struct BvpProblem {
    pub a: ScalarField,
    pub b: ScalarField,
    pub h: ScalarField,
    half_period: f64,
}

impl BvpProblem {
    pub fn new(a: ScalarField, b: ScalarField, h: ScalarField, half_period: f64) -> Result<Self> {
        if !(half_period > 0.0 && half_period.is_finite()) {
            return Err(Error::Domain(format!("half-period must be positive, got {half_period}")));
        }
        let dom = Interval::symmetric(half_period);
        for (name, f) in [("a", &a), ("b", &b), ("h", &h)] {
            let d = f.domain();
            if (d.lo - dom.lo).abs() > 1e-12 * half_period || (d.hi - dom.hi).abs() > 1e-12 * half_period {
                return Err(Error::Domain(format!(
                    "coefficient {name} lives on {d}, expected {dom}"
                )));
            }
        }
        Ok(Self {
            a,
            b,
            h,
            half_period,
        })
    }

    /// Constant coefficients `a`, `b` with forcing `h`.
    pub fn constant(a: f64, b: f64, h: ScalarField, half_period: f64) -> Result<Self> {
        let dom = Interval::symmetric(half_period);
        Self::new(
            ScalarField::constant(dom, a),
            ScalarField::constant(dom, b),
            h.with_domain(dom),
            half_period,
        )
    }

    pub fn half_period(&self) -> f64 {
        self.half_period
    }

    pub fn domain(&self) -> Interval {
        Interval::symmetric(self.half_period)
    }

    /// Same coefficients, different forcing.
    pub fn with_forcing(&self, h: ScalarField) -> Self {
        Self {
            h: h.with_domain(self.domain()),
            ..self.clone()
        }
    }
}
