//! Real-valued functions of one variable on a closed interval.
//!
//! A [`ScalarField`] is an immutable, cheaply clonable wrapper around a
//! closure. Coefficients, forcings and solutions all live in this type.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::numerics::hermite::HermiteTable;

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Domain(format!("ill-formed interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    /// `[-half, half]`.
    pub fn symmetric(half: f64) -> Self {
        let half = half.abs();
        Self { lo: -half, hi: half }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo && t <= self.hi
    }

    /// Membership with a relative slack of `rel` times the interval length.
    pub fn contains_approx(&self, t: f64, rel: f64) -> bool {
        let slack = rel * self.len().max(1.0);
        t >= self.lo - slack && t <= self.hi + slack
    }

    pub fn is_symmetric(&self) -> bool {
        (self.lo + self.hi).abs() <= 1e-12 * self.hi.abs().max(1.0)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.len()
    }

    /// `n` equispaced points including both endpoints.
    pub fn linspace(&self, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![0.5 * (self.lo + self.hi)],
            _ => {
                let m = (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        let w = i as f64 / m;
                        (1.0 - w) * self.lo + w * self.hi
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

type Eval = dyn Fn(f64) -> f64 + Send + Sync;

/// A real function of one variable on a closed interval.
///
/// `integrable` records the caller's assertion that the field is in L¹; it
/// is never checked.
#[derive(Clone)]
pub struct ScalarField {
    f: Arc<Eval>,
    domain: Interval,
    integrable: bool,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("domain", &self.domain)
            .field("integrable", &self.integrable)
            .finish_non_exhaustive()
    }
}

impl ScalarField {
    pub fn new<F>(domain: Interval, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            domain,
            integrable: true,
        }
    }

    pub fn constant(domain: Interval, c: f64) -> Self {
        Self::new(domain, move |_| c)
    }

    pub fn zero(domain: Interval) -> Self {
        Self::constant(domain, 0.0)
    }

    /// Builds a field from a parsed expression in the variable `t`.
    ///
    /// The expression is evaluated on a 1025-point grid first; any domain
    /// violation there is reported instead of producing NaN later.
    pub fn from_expr(domain: Interval, expr: Expr) -> Result<Self> {
        for t in domain.linspace(1025) {
            expr.eval(t)?;
        }
        Ok(Self::new(domain, move |t| expr.eval(t).unwrap_or(f64::NAN)))
    }

    pub fn parse(domain: Interval, src: &str) -> Result<Self> {
        Self::from_expr(domain, Expr::parse(src)?)
    }

    pub fn from_table(table: HermiteTable) -> Self {
        let domain = table.domain();
        Self::new(domain, move |t| table.eval(t))
    }

    pub fn with_integrable(mut self, integrable: bool) -> Self {
        self.integrable = integrable;
        self
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn is_integrable(&self) -> bool {
        self.integrable
    }

    pub fn with_domain(&self, domain: Interval) -> Self {
        Self {
            f: Arc::clone(&self.f),
            domain,
            integrable: self.integrable,
        }
    }

    pub fn sample(&self, n: usize) -> Vec<(f64, f64)> {
        self.domain
            .linspace(n)
            .into_iter()
            .map(|t| (t, self.eval(t)))
            .collect()
    }

    /// Largest `|f|` on an `n`-point grid.
    pub fn max_abs(&self, n: usize) -> f64 {
        self.sample(n)
            .into_iter()
            .fold(0.0, |m, (_, v)| m.max(v.abs()))
    }

    pub fn map<F>(&self, g: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let f = Arc::clone(&self.f);
        Self::new(self.domain, move |t| g(f(t)))
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(move |v| c * v)
    }

    /// Pointwise binary combination; the domain of `self` is kept.
    pub fn zip_with<F>(&self, other: &ScalarField, g: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        let f1 = Arc::clone(&self.f);
        let f2 = Arc::clone(&other.f);
        Self::new(self.domain, move |t| g(f1(t), f2(t)))
    }

    pub fn add(&self, other: &ScalarField) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &ScalarField) -> Self {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn mul(&self, other: &ScalarField) -> Self {
        self.zip_with(other, |x, y| x * y)
    }

    /// `t ↦ self(inner(t))` on the domain of `inner`.
    pub fn compose(&self, inner: &ScalarField) -> Self {
        let f = Arc::clone(&self.f);
        let g = Arc::clone(&inner.f);
        Self::new(inner.domain, move |t| f(g(t)))
    }

    /// `t ↦ self(-t)`.
    pub fn reflect(&self) -> Self {
        let f = Arc::clone(&self.f);
        Self::new(self.domain, move |t| f(-t))
    }
}

/// Even and odd parts of a field on a symmetric interval.
#[derive(Debug, Clone)]
pub struct ParityPair {
    pub even: ScalarField,
    pub odd: ScalarField,
}

/// Splits `f` into `(f(t) + f(-t))/2` and `(f(t) - f(-t))/2`.
pub fn parity_split(f: &ScalarField) -> Result<ParityPair> {
    if !f.domain().is_symmetric() {
        return Err(Error::Domain(format!(
            "parity split needs a symmetric interval, got {}",
            f.domain()
        )));
    }
    Ok(ParityPair {
        even: f.zip_with(&f.reflect(), |x, y| 0.5 * (x + y)),
        odd: f.zip_with(&f.reflect(), |x, y| 0.5 * (x - y)),
    })
}

impl ParityPair {
    pub fn recombine(&self) -> ScalarField {
        self.even.add(&self.odd)
    }
}
