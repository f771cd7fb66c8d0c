use crate::classify::{classify_ivp, CaseTag};
use crate::error::Result;
use crate::field::{Interval, ScalarField};

/// `cos ωt`, `cosh ωt` or `1`, by case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Trig {
    Circular(f64),
    Hyperbolic(f64),
    Linear,
}

impl Trig {
    pub(crate) fn for_case(case: CaseTag, omega: f64) -> Self {
        match case {
            CaseTag::C1 => Trig::Circular(omega),
            CaseTag::C2 => Trig::Hyperbolic(omega),
            _ => Trig::Linear,
        }
    }

    /// Even function: `cos ωx`, `cosh ωx`, `1`.
    #[inline]
    pub(crate) fn c(self, x: f64) -> f64 {
        match self {
            Trig::Circular(w) => (w * x).cos(),
            Trig::Hyperbolic(w) => (w * x).cosh(),
            Trig::Linear => 1.0,
        }
    }

    /// Odd function: `sin(ωx)/ω`, `sinh(ωx)/ω`, `x`.
    #[inline]
    pub(crate) fn s(self, x: f64) -> f64 {
        match self {
            Trig::Circular(w) => (w * x).sin() / w,
            Trig::Hyperbolic(w) => (w * x).sinh() / w,
            Trig::Linear => x,
        }
    }
}

/// The solutions `ũ`, `ṽ` of `u' ± a u(-t) + b u = 0` with value 1 at 0.
///
/// `ũ(t) = C(t) - (a+b) S(t)` and `ṽ(t) = C(t) - (b-a) S(t)`, where
/// `C`, `S` are the case's cosine-like and sine-like functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousPair {
    pub a: f64,
    pub b: f64,
    pub case: CaseTag,
    /// `√|a² - b²|`.
    pub omega: f64,
    trig: Trig,
}

pub fn homogeneous_pair(a: f64, b: f64) -> Result<HomogeneousPair> {
    let case = classify_ivp(a, b)?;
    let omega = (a * a - b * b).abs().sqrt();
    Ok(HomogeneousPair {
        a,
        b,
        case,
        omega,
        trig: Trig::for_case(case, omega),
    })
}

impl HomogeneousPair {
    pub(crate) fn trig(&self) -> Trig {
        self.trig
    }

    #[inline]
    pub fn u(&self, t: f64) -> f64 {
        self.trig.c(t) - (self.a + self.b) * self.trig.s(t)
    }

    #[inline]
    pub fn v(&self, t: f64) -> f64 {
        self.trig.c(t) - (self.b - self.a) * self.trig.s(t)
    }

    pub fn u_tilde(&self, domain: Interval) -> ScalarField {
        let p = *self;
        ScalarField::new(domain, move |t| p.u(t))
    }

    pub fn v_tilde(&self, domain: Interval) -> ScalarField {
        let p = *self;
        ScalarField::new(domain, move |t| p.v(t))
    }

    /// The zero of `ũ` closest to `t`, if `ũ` has any zero.
    pub fn nearest_root(&self, t: f64) -> Option<f64> {
        let s = self.a + self.b;
        let w = self.omega;
        match self.case {
            CaseTag::C1 => {
                // ω cos ωt = s sin ωt
                let base = if s == 0.0 {
                    std::f64::consts::FRAC_PI_2
                } else {
                    (w / s).atan()
                };
                let period = std::f64::consts::PI / w;
                let k = ((t - base / w) / period).round();
                Some(base / w + k * period)
            }
            CaseTag::C2 => {
                let r = w / s;
                (r.abs() < 1.0).then(|| r.atanh() / w)
            }
            CaseTag::C3_1 => Some(1.0 / (2.0 * self.a)),
            _ => None,
        }
    }
}

/// Absolute tolerance for `t0` matching a zero of `ũ`.
pub const ROOT_TOL: f64 = 1e-12;

/// `false` exactly when `ũ(t0) = 0`, i.e. the initial value problem is not
/// uniquely solvable.
pub fn uniqueness_check(a: f64, b: f64, t0: f64) -> Result<bool> {
    let pair = homogeneous_pair(a, b)?;
    Ok(match pair.nearest_root(t0) {
        Some(r) => (t0 - r).abs() > ROOT_TOL,
        None => true,
    })
}
