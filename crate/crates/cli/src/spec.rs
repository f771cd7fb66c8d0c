//! JSON problem files.

use std::path::Path;

use involute_core::{
    BvpProblem, DiffMap, Expr, GeneralProblem, Interval, Involution, IvpProblem, ScalarField,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ivp,
    Bvp,
    General,
}

/// A coefficient: one expression in `t`, or two joined at `at`
/// (`below` on `t ≤ at`, `above` on `t > at`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Expr(String),
    Piecewise { below: String, above: String, at: f64 },
}

impl Coef {
    pub fn field(&self, dom: Interval) -> CliResult<ScalarField> {
        match self {
            Coef::Expr(src) => Ok(ScalarField::parse(dom, src)?),
            Coef::Piecewise { below, above, at } => {
                let at = *at;
                if !dom.contains(at) {
                    return Err(CliError::Spec(format!("split point {at} outside {dom}")));
                }
                // each piece is validated on its own side only
                let lo = if at > dom.lo {
                    Some(ScalarField::parse(Interval::new(dom.lo, at)?, below)?)
                } else {
                    None
                };
                let hi = if at < dom.hi {
                    Some(ScalarField::parse(Interval::new(at, dom.hi)?, above)?)
                } else {
                    None
                };
                Ok(ScalarField::new(dom, move |t| match (&lo, &hi) {
                    (Some(l), _) if t <= at => l.eval(t),
                    (_, Some(h)) => h.eval(t),
                    (Some(l), None) => l.eval(t),
                    (None, None) => f64::NAN,
                }))
            }
        }
    }

    /// The single expression, if this is not piecewise.
    pub fn expr(&self) -> CliResult<Expr> {
        match self {
            Coef::Expr(src) => Ok(Expr::parse(src)?),
            Coef::Piecewise { .. } => Err(CliError::Spec(
                "piecewise coefficients are not allowed here".into(),
            )),
        }
    }
}

impl From<&str> for Coef {
    fn from(s: &str) -> Self {
        Coef::Expr(s.to_string())
    }
}

fn zero() -> Coef {
    Coef::Expr("0".into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvolutionSpec {
    pub phi: String,
    pub dphi: String,
    pub domain: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<f64>,
}

/// Problem file.
///
/// * `ivp`: constant `a`, `b`; `h` on `[-T, T]` (default `T = 1`); `x(t0) = c`.
/// * `bvp`: `a`, `b`, `h` on `[-T, T]`; `x(-T) = x(T)`.
/// * `general`: `d x' + a x(φ) + b x = h` on the involution's domain,
///   periodic; `g`/`dg` optionally fix the change of variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub kind: Kind,
    pub a: Coef,
    pub b: Coef,
    #[serde(default = "zero")]
    pub h: Coef,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub half_period: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Coef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<InvolutionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dg: Option<String>,
}

/// A spec turned into core problem types.
pub enum Problem {
    Ivp(IvpProblem),
    Bvp(BvpProblem),
    General(GeneralSetup),
}

/// A general problem together with the reflection it is mapped onto.
pub struct GeneralSetup {
    pub problem: GeneralProblem,
    pub target: Involution,
    pub g: Option<DiffMap>,
}

impl ProblemSpec {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        Ok(serde_json::from_str(&text)?)
    }

    fn half(&self) -> CliResult<f64> {
        let t = self.half_period.unwrap_or(1.0);
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Spec(format!("T must be positive, got {t}")));
        }
        Ok(t)
    }

    fn bvp_half(&self) -> CliResult<f64> {
        match self.half_period {
            Some(_) => self.half(),
            None => Err(CliError::Spec("bvp needs T".into())),
        }
    }

    /// Constant value of a coefficient that must not depend on `t`.
    fn constant(&self, c: &Coef, name: &str, dom: Interval) -> CliResult<f64> {
        let f = c.field(dom)?;
        let v = f.eval(dom.lo);
        if dom.linspace(33).into_iter().any(|t| f.eval(t) != v) {
            return Err(CliError::Core(involute_core::Error::Unsupported(format!(
                "the initial value problem needs constant {name}"
            ))));
        }
        Ok(v)
    }

    pub fn domain(&self) -> CliResult<Interval> {
        match self.kind {
            Kind::Ivp => Ok(Interval::symmetric(self.half()?)),
            Kind::Bvp => Ok(Interval::symmetric(self.bvp_half()?)),
            Kind::General => Ok(self.involution_spec()?.interval()?),
        }
    }

    fn involution_spec(&self) -> CliResult<&InvolutionSpec> {
        self.involution
            .as_ref()
            .ok_or_else(|| CliError::Spec("general problems need an involution".into()))
    }

    pub fn build(&self) -> CliResult<Problem> {
        let dom = self.domain()?;
        match self.kind {
            Kind::Ivp => {
                let a = self.constant(&self.a, "a", dom)?;
                let b = self.constant(&self.b, "b", dom)?;
                let t0 = self.t0.unwrap_or(0.0);
                let c = self.c.unwrap_or(0.0);
                Ok(Problem::Ivp(IvpProblem::new(a, b, t0, c, self.h.field(dom)?)?))
            }
            Kind::Bvp => Ok(Problem::Bvp(BvpProblem::new(
                self.a.field(dom)?,
                self.b.field(dom)?,
                self.h.field(dom)?,
                dom.half_width(),
            )?)),
            Kind::General => Ok(Problem::General(self.general()?)),
        }
    }

    fn general(&self) -> CliResult<GeneralSetup> {
        let inv = self.involution_spec()?.build()?;
        let dom = inv.domain;
        let d = self.d.clone().unwrap_or_else(|| "1".into());
        let problem = GeneralProblem::new(
            self.a.field(dom)?,
            self.b.field(dom)?,
            d.field(dom)?,
            self.h.field(dom)?,
            inv.clone(),
        )?;
        let half = target_half(&inv);
        let target = Involution::reflection(half);
        let g = match (&self.g, &self.dg) {
            (Some(g), Some(dg)) => {
                let left = Interval::new(-half, 0.0)?;
                Some(DiffMap::new(ScalarField::parse(left, g)?, ScalarField::parse(left, dg)?))
            }
            (None, None) => None,
            _ => return Err(CliError::Spec("g and dg must be given together".into())),
        };
        Ok(GeneralSetup { problem, target, g })
    }
}

impl InvolutionSpec {
    pub fn interval(&self) -> CliResult<Interval> {
        Ok(Interval::new(self.domain[0], self.domain[1])?)
    }

    pub fn build(&self) -> CliResult<Involution> {
        let dom = self.interval()?;
        let phi = ScalarField::parse(dom, &self.phi)?;
        let dphi = ScalarField::parse(dom, &self.dphi)?;
        Ok(match self.fixed_point {
            Some(t0) => Involution::with_fixed_point(phi, dphi, dom, t0)?,
            None => Involution::new(phi, dphi, dom)?,
        })
    }
}

/// Half-width of the reflection a general problem is mapped onto: the
/// length of the part of the domain left of the fixed point, so that the
/// default affine change of variables has unit slope there.
pub fn target_half(inv: &Involution) -> f64 {
    inv.fixed_point - inv.domain.lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_forms() {
        let spec: ProblemSpec = serde_json::from_str(
            r#"{"kind":"bvp","a":"cos(t)","b":{"below":"1","above":"2","at":0},"T":1}"#,
        )
        .unwrap();
        assert_eq!(spec.h, Coef::Expr("0".into()));
        let dom = spec.domain().unwrap();
        let b = spec.b.field(dom).unwrap();
        assert_eq!((b.eval(-0.5), b.eval(0.0), b.eval(0.5)), (1.0, 1.0, 2.0));
    }

    #[test]
    fn piecewise_sides_are_validated_separately() {
        let c = Coef::Piecewise {
            below: "sqrt(-t)".into(),
            above: "sqrt(t)".into(),
            at: 0.0,
        };
        let f = c.field(Interval::symmetric(1.0)).unwrap();
        assert_eq!(f.eval(-0.25), 0.5);
        assert_eq!(f.eval(0.25), 0.5);
    }

    #[test]
    fn ivp_needs_constants() {
        let spec: ProblemSpec = serde_json::from_str(r#"{"kind":"ivp","a":"t","b":"0"}"#).unwrap();
        assert!(spec.build().is_err());
    }
}
