//! Case classification for the initial and periodic problems.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{parity_split, ScalarField};

/// Outcome of [`classify_ivp`] or [`classify_bvp`].
///
/// `C1`–`C3_2` classify constant `(a, b)` for the initial value problem;
/// the primed variants classify variable coefficients for the periodic
/// problem by the relation between `b_e` and `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseTag {
    /// `a² > b²`.
    C1,
    /// `a² < b²`.
    C2,
    /// `a = b`.
    C3_1,
    /// `a = -b`.
    C3_2,
    /// `b_e = k a`, `|k| < 1`, `a` even.
    C1p { k: f64 },
    /// `b_e = k a`, `|k| > 1`, `a` even.
    C2p { k: f64 },
    /// `b_e = a`.
    C3p,
    /// `b_e = -a` (resonant).
    C4p,
    /// `a_e = b_e = 0` (resonant).
    C5p,
    Mixed,
}

impl CaseTag {
    /// The ratio `b_e / a`, where it is defined by the case.
    pub fn k(&self) -> Option<f64> {
        match *self {
            CaseTag::C1p { k } | CaseTag::C2p { k } => Some(k),
            CaseTag::C3p => Some(1.0),
            CaseTag::C4p => Some(-1.0),
            _ => None,
        }
    }

    pub fn is_resonant(&self) -> bool {
        matches!(self, CaseTag::C4p | CaseTag::C5p)
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::C1 => "C1",
            CaseTag::C2 => "C2",
            CaseTag::C3_1 => "C3.1",
            CaseTag::C3_2 => "C3.2",
            CaseTag::C1p { .. } => "C1'",
            CaseTag::C2p { .. } => "C2'",
            CaseTag::C3p => "C3'",
            CaseTag::C4p => "C4'",
            CaseTag::C5p => "C5'",
            CaseTag::Mixed => "Mixed",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::C1p { k } | CaseTag::C2p { k } => write!(f, "{}, k={k}", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

/// Relative tolerance used to decide `a = ±b` for constant coefficients.
pub const IVP_EQUALITY_RTOL: f64 = 1e-12;

/// Classifies constant coefficients of `x' + a x(-t) + b x = h`.
pub fn classify_ivp(a: f64, b: f64) -> Result<CaseTag> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("non-finite coefficient".into()));
    }
    if a == 0.0 {
        return Err(Error::Unsupported(
            "a = 0 is an ordinary differential equation".into(),
        ));
    }
    let tol = IVP_EQUALITY_RTOL * a.abs().max(b.abs());
    Ok(if (a - b).abs() <= tol {
        CaseTag::C3_1
    } else if (a + b).abs() <= tol {
        CaseTag::C3_2
    } else if a * a > b * b {
        CaseTag::C1
    } else {
        CaseTag::C2
    })
}

/// Number of sample points used by [`classify_bvp`].
pub const CLASSIFY_GRID: usize = 257;

/// Default relative tolerance for [`classify_bvp`].
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Classifies variable coefficients on their common symmetric domain.
///
/// `tol` is relative to `max(|a|, |b|)` on the sampling grid. `k` is the
/// median of `b_e / a` over points where `|a|` is not small, then checked
/// against every grid point.
pub fn classify_bvp(a: &ScalarField, b: &ScalarField, tol: f64) -> Result<CaseTag> {
    let pa = parity_split(a)?;
    let pb = parity_split(b)?;
    let ts = a.domain().linspace(CLASSIFY_GRID);
    let max = |f: &ScalarField| ts.iter().fold(0.0f64, |m, &t| m.max(f.eval(t).abs()));
    let max_a = max(a);
    if !max_a.is_finite() || !max(b).is_finite() {
        return Err(Error::Domain("coefficient is not finite on the grid".into()));
    }
    if max_a <= tol {
        return Err(Error::Unsupported(
            "a vanishes identically: ordinary differential equation".into(),
        ));
    }
    let thr = tol * max_a.max(max(b));
    let (ae, ao, be) = (max(&pa.even), max(&pa.odd), max(&pb.even));
    if ae <= thr && be <= thr {
        return Ok(CaseTag::C5p);
    }
    if ao > thr {
        return Ok(CaseTag::Mixed);
    }
    let mut ratios: Vec<f64> = ts
        .iter()
        .filter(|&&t| a.eval(t).abs() > 1e-3 * max_a)
        .map(|&t| pb.even.eval(t) / a.eval(t))
        .collect();
    ratios.sort_by(f64::total_cmp);
    let k = ratios[ratios.len() / 2];
    let fits = ts
        .iter()
        .all(|&t| (pb.even.eval(t) - k * a.eval(t)).abs() <= thr * (1.0 + k.abs()));
    if !fits {
        return Ok(CaseTag::Mixed);
    }
    Ok(if (k - 1.0).abs() <= tol {
        CaseTag::C3p
    } else if (k + 1.0).abs() <= tol {
        CaseTag::C4p
    } else if k.abs() < 1.0 {
        CaseTag::C1p { k }
    } else {
        CaseTag::C2p { k }
    })
}
