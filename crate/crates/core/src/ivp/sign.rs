//! Sign regions of the initial value kernel.
//!
//! The kernel is nonzero on four wedges of the `(t, s)` plane. On each wedge
//! its sign is fixed up to a threshold in `|t|`, beyond which it changes
//! sign. The thresholds are the first positive zeros of the branch
//! functions: `η(a, b)` for `a² > b²`, `σ(a, b)` for `a² < b²` and `1/a`
//! (or `1/b`) for `a = ±b`.

use std::f64::consts::PI;
use std::fmt;

use crate::classify::CaseTag;
use crate::error::{Error, Result};
use crate::ivp::green::green_ivp;
use crate::ivp::homogeneous::homogeneous_pair;
use crate::kernel::GreenKernel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Negative,
    SignChanging,
    Zero,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Positive => "positive",
            Verdict::Negative => "negative",
            Verdict::SignChanging => "sign-changing",
            Verdict::Zero => "zero",
        })
    }
}

/// The four open wedges on which the kernel is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wedge {
    /// `0 < s < t`
    Diagonal,
    /// `t < s < 0`
    DiagonalNeg,
    /// `-t < s < 0`
    Anti,
    /// `0 < s < -t`
    AntiNeg,
}

impl Wedge {
    pub const ALL: [Wedge; 4] = [Wedge::Diagonal, Wedge::DiagonalNeg, Wedge::Anti, Wedge::AntiNeg];

    /// `t > 0` for the first and third wedge.
    pub fn positive_t(self) -> bool {
        matches!(self, Wedge::Diagonal | Wedge::Anti)
    }

    /// Point `j` of `n` strictly inside the wedge slice at `t`.
    fn s_at(self, t: f64, j: usize, n: usize) -> f64 {
        let w = (j as f64 + 0.5) / n as f64;
        match self {
            Wedge::Diagonal | Wedge::AntiNeg => w * t.abs(),
            Wedge::DiagonalNeg | Wedge::Anti => -w * t.abs(),
        }
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Wedge::Diagonal => "{0 < s < t}",
            Wedge::DiagonalNeg => "{t < s < 0}",
            Wedge::Anti => "{-t < s < 0}",
            Wedge::AntiNeg => "{0 < s < -t}",
        })
    }
}

/// The kernel has sign `verdict` on the wedge exactly for `0 < |t| < limit`
/// and changes sign on the wedge slice for `|t| > limit`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeReport {
    pub wedge: Wedge,
    pub verdict: Verdict,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignReport {
    pub case: CaseTag,
    pub wedges: [WedgeReport; 4],
    /// `x` such that the kernel is positive on `[0, x] × ℝ`.
    pub positive_band: Option<f64>,
    /// `x` such that the kernel is negative on `[-x, 0] × ℝ`.
    pub negative_band: Option<f64>,
    /// Named thresholds, e.g. `("eta(a,b)", π/4)`.
    pub thresholds: Vec<(String, f64)>,
    /// Statements about the solution rather than the kernel.
    pub notes: Vec<String>,
    /// Whether grid sampling agreed with every analytic verdict.
    pub sampling_confirms: bool,
}

impl SignReport {
    pub fn wedge(&self, w: Wedge) -> WedgeReport {
        self.wedges[Wedge::ALL.iter().position(|&x| x == w).unwrap()]
    }

    /// Verdict on the band `[lo, hi] × ℝ` (with `lo ≤ 0 ≤ hi` or both of one sign).
    pub fn band_verdict(&self, lo: f64, hi: f64) -> Verdict {
        if lo >= 0.0 {
            if let Some(x) = self.positive_band {
                if hi <= x {
                    return Verdict::Positive;
                }
            }
        }
        if hi <= 0.0 {
            if let Some(x) = self.negative_band {
                if -lo <= x {
                    return Verdict::Negative;
                }
            }
        }
        Verdict::SignChanging
    }
}

impl fmt::Display for SignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case {}", self.case)?;
        for (name, v) in &self.thresholds {
            writeln!(f, "{name} = {v:.6}")?;
        }
        for w in &self.wedges {
            if w.limit.is_infinite() {
                writeln!(f, "{}: {} for all t", w.wedge, w.verdict)?;
            } else {
                writeln!(f, "{}: {} iff |t| < {:.6}", w.wedge, w.verdict, w.limit)?;
            }
        }
        match self.positive_band {
            Some(x) if x.is_infinite() => writeln!(f, "positive on [0, inf) x R")?,
            Some(x) => writeln!(f, "positive on [0, {x:.6}] x R")?,
            None => {}
        }
        match self.negative_band {
            Some(x) if x.is_infinite() => writeln!(f, "negative on (-inf, 0] x R")?,
            Some(x) => writeln!(f, "negative on [{:.6}, 0] x R", -x)?,
            None => {}
        }
        for n in &self.notes {
            writeln!(f, "{n}")?;
        }
        write!(
            f,
            "grid sampling {}",
            if self.sampling_confirms { "confirms" } else { "DISAGREES" }
        )
    }
}

/// `η(a, b)`: first zero in `t > 0` of `cos ωt - (b/ω) sin ωt`, `a² > b²`.
pub fn eta(a: f64, b: f64) -> f64 {
    let w = (a * a - b * b).sqrt();
    if b > 0.0 {
        (w / b).atan() / w
    } else if b == 0.0 {
        PI / (2.0 * a.abs())
    } else {
        ((w / b).atan() + PI) / w
    }
}

/// `σ(a, b) = atanh(√(b² - a²)/b) / √(b² - a²)`, `a² < b²`.
pub fn sigma_ab(a: f64, b: f64) -> f64 {
    let w = (b * b - a * a).sqrt();
    (w / b).atanh() / w
}

fn report(wedge: Wedge, verdict: Verdict, limit: f64) -> WedgeReport {
    WedgeReport {
        wedge,
        verdict,
        limit,
    }
}

fn sign_of(x: f64) -> Verdict {
    if x > 0.0 {
        Verdict::Positive
    } else {
        Verdict::Negative
    }
}

/// Analytic sign verdicts, cross-checked by sampling the kernel.
pub fn sign_classify_ivp(a: f64, b: f64) -> Result<SignReport> {
    let pair = homogeneous_pair(a, b)?;
    let inf = f64::INFINITY;
    let w = pair.omega;
    let mut thresholds = Vec::new();
    let mut notes = Vec::new();
    // Diagonal wedges: positive on {0<s<t}, negative on {t<s<0}.
    // Anti-diagonal wedges: sign(a) on both.
    let (diag, diag_neg, anti) = match pair.case {
        CaseTag::C1 => {
            let (e1, e2) = (eta(a, b), eta(a, -b));
            thresholds.push(("eta(a,b)".to_string(), e1));
            thresholds.push(("eta(a,-b)".to_string(), e2));
            thresholds.push(("pi/omega".to_string(), PI / w));
            (e1, e2, PI / w)
        }
        CaseTag::C2 => {
            let s = sigma_ab(a, b);
            thresholds.push(("sigma(a,b)".to_string(), s));
            if b > 0.0 {
                (s, inf, inf)
            } else {
                (inf, -s, inf)
            }
        }
        CaseTag::C3_1 => {
            thresholds.push(("1/a".to_string(), 1.0 / a));
            if a > 0.0 {
                (1.0 / a, inf, inf)
            } else {
                (inf, -1.0 / a, inf)
            }
        }
        _ => {
            // a = -b: branches 1 - b(t - s) and a(s + t)
            thresholds.push(("1/|b|".to_string(), 1.0 / b.abs()));
            notes.push(if a > 0.0 {
                "for h >= 0 and u0(t0) = c the solution is positive on [0, inf)".to_string()
            } else {
                "for h >= 0 and u0(t0) = c the solution is negative on (-inf, 0]".to_string()
            });
            if b > 0.0 {
                (1.0 / b, inf, inf)
            } else {
                (inf, -1.0 / b, inf)
            }
        }
    };
    let wedges = [
        report(Wedge::Diagonal, Verdict::Positive, diag),
        report(Wedge::DiagonalNeg, Verdict::Negative, diag_neg),
        report(Wedge::Anti, sign_of(a), anti),
        report(Wedge::AntiNeg, sign_of(a), anti),
    ];
    let (positive_band, negative_band) = if a > 0.0 {
        (Some(diag.min(anti)), None)
    } else {
        (None, Some(diag_neg.min(anti)))
    };
    let mut rep = SignReport {
        case: pair.case,
        wedges,
        positive_band,
        negative_band,
        thresholds,
        notes,
        sampling_confirms: false,
    };
    let kernel = green_ivp(a, b)?;
    let scale = 4.0 / a.abs().max(b.abs());
    rep.sampling_confirms = verify_by_sampling(&rep, &kernel, scale, 101);
    Ok(rep)
}

/// Samples `n × n` points per wedge: inside the claimed range the sign must
/// be strict; on `|t| ∈ [1.05, 1.5] × limit` each slice must change sign.
/// Infinite limits are sampled up to `t_cap`.
pub fn verify_by_sampling(rep: &SignReport, kernel: &GreenKernel, t_cap: f64, n: usize) -> bool {
    rep.wedges.iter().all(|w| {
        let dir = if w.wedge.positive_t() { 1.0 } else { -1.0 };
        let top = if w.limit.is_finite() { w.limit } else { t_cap };
        let inside = (0..n).all(|i| {
            let t = dir * top * (i as f64 + 0.5) / n as f64 * if w.limit.is_finite() { 0.999 } else { 1.0 };
            (0..n).all(|j| {
                let g = kernel.eval(t, w.wedge.s_at(t, j, n));
                match w.verdict {
                    Verdict::Positive => g > 0.0,
                    Verdict::Negative => g < 0.0,
                    Verdict::Zero => g == 0.0,
                    Verdict::SignChanging => true,
                }
            })
        });
        let beyond = !w.limit.is_finite()
            || (0..n).all(|i| {
                let t = dir * w.limit * (1.05 + 0.45 * i as f64 / (n - 1) as f64);
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for j in 0..n {
                    let g = kernel.eval(t, w.wedge.s_at(t, j, n));
                    lo = lo.min(g);
                    hi = hi.max(g);
                }
                lo < 0.0 && hi > 0.0
            });
        inside && beyond
    })
}

/// [`sign_classify_ivp`], failing with [`Error::Convergence`] when grid
/// sampling contradicts an analytic verdict.
pub fn checked_sign_report(a: f64, b: f64) -> Result<SignReport> {
    let r = sign_classify_ivp(a, b)?;
    if r.sampling_confirms {
        Ok(r)
    } else {
        Err(Error::Convergence(format!(
            "kernel sampling disagrees with the analytic sign verdicts for a = {a}, b = {b}"
        )))
    }
}
