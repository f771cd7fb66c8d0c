//! Constant-sign criteria for `G₁`.

use std::fmt;

use crate::bvp::nonconstant::{green_bvp_nonconstant, reduce};
use crate::classify::CaseTag;
use crate::error::{Error, Result};
use crate::kernel::GreenKernel;
use crate::problem::BvpProblem;

/// `σ(k)`: `G₁` has constant sign when `|A(T)| < σ(k)`.
///
/// ```text
/// σ(k) = arccos(k) / (2√(1-k²))     -1 < k < 1
///      = ½                           k = 1
///      = arccosh(k) / (2√(k²-1))     k > 1
/// ```
pub fn sigma_threshold(k: f64) -> Result<f64> {
    if !(k > -1.0) {
        return Err(Error::Domain(format!("σ(k) needs k > -1, got {k}")));
    }
    Ok(if (k - 1.0).abs() < 1e-6 {
        // both branches are ½ + (1-k)/6 + O((1-k)²)
        0.5 + (1.0 - k) / 6.0
    } else if k < 1.0 {
        k.acos() / (2.0 * (1.0 - k * k).sqrt())
    } else {
        k.acosh() / (2.0 * (k * k - 1.0).sqrt())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhasorBranch {
    CoshPlus,
    CoshMinus,
    SinhPlus,
    SinhMinus,
    ExpPlus,
    ExpMinus,
}

impl PhasorBranch {
    pub fn name(self) -> &'static str {
        match self {
            PhasorBranch::CoshPlus => "cosh+",
            PhasorBranch::CoshMinus => "cosh-",
            PhasorBranch::SinhPlus => "sinh+",
            PhasorBranch::SinhMinus => "sinh-",
            PhasorBranch::ExpPlus => "exp+",
            PhasorBranch::ExpMinus => "exp-",
        }
    }
}

/// `α cosh γ + β sinh γ` written as one shifted hyperbolic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phasor {
    pub branch: PhasorBranch,
    pub amplitude: f64,
    pub shift: f64,
}

impl Phasor {
    pub fn eval(&self, gamma: f64) -> f64 {
        let (r, x) = (self.amplitude, gamma + self.shift);
        match self.branch {
            PhasorBranch::CoshPlus => r * x.cosh(),
            PhasorBranch::CoshMinus => -r * x.cosh(),
            PhasorBranch::SinhPlus => r * x.sinh(),
            PhasorBranch::SinhMinus => -r * x.sinh(),
            PhasorBranch::ExpPlus => r * gamma.exp(),
            PhasorBranch::ExpMinus => r * (-gamma).exp(),
        }
    }
}

/// Amplitude `√|α² - β²|`, shift `½ ln|(α+β)/(α-β)|`; the `exp±` branches
/// (`α = ±β`) carry amplitude `α` and no shift.
pub fn hyperbolic_phasor(alpha: f64, beta: f64) -> Phasor {
    if alpha == beta {
        return Phasor {
            branch: PhasorBranch::ExpPlus,
            amplitude: alpha,
            shift: 0.0,
        };
    }
    if alpha == -beta {
        return Phasor {
            branch: PhasorBranch::ExpMinus,
            amplitude: alpha,
            shift: 0.0,
        };
    }
    let amplitude = (alpha * alpha - beta * beta).abs().sqrt();
    let shift = 0.5 * ((alpha + beta) / (alpha - beta)).abs().ln();
    let branch = if alpha > beta.abs() {
        PhasorBranch::CoshPlus
    } else if -alpha > beta.abs() {
        PhasorBranch::CoshMinus
    } else if beta > alpha.abs() {
        PhasorBranch::SinhPlus
    } else {
        PhasorBranch::SinhMinus
    };
    Phasor {
        branch,
        amplitude,
        shift,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVerdict {
    Positive,
    Negative,
    Unknown,
}

impl fmt::Display for SignVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignVerdict::Positive => "positive",
            SignVerdict::Negative => "negative",
            SignVerdict::Unknown => "unknown",
        })
    }
}

/// Points per axis of the confirming grid.
pub const SIGN_GRID: usize = 101;

#[derive(Debug, Clone)]
pub struct SignCheck {
    pub case: CaseTag,
    pub verdict: SignVerdict,
    /// `A(T)`.
    pub a_of_t: f64,
    /// `max |A|` on the domain; equals `|A(T)|` when `a` keeps its sign.
    pub max_abs_a: f64,
    /// `σ(k)`, or `None` when the sign is constant for every `A(T)`.
    pub threshold: Option<f64>,
    pub sampled_min: f64,
    pub sampled_max: f64,
}

impl SignCheck {
    /// Whether grid sampling contradicts the verdict.
    pub fn sampling_agrees(&self) -> bool {
        match self.verdict {
            SignVerdict::Positive => self.sampled_min > 0.0,
            SignVerdict::Negative => self.sampled_max < 0.0,
            SignVerdict::Unknown => true,
        }
    }

    pub fn sampled_sign_changes(&self) -> bool {
        self.sampled_min < 0.0 && self.sampled_max > 0.0
    }
}

impl fmt::Display for SignCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.case)?;
        match self.threshold {
            Some(s) => write!(f, ", σ(k)={s:.6}")?,
            None => write!(f, ", σ(k)=∞")?,
        }
        write!(f, ", |A(T)|={:.6}", self.a_of_t.abs())?;
        match self.verdict {
            SignVerdict::Unknown => write!(f, " → sign not guaranteed")?,
            v => write!(f, " → constant sign ({v})")?,
        }
        write!(
            f,
            "; sampled G1 ∈ [{:.6e}, {:.6e}]",
            self.sampled_min, self.sampled_max
        )
    }
}

/// Min and max of `g` on an `n × n` grid, the `s` nodes shifted by a third
/// of a step to stay off the diagonals.
pub fn sample_extremes(g: &GreenKernel, n: usize) -> (f64, f64) {
    let t_half = g.half_width();
    let step = 2.0 * t_half / (n - 1) as f64;
    let ts: Vec<f64> = (0..n).map(|i| -t_half + i as f64 * step).collect();
    let ss: Vec<f64> = (0..n - 1).map(|i| -t_half + (i as f64 + 1.0 / 3.0) * step).collect();
    g.sample(&ts, &ss)
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Constant-sign verdict from `σ(k)`, confirmed by sampling `G₁`.
///
/// The criterion uses `max |A|` rather than `|A(T)|` so that an even `a`
/// changing sign is judged by the whole range of `A`. The sign is that of
/// `A(T)` (of `k A(T)` when `|k| > 1`), i.e. the sign of `a` when it keeps
/// one.
pub fn constant_sign_check(p: &BvpProblem) -> Result<SignCheck> {
    let r = reduce(p)?;
    let g = green_bvp_nonconstant(p)?;
    let max_abs_a = r.prims.A.max_abs(2049).max(r.a_of_t.abs());
    let (threshold, sign) = match r.tag {
        CaseTag::C1p { k } => (Some(sigma_threshold(k)?), r.a_of_t.signum()),
        CaseTag::C3p => (Some(0.5), r.a_of_t.signum()),
        CaseTag::C2p { k } if k < -1.0 => (None, (k * r.a_of_t).signum()),
        CaseTag::C2p { k } => (Some(sigma_threshold(k)?), (k * r.a_of_t).signum()),
        _ => unreachable!("reduce only accepts C1', C2', C3'"),
    };
    let holds = threshold.map_or(true, |s| max_abs_a < s);
    let verdict = match (holds, sign > 0.0) {
        (false, _) => SignVerdict::Unknown,
        (true, true) => SignVerdict::Positive,
        (true, false) => SignVerdict::Negative,
    };
    let (sampled_min, sampled_max) = sample_extremes(&g, SIGN_GRID);
    Ok(SignCheck {
        case: r.tag,
        verdict,
        a_of_t: r.a_of_t,
        max_abs_a,
        threshold,
        sampled_min,
        sampled_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Interval, ScalarField};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn sigma_values() {
        assert!((sigma_threshold(0.0).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(sigma_threshold(1.0).unwrap(), 0.5);
        let s2 = (2.0 + 3f64.sqrt()).ln() / (2.0 * 3f64.sqrt());
        assert!((sigma_threshold(2.0).unwrap() - s2).abs() < 1e-15);
        assert!((s2 - 0.380173).abs() < 1e-6);
        assert!((sigma_threshold(0.5).unwrap() - 0.604600).abs() < 1e-6);
        for d in [1e-6, 1e-7, 1e-3] {
            assert!((sigma_threshold(1.0 - d).unwrap() - 0.5).abs() < 1e-3);
            assert!((sigma_threshold(1.0 + d).unwrap() - 0.5).abs() < 1e-3);
        }
        assert!(matches!(sigma_threshold(-1.0), Err(Error::Domain(_))));
        assert!(matches!(sigma_threshold(-3.0), Err(Error::Domain(_))));
    }

    #[test]
    fn sigma_k_above_one_matches_log_form() {
        for k in [1.5, 2.0, 10.0] {
            let r = (k * k - 1.0f64).sqrt();
            let log_form = -(k - r).ln() / (2.0 * r);
            assert!((sigma_threshold(k).unwrap() - log_form).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn sigma_decreasing(k in -0.999f64..5.0, d in 1e-3f64..1.0) {
            prop_assert!(sigma_threshold(k + d).unwrap() < sigma_threshold(k).unwrap());
            prop_assert!(sigma_threshold(k).unwrap() > 0.0);
        }

        #[test]
        fn phasor_reconstructs(alpha in -3.0f64..3.0, beta in -3.0f64..3.0, g in -2.0f64..2.0) {
            let p = hyperbolic_phasor(alpha, beta);
            let direct = alpha * g.cosh() + beta * g.sinh();
            prop_assert!((p.eval(g) - direct).abs() <= 1e-10 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn phasor_examples() {
        let p = hyperbolic_phasor(1.0, 0.0);
        assert_eq!((p.branch, p.amplitude, p.shift), (PhasorBranch::CoshPlus, 1.0, 0.0));
        let p = hyperbolic_phasor(1.0, 1.0);
        assert_eq!(p.branch, PhasorBranch::ExpPlus);
        assert!((p.eval(0.7) - 0.7f64.exp()).abs() < 1e-15);
        let p = hyperbolic_phasor(0.0, 1.0);
        assert_eq!((p.branch, p.amplitude, p.shift), (PhasorBranch::SinhPlus, 1.0, 0.0));
        assert_eq!(hyperbolic_phasor(-2.0, 1.0).branch, PhasorBranch::CoshMinus);
        assert_eq!(hyperbolic_phasor(1.0, -2.0).branch, PhasorBranch::SinhMinus);
        assert_eq!(hyperbolic_phasor(2.0, -2.0).branch, PhasorBranch::ExpMinus);
    }

    fn problem(a: &str, b: &str, t_half: f64) -> BvpProblem {
        let dom = Interval::symmetric(t_half);
        BvpProblem::new(
            ScalarField::parse(dom, a).unwrap(),
            ScalarField::parse(dom, b).unwrap(),
            ScalarField::zero(dom),
            t_half,
        )
        .unwrap()
    }

    #[test]
    fn quarter_pi_is_sharp() {
        for w in [0.7, 1.0, 2.0] {
            let inside = constant_sign_check(&problem(&format!("{w}"), "0", (FRAC_PI_4 - 0.01) / w)).unwrap();
            assert_eq!(inside.verdict, SignVerdict::Positive);
            assert!(inside.sampling_agrees() && !inside.sampled_sign_changes());
            let outside = constant_sign_check(&problem(&format!("{w}"), "0", (FRAC_PI_4 + 0.05) / w)).unwrap();
            assert_eq!(outside.verdict, SignVerdict::Unknown);
            assert!(outside.sampled_sign_changes(), "{outside}");
        }
        let neg = constant_sign_check(&problem("-1", "0", 0.5)).unwrap();
        assert_eq!(neg.verdict, SignVerdict::Negative);
        assert!(neg.sampling_agrees());
    }

    #[test]
    fn cosine_coefficient_positive() {
        let c = constant_sign_check(&problem("cos(t)", "0", FRAC_PI_6)).unwrap();
        assert!((c.a_of_t - 0.5).abs() < 1e-12);
        assert_eq!(c.verdict, SignVerdict::Positive);
        assert!(c.sampled_min > 0.0);
    }

    #[test]
    fn report_text() {
        let c = constant_sign_check(&problem("cos(t)", "0.5*cos(t) + sin(t)", 1.5707963)).unwrap();
        let text = c.to_string();
        assert!(text.starts_with("C1', k=0.5"), "{text}");
        assert!(text.contains("σ(k)=0.604600"), "{text}");
        assert!(text.contains("|A(T)|=1.000000"), "{text}");
        assert!(text.contains("sign not guaranteed"), "{text}");
    }

    #[test]
    fn strongly_negative_k_always_constant() {
        for t_half in [0.3, 1.0, 2.5] {
            let c = constant_sign_check(&problem("1", "-2", t_half)).unwrap();
            assert_eq!(c.threshold, None);
            assert_eq!(c.verdict, SignVerdict::Negative);
            assert!(c.sampling_agrees(), "{c}");
        }
    }

    #[test]
    fn other_cases() {
        let c = constant_sign_check(&problem("1", "2", 0.3)).unwrap();
        assert_eq!(c.verdict, SignVerdict::Positive);
        assert!(c.sampling_agrees(), "{c}");
        let c = constant_sign_check(&problem("1", "1", 0.4)).unwrap();
        assert_eq!(c.verdict, SignVerdict::Positive);
        assert!(c.sampling_agrees(), "{c}");
        assert!(matches!(
            constant_sign_check(&problem("1", "-1", 1.0)),
            Err(Error::WrongCase { .. })
        ));
    }
}
