//! Green's kernel of the initial value problem.
//!
//! For `t > 0` the kernel lives on `[-t, t]`:
//!
//! ```text
//! G(t, s) = C(s-t) + b S(s-t)      0 ≤ s ≤ t
//!         = a S(s+t)              -t ≤ s < 0
//! ```
//!
//! and for `t < 0` the same expressions with opposite sign on `[t, 0]` and
//! `(0, -t]`. `C`, `S` are `cos ωx`, `sin(ωx)/ω` (case C1), their hyperbolic
//! counterparts (C2) or `1`, `x` (C3).

use crate::error::Result;
use crate::ivp::homogeneous::{homogeneous_pair, HomogeneousPair};
use crate::kernel::{oriented_indicator, GreenKernel, Support};

fn regions() -> [&'static str; 5] {
    [
        "0 <= s <= t: C(s-t) + b S(s-t)",
        "t <= s <= 0: -C(s-t) - b S(s-t)",
        "-t <= s < 0: a S(s+t)",
        "0 < s <= -t: -a S(s+t)",
        "otherwise: 0",
    ]
}

/// Explicit piecewise kernel.
///
/// On the shared edges `s = 0` the diagonal branch takes priority, i.e. the
/// closed side is the one containing `s = t`.
pub fn green_ivp(a: f64, b: f64) -> Result<GreenKernel> {
    let pair = homogeneous_pair(a, b)?;
    let trig = pair.trig();
    let eval = move |t: f64, s: f64| {
        if t >= 0.0 {
            if 0.0 <= s && s <= t {
                trig.c(s - t) + b * trig.s(s - t)
            } else if -t <= s && s < 0.0 {
                a * trig.s(s + t)
            } else {
                0.0
            }
        } else if t <= s && s <= 0.0 {
            -(trig.c(s - t) + b * trig.s(s - t))
        } else if 0.0 < s && s <= -t {
            -a * trig.s(s + t)
        } else {
            0.0
        }
    };
    Ok(GreenKernel::new(f64::INFINITY, 1.0, Support::Cone, eval).with_regions(regions()))
}

/// The same kernel assembled from `ũ`, `ṽ` and oriented indicators:
///
/// ```text
/// G = ½ ([ũ(-s)ṽ(t) + ṽ(-s)ũ(t)] χ_0^t(s) + [ũ(-s)ṽ(t) - ṽ(-s)ũ(t)] χ_{-t}^0(s))
/// ```
///
/// It differs from [`green_ivp`] only on the null set `s ∈ {0, ±t}`.
pub fn green_ivp_assembled(a: f64, b: f64) -> Result<GreenKernel> {
    let pair: HomogeneousPair = homogeneous_pair(a, b)?;
    let eval = move |t: f64, s: f64| {
        let (us, vs, ut, vt) = (pair.u(-s), pair.v(-s), pair.u(t), pair.v(t));
        let c1 = oriented_indicator(0.0, t, s) as f64;
        let c2 = oriented_indicator(-t, 0.0, s) as f64;
        0.5 * ((us * vt + vs * ut) * c1 + (us * vt - vs * ut) * c2)
    };
    Ok(GreenKernel::new(f64::INFINITY, 1.0, Support::Cone, eval).with_regions(regions()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Interval, ScalarField};
    use proptest::prelude::*;

    #[test]
    fn reflection_values() {
        let g = green_ivp(1.0, 0.0).unwrap();
        assert!((g.eval(1.0, 0.5) - 0.877582561890373).abs() < 1e-12);
        assert!((g.eval(1.0, -0.5) - 0.479425538604203).abs() < 1e-12);
        assert_eq!(g.eval(0.5, 2.0), 0.0);
        let h = green_ivp_assembled(1.0, 0.0).unwrap();
        assert!((h.eval(1.0, 0.5) - 0.5f64.cos()).abs() < 1e-15);
        assert!((h.eval(1.0, -0.5) - 0.5f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn unit_jump_both_sides() {
        for (a, b) in [(1.0, 0.0), (1.0, 2.0), (2.0, 2.0), (-1.5, 1.5), (-2.0, 0.7)] {
            let g = green_ivp(a, b).unwrap();
            for t in [-0.8, -0.1, 0.3, 1.7] {
                assert!((g.measured_jump(t, 1e-9) - 1.0).abs() < 1e-6, "a={a} b={b} t={t}");
            }
        }
    }

    #[test]
    fn boundary_convention_does_not_change_integrals() {
        // The two assemblies differ only at s ∈ {0, ±t}.
        let h = ScalarField::new(Interval::symmetric(2.0), |s| 1.0 + s + (3.0 * s).cos());
        for (a, b) in [(1.0, 0.3), (0.5, -2.0), (1.0, 1.0), (1.0, -1.0)] {
            let g = green_ivp(a, b).unwrap();
            let e = green_ivp_assembled(a, b).unwrap();
            assert_ne!(g.eval(0.7, 0.0), e.eval(0.7, 0.0));
            for t in [-1.3, -0.2, 0.4, 1.9] {
                let x = g.apply(&h, t, 1e-12).unwrap();
                let y = e.apply(&h, t, 1e-12).unwrap();
                assert!((x - y).abs() < 1e-12, "{x} {y}");
            }
        }
    }

    fn any_case() -> impl Strategy<Value = (f64, f64)> {
        prop_oneof![
            (-3.0f64..3.0, -3.0f64..3.0),
            (0.1f64..3.0).prop_map(|a| (a, a)),
            (-3.0f64..-0.1).prop_map(|a| (a, -a)),
        ]
        .prop_filter("supported", |(a, b)| a.abs() > 0.05 && ((a.abs() - b.abs()).abs() > 0.05 || (a.abs() - b.abs()) == 0.0))
    }

    proptest! {
        #[test]
        fn explicit_equals_assembled((a, b) in any_case(), t in -2.0f64..2.0, s in -2.0f64..2.0) {
            prop_assume!(s != 0.0 && s.abs() != t.abs());
            let g = green_ivp(a, b).unwrap().eval(t, s);
            let e = green_ivp_assembled(a, b).unwrap().eval(t, s);
            prop_assert!((g - e).abs() <= 1e-10 * (1.0 + g.abs()));
        }
    }
}
