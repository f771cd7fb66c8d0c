//! Fixtures shared by the benchmarks.

use involute_core::{BvpProblem, Interval, ScalarField};

/// Reducible periodic problem (C1', k = 1/2) on `[-1.2, 1.2]`.
pub fn reducible() -> BvpProblem {
    let dom = Interval::symmetric(1.2);
    let a = ScalarField::parse(dom, "cos(t)").expect("a");
    let b = ScalarField::parse(dom, "0.5*cos(t) + sin(t)").expect("b");
    let h = ScalarField::parse(dom, "1 + t - t^2").expect("h");
    BvpProblem::new(a, b, h, 1.2).expect("problem")
}

/// Mixed periodic problem with contraction constant below 1.
pub fn mixed() -> BvpProblem {
    let dom = Interval::symmetric(0.8);
    let a = ScalarField::parse(dom, "0.05*t + 0.02*sin(2*t)").expect("a");
    let b = ScalarField::parse(dom, "1 + 0.2*t").expect("b");
    let h = ScalarField::parse(dom, "cos(3*t)").expect("h");
    BvpProblem::new(a, b, h, 0.8).expect("problem")
}

/// `n` nodes on `[-half, half]`, and the same shifted by a third of a step.
pub fn grid(half: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let step = 2.0 * half / (n - 1) as f64;
    let ts = (0..n).map(|i| -half + i as f64 * step).collect();
    let ss = (0..n).map(|i| -half + (i as f64 + 1.0 / 3.0) * step).collect();
    (ts, ss)
}

#[cfg(test)]
mod tests {
    use super::*;
    use involute_core::bvp::contraction_constant;
    use involute_core::{classify_bvp, CaseTag};

    #[test]
    fn fixtures_are_in_their_cases() {
        let p = reducible();
        assert!(matches!(classify_bvp(&p.a, &p.b, 1e-9).unwrap(), CaseTag::C1p { .. }));
        let m = mixed();
        assert_eq!(classify_bvp(&m.a, &m.b, 1e-9).unwrap(), CaseTag::Mixed);
        assert!(contraction_constant(&m).unwrap() < 1.0);
    }
}
