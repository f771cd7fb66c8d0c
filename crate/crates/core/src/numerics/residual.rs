use crate::field::ScalarField;
use crate::numerics::grid::Grid;

/// Finite-difference settings for residual checks.
#[derive(Debug, Clone)]
pub struct ResidualOptions {
    /// Central-difference half step.
    pub fd_step: f64,
    /// Nodes closer than `avoid_radius` to any of these points are skipped.
    pub avoid: Vec<f64>,
    pub avoid_radius: f64,
}

impl Default for ResidualOptions {
    fn default() -> Self {
        Self {
            fd_step: 1e-4,
            avoid: vec![0.0],
            avoid_radius: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// `max |r(t)|`.
    pub max_abs: f64,
    /// `max |r(t)| / (1 + |h(t)|)`.
    pub max_rel: f64,
    pub worst_t: f64,
    pub checked: usize,
}

/// Residual of `u' + a u(-t) + b u - h` at the interior grid nodes.
pub fn residual_check(
    u: &ScalarField,
    a: &ScalarField,
    b: &ScalarField,
    h: &ScalarField,
    grid: &Grid,
    opts: &ResidualOptions,
) -> ResidualReport {
    let dom = u.domain();
    let d = opts.fd_step;
    let mut report = ResidualReport {
        max_abs: 0.0,
        max_rel: 0.0,
        worst_t: f64::NAN,
        checked: 0,
    };
    let nodes = grid.nodes();
    for &t in &nodes[1..nodes.len() - 1] {
        if !dom.contains(t - d) || !dom.contains(t + d) || !dom.contains(-t) {
            continue;
        }
        if opts.avoid.iter().any(|&p| (t - p).abs() < opts.avoid_radius) {
            continue;
        }
        let du = (u.eval(t + d) - u.eval(t - d)) / (2.0 * d);
        let ht = h.eval(t);
        let r = (du + a.eval(t) * u.eval(-t) + b.eval(t) * u.eval(t) - ht).abs();
        report.checked += 1;
        if !(r <= report.max_abs) {
            report.max_abs = r;
            report.worst_t = t;
        }
        report.max_rel = report.max_rel.max(r / (1.0 + ht.abs()));
        if r.is_nan() {
            report.max_rel = f64::NAN;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Interval;

    #[test]
    fn zero_solution_zero_forcing() {
        let dom = Interval::symmetric(1.0);
        let z = ScalarField::zero(dom);
        let one = ScalarField::constant(dom, 1.0);
        let g = Grid::symmetric(1.0, 101).unwrap();
        let r = residual_check(&z, &one, &one, &z, &g, &ResidualOptions::default());
        assert_eq!(r.max_abs, 0.0);
        assert!(r.checked > 90);
    }

    #[test]
    fn detects_perturbation() {
        // u = cos t - sin t solves u' + u(-t) = 0
        let dom = Interval::symmetric(1.0);
        let u = ScalarField::new(dom, |t| t.cos() - t.sin());
        let a = ScalarField::constant(dom, 1.0);
        let b = ScalarField::zero(dom);
        let h = ScalarField::zero(dom);
        let g = Grid::symmetric(1.0, 101).unwrap();
        let opts = ResidualOptions::default();
        assert!(residual_check(&u, &a, &b, &h, &g, &opts).max_abs < 1e-8);
        let bad = u.add(&ScalarField::new(dom, |t| 1e-2 * (10.0 * t).sin()));
        assert!(residual_check(&bad, &a, &b, &h, &g, &opts).max_abs >= 1e-2);
    }
}
