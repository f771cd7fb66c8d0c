//! Piecewise cubic Hermite tables on uniform nodes.

use std::sync::Arc;

use crate::field::{Interval, ScalarField};
use crate::numerics::quad::integrate_piece;

/// Values and first derivatives on uniform nodes, interpolated by cubic
/// Hermite polynomials. Outside the node range the end cubic is extended.
#[derive(Debug, Clone)]
pub struct HermiteTable {
    lo: f64,
    step: f64,
    values: Arc<[f64]>,
    derivs: Arc<[f64]>,
}

impl HermiteTable {
    /// `values[i]`, `derivs[i]` at `lo + i * step`.
    pub fn new(lo: f64, step: f64, values: Vec<f64>, derivs: Vec<f64>) -> Self {
        assert_eq!(values.len(), derivs.len());
        assert!(values.len() >= 2, "need at least two nodes");
        assert!(step > 0.0);
        Self {
            lo,
            step,
            values: values.into(),
            derivs: derivs.into(),
        }
    }

    pub fn domain(&self) -> Interval {
        Interval {
            lo: self.lo,
            hi: self.lo + self.step * (self.values.len() - 1) as f64,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    fn locate(&self, t: f64) -> (usize, f64) {
        let n = self.values.len();
        let x = (t - self.lo) / self.step;
        let i = (x.floor().max(0.0) as usize).min(n - 2);
        (i, x - i as f64)
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        let (i, u) = self.locate(t);
        let h = self.step;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.derivs[i] * h, self.derivs[i + 1] * h);
        let u2 = u * u;
        let u3 = u2 * u;
        (2.0 * u3 - 3.0 * u2 + 1.0) * y0
            + (u3 - 2.0 * u2 + u) * d0
            + (-2.0 * u3 + 3.0 * u2) * y1
            + (u3 - u2) * d1
    }

    #[inline]
    pub fn derivative(&self, t: f64) -> f64 {
        let (i, u) = self.locate(t);
        let h = self.step;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.derivs[i] * h, self.derivs[i + 1] * h);
        let u2 = u * u;
        ((6.0 * u2 - 6.0 * u) * y0
            + (3.0 * u2 - 4.0 * u + 1.0) * d0
            + (-6.0 * u2 + 6.0 * u) * y1
            + (3.0 * u2 - 2.0 * u) * d1)
            / h
    }
}

/// Tabulates `t ↦ ∫_origin^t f` over the domain of `f` with `cells` cells.
///
/// Each cell is integrated by adaptive Simpson; the derivative data of the
/// table is `f` itself, so interpolation error is fourth order.
pub fn primitive_table(f: &ScalarField, origin: f64, cells: usize, rtol: f64) -> HermiteTable {
    let d = f.domain();
    let cells = cells.max(2);
    let step = d.len() / cells as f64;
    let nodes: Vec<f64> = (0..=cells).map(|i| d.lo + i as f64 * step).collect();
    let mut values = Vec::with_capacity(nodes.len());
    let samples: Vec<f64> = nodes.iter().map(|&t| f.eval(t)).collect();
    // accuracy is relative to the whole table, not to each (possibly ~0) cell
    let scale = step * samples.iter().map(|v| v.abs()).sum::<f64>();
    let atol = rtol * scale / cells as f64;
    let mut acc = 0.0;
    values.push(0.0);
    for w in nodes.windows(2) {
        acc += integrate_piece(|t| f.eval(t), w[0], w[1], rtol, atol);
        values.push(acc);
    }
    // an origin on a node is hit exactly
    let k = ((origin - d.lo) / step).round();
    let at_origin = if (k * step + d.lo - origin).abs() <= 1e-12 * step && k >= 0.0 && (k as usize) <= cells {
        values[k as usize]
    } else {
        integrate_piece(|t| f.eval(t), d.lo, origin, rtol, atol * cells as f64)
    };
    for v in &mut values {
        *v -= at_origin;
    }
    HermiteTable::new(d.lo, step, values, samples)
}

/// Field form of [`primitive_table`].
pub fn primitive(f: &ScalarField, origin: f64, cells: usize, rtol: f64) -> ScalarField {
    ScalarField::from_table(primitive_table(f, origin, cells, rtol)).with_domain(f.domain())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_reproduced_exactly() {
        let f = |t: f64| t * t * t - t;
        let df = |t: f64| 3.0 * t * t - 1.0;
        let xs: Vec<f64> = (0..5).map(|i| -1.0 + 0.5 * i as f64).collect();
        let tab = HermiteTable::new(
            -1.0,
            0.5,
            xs.iter().map(|&x| f(x)).collect(),
            xs.iter().map(|&x| df(x)).collect(),
        );
        for t in [-0.9, -0.3, 0.1, 0.77] {
            assert!((tab.eval(t) - f(t)).abs() < 1e-14);
            assert!((tab.derivative(t) - df(t)).abs() < 1e-13);
        }
    }

    #[test]
    fn primitive_of_cosine_is_sine() {
        let f = ScalarField::new(Interval::symmetric(2.0), f64::cos);
        let p = primitive(&f, 0.0, 400, 1e-12);
        for t in [-2.0, -1.3, 0.0, 0.4, 1.99] {
            assert!((p.eval(t) - t.sin()).abs() < 1e-11, "{t}");
        }
    }
}
