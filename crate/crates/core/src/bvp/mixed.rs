//! Coefficients without parity structure, solved by contraction.
//!
//! With `v = a + b` the equation reads `x' + v x = h + a (x(t) - x(-t))`,
//! and `x(t) - x(-t) = ∫_{-t}^{t} (h - a x(-·) - b x)`. Inverting
//! `x' + v x` with the periodic kernel `G₃` gives the fixed-point map
//!
//! ```text
//! x ↦ ∫ G₃(t, s) [a(s) ∫_{-s}^{s} (h - a(r) x(-r) - b(r) x(r)) dr + h(s)] ds.
//! ```

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::ivp::SOLVE_RTOL;
use crate::kernel::{GreenKernel, Support};
use crate::numerics::grid::Grid;
use crate::numerics::hermite::{primitive_table, HermiteTable};
use crate::numerics::quad::{integrate_lenient, lp_norm};
use crate::problem::BvpProblem;

use super::primitives::PRIMITIVE_CELLS;

/// `|∫v|` below this (relative to `1 + ‖v‖₁`) counts as zero mean.
pub const ZERO_MEAN_TOL: f64 = 1e-12;

fn mean_integral(v: &ScalarField, t_half: f64) -> Result<HermiteTable> {
    let v = v.with_domain(crate::field::Interval::symmetric(t_half));
    let tab = primitive_table(&v, -t_half, PRIMITIVE_CELLS, SOLVE_RTOL);
    let total = tab.eval(t_half);
    let l1 = lp_norm(&v, 1.0, &[0.0], SOLVE_RTOL);
    if total.abs() <= ZERO_MEAN_TOL * (1.0 + l1) {
        return Err(Error::Resonant(format!(
            "∫v = {total:e}: x' + v x = h has no periodic kernel"
        )));
    }
    Ok(tab)
}

/// Periodic kernel of `u' + v u = h`:
///
/// ```text
/// G₃(t, s) = τ e^{∫_t^s v}        s ≤ t
///          = (τ - 1) e^{∫_t^s v}  s > t,    τ = 1 / (1 - e^{-∫v})
/// ```
pub fn green_ode_periodic(v: &ScalarField, t_half: f64) -> Result<GreenKernel> {
    let tab = mean_integral(v, t_half)?;
    let tau = 1.0 / (1.0 - (-tab.eval(t_half)).exp());
    let eval = move |t: f64, s: f64| {
        let e = (tab.eval(s) - tab.eval(t)).exp();
        if s <= t {
            tau * e
        } else {
            (tau - 1.0) * e
        }
    };
    Ok(GreenKernel::new(t_half, 1.0, Support::Square, eval)
        .with_regions(["s <= t: τ e^{∫_t^s v}", "s > t: (τ-1) e^{∫_t^s v}"])
        .with_breakpoints(|t| vec![t]))
}

/// `F(v) = e^{‖v‖₁} / |e^{‖v⁺‖₁} - e^{‖v⁻‖₁}|`, a bound for `|G₃|`.
pub fn bound_f(v: &ScalarField, t_half: f64) -> Result<f64> {
    mean_integral(v, t_half)?;
    let norm = |g: fn(f64) -> f64| integrate_lenient(|t| g(v.eval(t)), -t_half, t_half, &[0.0], SOLVE_RTOL);
    let n1 = norm(f64::abs);
    let np = norm(|x| x.max(0.0));
    let nm = norm(|x| (-x).max(0.0));
    // e^{n1} / |e^{np} - e^{nm}| with n1 = np + nm, written to avoid overflow
    let (hi, lo) = (np.max(nm), np.min(nm));
    Ok((lo).exp() / (1.0 - (lo - hi).exp()) * (n1 - np - nm).exp())
}

/// `F(v) ‖a‖₁ min_p (2T)^{1/p} (‖a‖_{p*} + ‖b‖_{p*})` over `p ∈ {1, 2, ∞}`.
pub fn contraction_constant(p: &BvpProblem) -> Result<f64> {
    let t_half = p.half_period();
    let v = p.a.add(&p.b);
    let f = bound_f(&v, t_half)?;
    let norm = |g: &ScalarField, q: f64| lp_norm(g, q, &[0.0], SOLVE_RTOL);
    let len = 2.0 * t_half;
    let m = [
        len * (norm(&p.a, f64::INFINITY) + norm(&p.b, f64::INFINITY)),
        len.sqrt() * (norm(&p.a, 2.0) + norm(&p.b, 2.0)),
        norm(&p.a, 1.0) + norm(&p.b, 1.0),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min);
    Ok(f * norm(&p.a, 1.0) * m)
}

#[derive(Debug, Clone)]
pub struct PicardOptions {
    /// Sup-norm tolerance on successive iterates and successive refinements.
    pub tol: f64,
    pub max_iter: usize,
    /// Nodes of the first grid (odd).
    pub n: usize,
    /// Iterate even when the contraction constant is not below 1.
    pub force: bool,
    pub max_levels: usize,
}

impl Default for PicardOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 500,
            n: 513,
            force: false,
            max_levels: 7,
        }
    }
}

/// Result of [`picard_on_grid`].
#[derive(Debug, Clone)]
pub struct GridIterate {
    pub values: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct PicardOutcome {
    pub solution: ScalarField,
    pub contraction: f64,
    /// Iterations on the first grid, from a zero start.
    pub first_level_iterations: usize,
    pub total_iterations: usize,
    /// Nodes of the finest grid used.
    pub finest: usize,
}

struct Sampled {
    a: Vec<f64>,
    b: Vec<f64>,
    h: Vec<f64>,
    /// `e^{V(t_j)}`, `V(t) = ∫_{-T}^t v`.
    ev: Vec<f64>,
    tau: f64,
}

impl Sampled {
    fn new(p: &BvpProblem, grid: &Grid, v_tab: &HermiteTable) -> Self {
        let nodes = grid.nodes();
        let s = |f: &ScalarField| nodes.iter().map(|&t| f.eval(t)).collect::<Vec<_>>();
        let t_half = p.half_period();
        Self {
            a: s(&p.a),
            b: s(&p.b),
            h: s(&p.h),
            ev: nodes.iter().map(|&t| v_tab.eval(t).exp()).collect(),
            tau: 1.0 / (1.0 - (-v_tab.eval(t_half)).exp()),
        }
    }
}

/// One application of the fixed-point map, trapezoidal rule throughout.
///
/// `x_j = e^{-V_j} [τ ∫_{-T}^{t_j} e^V R + (τ-1) ∫_{t_j}^{T} e^V R]` with all
/// integrals taken from running sums, so a sweep is `O(n)`.
fn sweep(x: &[f64], grid: &Grid, d: &Sampled, out: &mut [f64], buf: &mut [f64]) {
    let n = x.len();
    let hstep = grid.step();
    // q = h - a x(-·) - b x and its running integral P
    let q = |j: usize| d.h[j] - d.a[j] * x[n - 1 - j] - d.b[j] * x[j];
    buf[0] = 0.0;
    let mut prev = q(0);
    for j in 1..n {
        let cur = q(j);
        buf[j] = buf[j - 1] + 0.5 * hstep * (prev + cur);
        prev = cur;
    }
    // out temporarily holds e^V R
    for j in 0..n {
        let inner = buf[j] - buf[n - 1 - j];
        out[j] = d.ev[j] * (d.a[j] * inner + d.h[j]);
    }
    // running integral C of e^V R, in place
    let mut acc = 0.0;
    let mut prev = out[0];
    out[0] = 0.0;
    for j in 1..n {
        let cur = out[j];
        acc += 0.5 * hstep * (prev + cur);
        prev = cur;
        out[j] = acc;
    }
    let total = acc;
    for j in 0..n {
        out[j] = (out[j] + (d.tau - 1.0) * total) / d.ev[j];
    }
}

fn iterate(
    grid: &Grid,
    d: &Sampled,
    start: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<GridIterate> {
    let n = grid.len();
    let mut x = start;
    let mut next = vec![0.0; n];
    let mut buf = vec![0.0; n];
    for it in 1..=max_iter {
        sweep(&x, grid, d, &mut next, &mut buf);
        let change = x.iter().zip(&next).fold(0.0f64, |m, (u, v)| m.max((u - v).abs()));
        let scale = 1.0 + next.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        std::mem::swap(&mut x, &mut next);
        if !change.is_finite() {
            return Err(Error::Convergence(format!("iterates diverged after {it} steps")));
        }
        if change <= tol * scale {
            return Ok(GridIterate {
                values: x,
                iterations: it,
            });
        }
    }
    Err(Error::Convergence(format!(
        "no convergence to {tol:e} within {max_iter} iterations on {n} nodes"
    )))
}

/// Iterates the fixed-point map on `grid` from `x0` (zero if `None`) until
/// the sup-norm change is at most `tol · (1 + max|x|)`.
///
/// Does not check the contraction constant.
pub fn picard_on_grid(
    p: &BvpProblem,
    grid: &Grid,
    tol: f64,
    max_iter: usize,
    x0: Option<&[f64]>,
) -> Result<GridIterate> {
    let v = p.a.add(&p.b);
    let v_tab = mean_integral(&v, p.half_period())?;
    let d = Sampled::new(p, grid, &v_tab);
    let start = x0.map_or_else(|| vec![0.0; grid.len()], <[f64]>::to_vec);
    iterate(grid, &d, start, tol, max_iter)
}

/// Linear interpolation onto the refined grid.
fn prolong(x: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * x.len() - 1);
    for w in x.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.push(*x.last().unwrap());
    out
}

/// Picard iteration with grid doubling and Richardson extrapolation.
///
/// Each level halves the step and restarts from the previous iterate; the
/// extrapolated values `(4 x_{h/2} - x_h)/3` of consecutive levels are
/// compared on the coarse nodes until they differ by at most `tol`. The
/// result interpolates the last extrapolation with cubic Hermite pieces,
/// slopes taken from the equation itself.
pub fn picard_solve(p: &BvpProblem, opts: &PicardOptions) -> Result<PicardOutcome> {
    let contraction = contraction_constant(p)?;
    if contraction >= 1.0 && !opts.force {
        return Err(Error::ContractionNotGuaranteed { constant: contraction });
    }
    let t_half = p.half_period();
    let v_tab = mean_integral(&p.a.add(&p.b), t_half)?;
    // iterate well below the refinement tolerance so that extrapolation
    // sees discretisation error only
    let inner_tol = 1e-3 * opts.tol;

    let mut grid = Grid::symmetric(t_half, opts.n)?;
    let first = iterate(&grid, &Sampled::new(p, &grid, &v_tab), vec![0.0; grid.len()], inner_tol, opts.max_iter)?;
    let first_level_iterations = first.iterations;
    let mut total = first.iterations;
    let mut coarse = first.values;
    let mut last_extrap: Option<Vec<f64>> = None;

    for _ in 0..opts.max_levels {
        let fine_grid = grid.refined();
        let d = Sampled::new(p, &fine_grid, &v_tab);
        let fine = iterate(&fine_grid, &d, prolong(&coarse), inner_tol, opts.max_iter)?;
        total += fine.iterations;
        let extrap: Vec<f64> = coarse
            .iter()
            .enumerate()
            .map(|(j, &xc)| (4.0 * fine.values[2 * j] - xc) / 3.0)
            .collect();
        let done = last_extrap.as_ref().is_some_and(|prev| {
            let scale = 1.0 + extrap.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let diff = prev
                .iter()
                .enumerate()
                .fold(0.0f64, |m, (j, &y)| m.max((extrap[2 * j] - y).abs()));
            diff <= opts.tol * scale
        });
        if done {
            return Ok(PicardOutcome {
                solution: hermite_solution(p, &grid, &extrap),
                contraction,
                first_level_iterations,
                total_iterations: total,
                finest: fine_grid.len(),
            });
        }
        last_extrap = Some(extrap);
        grid = fine_grid;
        coarse = fine.values;
    }
    Err(Error::Convergence(format!(
        "refinement did not settle to {:e} within {} levels",
        opts.tol, opts.max_levels
    )))
}

fn hermite_solution(p: &BvpProblem, grid: &Grid, x: &[f64]) -> ScalarField {
    let n = x.len();
    let nodes = grid.nodes();
    let derivs = (0..n)
        .map(|j| {
            let t = nodes[j];
            p.h.eval(t) - p.a.eval(t) * x[n - 1 - j] - p.b.eval(t) * x[j]
        })
        .collect();
    let tab = HermiteTable::new(nodes[0], grid.step(), x.to_vec(), derivs);
    ScalarField::from_table(tab).with_domain(p.domain())
}

/// Unique solution when the contraction constant is below 1.
pub fn solve_mixed_picard(p: &BvpProblem, tol: f64, max_iter: usize) -> Result<ScalarField> {
    let opts = PicardOptions {
        tol,
        max_iter,
        ..PicardOptions::default()
    };
    Ok(picard_solve(p, &opts)?.solution)
}
