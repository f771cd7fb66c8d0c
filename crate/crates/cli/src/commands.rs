//! The six subcommands. Each returns the human-readable report; data goes
//! through [`Options::emit`].

use std::path::PathBuf;

use involute_core::bvp::{
    constant_sign_check, contraction_constant, green_bvp_nonconstant, solve_periodic, solve_resonant_c4,
    solve_resonant_c5, PicardOptions, SignCheck, SignVerdict, SolutionFamily,
};
use involute_core::classify::CLASSIFY_TOL;
use involute_core::ivp::{checked_sign_report, eta, green_ivp, sigma_ab, solve_ivp, uniqueness_check};
use involute_core::numerics::{oracle_bvp_shooting, oracle_ivp, residual_check, ResidualOptions};
use involute_core::{
    change_involution, classify_bvp, classify_ivp, correspondence_map, transport_solution, verify_involution,
    BvpProblem, CaseTag, Error as CoreError, GreenKernel, Grid, Interval, IvpProblem, ScalarField,
};

use crate::error::{CliError, CliResult};
use crate::output::{csv, emit, fmt_g};
use crate::spec::{GeneralSetup, Problem, ProblemSpec};
use crate::transform::transform_spec;

/// Flags shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Options {
    pub out: Option<PathBuf>,
    pub n: usize,
    pub tol: Option<f64>,
    pub force: bool,
    pub t_range: Option<(f64, f64)>,
    pub s_range: Option<(f64, f64)>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            out: None,
            n: 513,
            tol: None,
            force: false,
            t_range: None,
            s_range: None,
        }
    }
}

impl Options {
    fn emit(&self, contents: &str) -> CliResult<()> {
        emit(self.out.as_deref(), contents)
    }

    fn picard(&self) -> PicardOptions {
        let mut p = PicardOptions {
            force: self.force,
            ..Default::default()
        };
        if let Some(tol) = self.tol {
            p.tol = tol;
        }
        p
    }

    fn nodes(&self, dom: Interval) -> Vec<f64> {
        dom.linspace(self.n.max(2))
    }
}

// ------------------------------------------------------------------ classify

pub fn classify(spec: &ProblemSpec, _opts: &Options) -> CliResult<String> {
    match spec.build()? {
        Problem::Ivp(p) => classify_ivp_report(&p),
        Problem::Bvp(p) => classify_bvp_report(&p),
        Problem::General(setup) => {
            let inv = &setup.problem.involution;
            let check = verify_involution(&inv.phi, inv.domain, 1001)?;
            let bvp = reflection_problem(&setup)?;
            Ok(format!(
                "involution on {} with fixed point {}, max |φ(φ(t)) - t| = {:.3e}\nreflection problem on {}: {}",
                inv.domain,
                fmt_g(inv.fixed_point, 12),
                check.max_defect,
                bvp.domain(),
                classify_bvp_report(&bvp)?
            ))
        }
    }
}

fn classify_ivp_report(p: &IvpProblem) -> CliResult<String> {
    let tag = classify_ivp(p.a, p.b)?;
    let threshold = match tag {
        CaseTag::C1 if p.b == 0.0 => format!(", η = {:.6}", eta(p.a, p.b)),
        CaseTag::C1 => format!(", η = {:.6}, η(a,-b) = {:.6}", eta(p.a, p.b), eta(p.a, -p.b)),
        CaseTag::C2 => format!(", σ = {:.6}", sigma_ab(p.a, p.b)),
        CaseTag::C3_1 => format!(", 1/a = {:.6}", 1.0 / p.a),
        _ => format!(", 1/|b| = {:.6}", 1.0 / p.b.abs()),
    };
    let unique = if uniqueness_check(p.a, p.b, p.t0)? {
        format!("unique solution for t0 = {}", fmt_g(p.t0, 12))
    } else {
        format!("resonant: the homogeneous solution vanishes at t0 = {}", fmt_g(p.t0, 12))
    };
    Ok(format!("{}{threshold}\n{unique}", tag.name()))
}

fn sign_line(check: &SignCheck) -> String {
    let mut s = check.case.name().to_string();
    if let Some(k) = check.case.k() {
        if !matches!(check.case, CaseTag::C3p) {
            s += &format!(", k={}", fmt_g(k, 6));
        }
    }
    match check.threshold {
        Some(t) => s += &format!(", σ(k)={t:.6}"),
        None => s += ", σ(k)=∞",
    }
    s += &format!(", |A(T)|={}", fmt_g(check.a_of_t.abs(), 6));
    match check.verdict {
        SignVerdict::Unknown => s += " → sign not guaranteed",
        v => s += &format!(" → constant sign ({v})"),
    }
    s
}

fn classify_bvp_report(p: &BvpProblem) -> CliResult<String> {
    let tag = classify_bvp(&p.a, &p.b, CLASSIFY_TOL)?;
    Ok(match tag {
        CaseTag::C1p { .. } | CaseTag::C2p { .. } | CaseTag::C3p => match constant_sign_check(p) {
            Ok(check) => sign_line(&check),
            Err(CoreError::Resonant(why)) => format!("{} (resonant: {why})", tag.name()),
            Err(e) => return Err(e.into()),
        },
        CaseTag::C4p | CaseTag::C5p => format!("{} (resonant)", tag.name()),
        CaseTag::Mixed => {
            let c = contraction_constant(p)?;
            let verdict = if c < 1.0 {
                "Picard iteration converges"
            } else {
                "convergence not guaranteed (--force to iterate anyway)"
            };
            format!("Mixed, contraction constant = {c:.6} → {verdict}")
        }
        other => other.name().to_string(),
    })
}

// --------------------------------------------------------------------- green

fn ranges(opts: &Options, dom: Interval) -> (Vec<f64>, Vec<f64>) {
    let lin = |r: Option<(f64, f64)>| {
        let (lo, hi) = r.unwrap_or((dom.lo, dom.hi));
        let n = opts.n.max(2);
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect::<Vec<_>>()
    };
    (lin(opts.t_range), lin(opts.s_range))
}

fn kernel_for(problem: &Problem) -> CliResult<(GreenKernel, Interval)> {
    match problem {
        Problem::Ivp(p) => Ok((green_ivp(p.a, p.b)?, p.domain())),
        Problem::Bvp(p) => {
            let tag = classify_bvp(&p.a, &p.b, CLASSIFY_TOL)?;
            match tag {
                CaseTag::C4p | CaseTag::C5p => Err(CoreError::Resonant(format!("{tag} has no Green's function")).into()),
                CaseTag::Mixed => Err(CoreError::Unsupported(
                    "no closed-form kernel for mixed coefficients; use solve".into(),
                )
                .into()),
                _ => Ok((green_bvp_nonconstant(p)?, p.domain())),
            }
        }
        Problem::General(_) => Err(CoreError::Unsupported(
            "kernels are defined for the reflection problem; transform first".into(),
        )
        .into()),
    }
}

pub fn green(spec: &ProblemSpec, opts: &Options) -> CliResult<String> {
    let (kernel, dom) = kernel_for(&spec.build()?)?;
    let (ts, ss) = ranges(opts, dom);
    let values = kernel.sample(&ts, &ss);
    let rows = ts
        .iter()
        .enumerate()
        .flat_map(|(i, &t)| ss.iter().enumerate().map(move |(j, &s)| (i, j, t, s)))
        .map(|(i, j, t, s)| vec![t, s, values[i * ss.len() + j]]);
    opts.emit(&csv(&["t", "s", "G"], rows))?;
    Ok(format!(
        "{} x {} kernel values, jump {} across the diagonal",
        ts.len(),
        ss.len(),
        fmt_g(kernel.jump(), 6)
    ))
}

// --------------------------------------------------------------------- solve

/// Nodes of the residual check, independent of `--n`.
pub const RESIDUAL_GRID: usize = 101;

fn residual_line(u: &ScalarField, a: &ScalarField, b: &ScalarField, h: &ScalarField) -> String {
    let dom = u.domain();
    let grid = Grid::symmetric(dom.half_width(), RESIDUAL_GRID).expect("grid");
    let r = residual_check(u, a, b, h, &grid, &ResidualOptions::default());
    format!("residual: max relative {:.3e} over {} nodes", r.max_rel, r.checked)
}

/// The general problem posed for the reflection.
fn reflection_problem(setup: &GeneralSetup) -> CliResult<BvpProblem> {
    let corr = correspondence_map(&setup.problem.involution, &setup.target, setup.g.clone())?;
    Ok(change_involution(&setup.problem, &setup.target, &corr)?.to_reflection_bvp()?)
}

fn family(p: &BvpProblem, tag: CaseTag) -> CliResult<SolutionFamily> {
    Ok(match tag {
        CaseTag::C4p => solve_resonant_c4(p)?,
        _ => solve_resonant_c5(p)?,
    })
}

pub fn solve(spec: &ProblemSpec, opts: &Options) -> CliResult<String> {
    match spec.build()? {
        Problem::Ivp(p) => {
            let u = solve_ivp(&p)?;
            let dom = p.domain();
            opts.emit(&csv(&["t", "u"], opts.nodes(dom).into_iter().map(|t| vec![t, u.eval(t)])))?;
            let (a, b) = (ScalarField::constant(dom, p.a), ScalarField::constant(dom, p.b));
            Ok(format!(
                "{}; {}; |u(t0) - c| = {:.3e}",
                classify_ivp(p.a, p.b)?.name(),
                residual_line(&u, &a, &b, &p.h),
                (u.eval(p.t0) - p.c).abs()
            ))
        }
        Problem::Bvp(p) => {
            let tag = classify_bvp(&p.a, &p.b, CLASSIFY_TOL)?;
            if tag.is_resonant() {
                return solve_resonant(&p, tag, opts);
            }
            let (tag, u) = solve_periodic(&p, &opts.picard())?;
            write_periodic(&p, &u, opts)?;
            Ok(format!("{}; {}", tag.name(), periodic_summary(&p, &u)))
        }
        Problem::General(setup) => {
            let inv = &setup.problem.involution;
            let corr = correspondence_map(inv, &setup.target, setup.g.clone())?;
            let bvp = change_involution(&setup.problem, &setup.target, &corr)?.to_reflection_bvp()?;
            let (tag, y) = solve_periodic(&bvp, &opts.picard())?;
            let x = transport_solution(&y, &corr);
            let dom = inv.domain;
            opts.emit(&csv(&["t", "x"], opts.nodes(dom).into_iter().map(|t| vec![t, x.eval(t)])))?;
            Ok(format!(
                "reflection problem {}; residual: max relative {:.3e} on the original equation; |x({}) - x({})| = {:.3e}",
                tag.name(),
                setup.problem.residual(&x, RESIDUAL_GRID, 1e-4),
                fmt_g(dom.lo, 12),
                fmt_g(dom.hi, 12),
                (x.eval(dom.lo) - x.eval(dom.hi)).abs()
            ))
        }
    }
}

fn write_periodic(p: &BvpProblem, u: &ScalarField, opts: &Options) -> CliResult<()> {
    opts.emit(&csv(&["t", "u"], opts.nodes(p.domain()).into_iter().map(|t| vec![t, u.eval(t)])))
}

fn periodic_summary(p: &BvpProblem, u: &ScalarField) -> String {
    let t = p.half_period();
    format!(
        "{}; |u(T) - u(-T)| = {:.3e}",
        residual_line(u, &p.a, &p.b, &p.h),
        (u.eval(t) - u.eval(-t)).abs()
    )
}

/// Writes the family `u + c w` as columns `u`, `w` when solvable; the exit
/// code is 3 either way.
fn solve_resonant(p: &BvpProblem, tag: CaseTag, opts: &Options) -> CliResult<String> {
    let fam = family(p, tag)?;
    if !fam.solvable {
        return Err(CliError::Exit(
            format!(
                "{} (resonant): no solution, solvability integral = {:.6e}",
                tag.name(),
                fam.obstruction
            ),
            3,
        ));
    }
    let rows = opts
        .nodes(p.domain())
        .into_iter()
        .map(|t| vec![t, fam.particular.eval(t), fam.homogeneous.eval(t)]);
    opts.emit(&csv(&["t", "u", "w"], rows))?;
    Err(CliError::Exit(
        format!(
            "{} (resonant): solutions u + c w for every real c, solvability integral = {:.3e}; {}",
            tag.name(),
            fam.obstruction,
            periodic_summary(p, &fam.particular)
        ),
        3,
    ))
}

// ---------------------------------------------------------------------- sign

pub fn sign(spec: &ProblemSpec, opts: &Options) -> CliResult<String> {
    let problem = spec.build()?;
    let report = match &problem {
        Problem::Ivp(p) => checked_sign_report(p.a, p.b)?.to_string(),
        Problem::Bvp(p) => {
            let tag = classify_bvp(&p.a, &p.b, CLASSIFY_TOL)?;
            match tag {
                CaseTag::C1p { .. } | CaseTag::C2p { .. } | CaseTag::C3p => {
                    let check = constant_sign_check(p)?;
                    format!(
                        "{}\nsampled G ∈ [{:.6e}, {:.6e}]{}",
                        sign_line(&check),
                        check.sampled_min,
                        check.sampled_max,
                        if check.sampled_sign_changes() { ", sign changes" } else { "" }
                    )
                }
                CaseTag::C4p | CaseTag::C5p => {
                    return Err(CoreError::Resonant(format!("{tag} has no Green's function")).into())
                }
                _ => {
                    return Err(CoreError::Unsupported(
                        "sign theory covers the reducible cases C1'-C3'".into(),
                    )
                    .into())
                }
            }
        }
        Problem::General(_) => {
            return Err(CoreError::Unsupported("transform to the reflection problem first".into()).into())
        }
    };
    if opts.out.is_some() {
        let (kernel, dom) = kernel_for(&problem)?;
        let (ts, ss) = ranges(opts, dom);
        let values = kernel.sample(&ts, &ss);
        let rows = ts
            .iter()
            .enumerate()
            .flat_map(|(i, &t)| ss.iter().enumerate().map(move |(j, &s)| (i, j, t, s)))
            .map(|(i, j, t, s)| {
                let g = values[i * ss.len() + j];
                vec![t, s, if g > 0.0 { 1.0 } else if g < 0.0 { -1.0 } else { 0.0 }]
            });
        opts.emit(&csv(&["t", "s", "sign"], rows))?;
    }
    Ok(report)
}

// ----------------------------------------------------------------- transform

pub fn transform(spec: &ProblemSpec, opts: &Options) -> CliResult<String> {
    let Problem::General(setup) = spec.build()? else {
        return Err(CliError::Spec("transform needs a general problem with an involution".into()));
    };
    let (out, defect) = transform_spec(spec, &setup)?;
    let mut json = serde_json::to_string_pretty(&out)?;
    json.push('\n');
    opts.emit(&json)?;
    Ok(format!(
        "reflection problem on [-{0}, {0}], max |f(ψ(s)) - φ(f(s))| = {defect:.3e}",
        fmt_g(out.half_period.unwrap_or_default(), 12)
    ))
}

// --------------------------------------------------------------------- check

/// Tolerances of the oracle comparison.
pub const IVP_CHECK_TOL: f64 = 1e-6;
pub const BVP_CHECK_TOL: f64 = 1e-5;

pub fn check(spec: &ProblemSpec, opts: &Options) -> CliResult<String> {
    let (label, diff, tol, points) = match spec.build()? {
        Problem::Ivp(p) => {
            let u = solve_ivp(&p)?;
            let grid = Grid::symmetric(p.domain().half_width(), opts.n.max(2001) | 1)?;
            let v = oracle_ivp(&p, &grid)?;
            let ts = opts.nodes(p.domain());
            ("RK4", max_diff(&u, &v, &ts), IVP_CHECK_TOL, ts.len())
        }
        Problem::Bvp(p) => {
            let (_, u) = solve_periodic(&p, &opts.picard())?;
            let v = oracle_bvp_shooting(&p)?;
            let ts = opts.nodes(p.domain());
            ("shooting", max_diff(&u, &v, &ts), BVP_CHECK_TOL, ts.len())
        }
        Problem::General(setup) => {
            let p = reflection_problem(&setup)?;
            let (_, u) = solve_periodic(&p, &opts.picard())?;
            let v = oracle_bvp_shooting(&p)?;
            let ts = opts.nodes(p.domain());
            ("shooting (reflection problem)", max_diff(&u, &v, &ts), BVP_CHECK_TOL, ts.len())
        }
    };
    let line = format!("max |closed form - {label} oracle| = {diff:.3e} over {points} points");
    if diff <= tol {
        Ok(format!("{line}: agree (tol {tol:.0e})"))
    } else {
        Err(CliError::Exit(format!("{line}: DISAGREE (tol {tol:.0e})"), 4))
    }
}

fn max_diff(u: &ScalarField, v: &ScalarField, ts: &[f64]) -> f64 {
    ts.iter().map(|&t| (u.eval(t) - v.eval(t)).abs()).fold(0.0, f64::max)
}
