//! Symbolic change of involution: a general problem becomes a periodic
//! reflection problem whose coefficients are again expressions.
//!
//! With `f(s) = g(s)` for `s ≤ 0` and `f(s) = φ(g(-s))` for `s > 0`, the
//! equation `d x' + a x(φ) + b x = h` for `y = x ∘ f` reads
//!
//! ```text
//! y' + (a∘f · f'/d∘f) y(-s) + (b∘f · f'/d∘f) y = h∘f · f'/d∘f.
//! ```

use involute_core::expr::BinOp;
use involute_core::{correspondence_map, Expr};

use crate::error::{CliError, CliResult};
use crate::spec::{target_half, Coef, GeneralSetup, Kind, ProblemSpec};

fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
    Expr::bin(op, l, r)
}

fn neg(e: Expr) -> Expr {
    Expr::Neg(Box::new(e))
}

/// Folds the unit and zero factors the construction introduces.
fn simplify(e: Expr) -> Expr {
    match e {
        Expr::Neg(x) => match simplify(*x) {
            Expr::Neg(y) => *y,
            Expr::Num(v) if v == 0.0 => Expr::Num(0.0),
            y => neg(y),
        },
        Expr::Call(f, x) => Expr::Call(f, Box::new(simplify(*x))),
        Expr::Bin(op, l, r) => {
            let (l, r) = (simplify(*l), simplify(*r));
            let is = |e: &Expr, v: f64| matches!(e, Expr::Num(x) if *x == v);
            match op {
                BinOp::Mul if is(&l, 0.0) || is(&r, 0.0) => Expr::Num(0.0),
                BinOp::Mul if is(&l, 1.0) => r,
                BinOp::Mul | BinOp::Div if is(&r, 1.0) => l,
                BinOp::Add if is(&l, 0.0) => r,
                BinOp::Add | BinOp::Sub if is(&r, 0.0) => l,
                BinOp::Div if is(&l, 0.0) => Expr::Num(0.0),
                _ => bin(op, l, r),
            }
        }
        other => other,
    }
}

/// `(f, f')` on one side of the fixed point.
struct Branch {
    f: Expr,
    df: Expr,
}

fn branches(spec: &ProblemSpec, half: f64, tau1: f64, t0: f64) -> CliResult<(Branch, Branch)> {
    let inv = spec
        .involution
        .as_ref()
        .ok_or_else(|| CliError::Spec("transform needs an involution".into()))?;
    let (g, dg) = match (&spec.g, &spec.dg) {
        (Some(g), Some(dg)) => (Expr::parse(g)?, Expr::parse(dg)?),
        (None, None) => {
            let slope = (t0 - tau1) / half;
            (
                bin(
                    BinOp::Add,
                    Expr::num(tau1),
                    bin(BinOp::Mul, bin(BinOp::Add, Expr::Var, Expr::num(half)), Expr::num(slope)),
                ),
                Expr::num(slope),
            )
        }
        _ => return Err(CliError::Spec("g and dg must be given together".into())),
    };
    let (phi, dphi) = (Expr::parse(&inv.phi)?, Expr::parse(&inv.dphi)?);
    let mirrored = neg(Expr::Var);
    let g_m = g.substitute(&mirrored);
    let right = Branch {
        f: phi.substitute(&g_m),
        // φ'(g(-s)) g'(-s) (-1)
        df: neg(bin(BinOp::Mul, dphi.substitute(&g_m), dg.substitute(&mirrored))),
    };
    Ok((Branch { f: g, df: dg }, right))
}

fn coefficient(e: &Expr, d: Option<&Expr>, br: &Branch) -> Expr {
    let scaled = bin(BinOp::Mul, e.substitute(&br.f), br.df.clone());
    match d {
        Some(d) => bin(BinOp::Div, scaled, d.substitute(&br.f)),
        None => scaled,
    }
}

/// The reflection problem equivalent to a `general` spec, as a `bvp` spec.
///
/// `setup` is the numeric form of the same spec; it validates the
/// involution and `g` before anything is written.
pub fn transform_spec(spec: &ProblemSpec, setup: &GeneralSetup) -> CliResult<(ProblemSpec, f64)> {
    if spec.kind != Kind::General {
        return Err(CliError::Spec("transform applies to general problems".into()));
    }
    let inv = &setup.problem.involution;
    let corr = correspondence_map(inv, &setup.target, setup.g.clone())?;
    let defect = corr.conjugation_defect(201);
    let half = target_half(inv);
    let (left, right) = branches(spec, half, inv.domain.lo, inv.fixed_point)?;
    let d = match &spec.d {
        Some(c) => Some(c.expr()?),
        None => None,
    };
    let piece = |c: &Coef| -> CliResult<Coef> {
        let e = c.expr()?;
        Ok(Coef::Piecewise {
            below: simplify(coefficient(&e, d.as_ref(), &left)).to_string(),
            above: simplify(coefficient(&e, d.as_ref(), &right)).to_string(),
            at: 0.0,
        })
    };
    let out = ProblemSpec {
        kind: Kind::Bvp,
        a: piece(&spec.a)?,
        b: piece(&spec.b)?,
        h: piece(&spec.h)?,
        half_period: Some(half),
        t0: None,
        c: None,
        d: None,
        involution: None,
        g: None,
        dg: None,
    };
    Ok((out, defect))
}
