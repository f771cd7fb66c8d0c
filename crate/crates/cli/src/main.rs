//! `involute`: classify, kernels, solutions, sign reports, involution
//! transforms and oracle checks for `x' + a x(-t) + b x = h`.

mod commands;
mod error;
mod output;
mod spec;
mod transform;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Options;
use crate::error::{CliError, CliResult};
use crate::spec::ProblemSpec;

const GRAMMAR: &str = "\
PROBLEM FILES (JSON):
  {\"kind\": \"ivp\", \"a\": \"2\", \"b\": \"0\", \"h\": \"cos(t)\", \"T\": 1, \"t0\": 0, \"c\": 1}
  {\"kind\": \"bvp\", \"a\": \"cos(t)\", \"b\": \"0.5*cos(t) + sin(t)\", \"h\": \"1\", \"T\": 1.5}
  {\"kind\": \"general\", \"a\": \"1\", \"b\": \"0\", \"h\": \"1\", \"d\": \"1\",
   \"involution\": {\"phi\": \"1/t\", \"dphi\": \"-1/t^2\", \"domain\": [0.5, 2]}}
  ivp: x' + a x(-t) + b x = h on [-T, T], x(t0) = c, constant a, b (T defaults to 1).
  bvp: the same equation with x(-T) = x(T).
  general: d x' + a x(phi(t)) + b x = h, periodic on the involution's domain;
  optional \"g\"/\"dg\" fix the change of variables (default: affine).
  A coefficient may also be {\"below\": EXPR, \"above\": EXPR, \"at\": POINT}.

EXPRESSIONS:
  numbers, t, pi; + - * / ^ (right-assoc) and unary -;
  sin cos tan sinh cosh exp ln abs atan atanh sqrt.
  Precedence: ^ > unary - > * / > + -.

EXIT CODES:
  0 ok, 2 unsupported or degenerate case, 3 resonance, 4 convergence failure, 5 parse error.";

#[derive(Parser)]
#[command(name = "involute", version, about = "Equations with a reflected argument", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Case, thresholds and resonance flags.
    Classify(Common),
    /// Green's function on an n x n grid (CSV t,s,G).
    Green(Common),
    /// Solution on n nodes (CSV t,u) and a residual summary.
    Solve(Common),
    /// Sign report; with --out, the sign of G on a grid (CSV t,s,sign).
    Sign(Common),
    /// Rewrite a general problem as a reflection problem (JSON).
    Transform(Common),
    /// Compare the closed-form solution with an RK4 / shooting oracle.
    Check(Common),
}

#[derive(Args)]
struct Common {
    /// Problem file.
    #[arg(long)]
    spec: PathBuf,
    /// Output file (written atomically); stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid size.
    #[arg(long, default_value_t = 513)]
    n: usize,
    /// Tolerance of the Picard iteration.
    #[arg(long)]
    tol: Option<f64>,
    /// Iterate even when the contraction constant is not below 1.
    #[arg(long)]
    force: bool,
    /// Kernel grid range in t, "lo,hi".
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    t_range: Option<(f64, f64)>,
    /// Kernel grid range in s, "lo,hi".
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    s_range: Option<(f64, f64)>,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if !(lo < hi) {
        return Err(format!("empty range {lo},{hi}"));
    }
    Ok((lo, hi))
}

type Command = fn(&ProblemSpec, &Options) -> CliResult<String>;

fn run(cli: Cli) -> CliResult<String> {
    let (args, cmd): (Common, Command) = match cli.cmd {
        Cmd::Classify(c) => (c, commands::classify),
        Cmd::Green(c) => (c, commands::green),
        Cmd::Solve(c) => (c, commands::solve),
        Cmd::Sign(c) => (c, commands::sign),
        Cmd::Transform(c) => (c, commands::transform),
        Cmd::Check(c) => (c, commands::check),
    };
    let spec = ProblemSpec::load(&args.spec)?;
    let opts = Options {
        out: args.out,
        n: args.n,
        tol: args.tol,
        force: args.force,
        t_range: args.t_range,
        s_range: args.s_range,
    };
    cmd(&spec, &opts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // keep stdout clean when it carries the data
    let data_on_stdout = matches!(
        &cli.cmd,
        Cmd::Green(c) | Cmd::Solve(c) | Cmd::Transform(c) if c.out.is_none()
    );
    match run(cli) {
        Ok(report) if data_on_stdout => {
            eprintln!("{report}");
            ExitCode::SUCCESS
        }
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(CliError::Exit(msg, code)) => {
            eprintln!("{msg}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
