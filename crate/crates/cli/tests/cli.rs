use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_involute"))
}

struct Ws {
    dir: TempDir,
}

impl Ws {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn spec(&self, name: &str, json: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, json).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn run(cmd: &str, spec: &Path, extra: &[&str]) -> Output {
    bin().arg(cmd).arg("--spec").arg(spec).args(extra).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

const RECIPROCAL: &str = r#"{"kind":"general","a":"1","b":"0","h":"t",
    "involution":{"phi":"1/t","dphi":"-1/t^2","domain":[0.5,2]}}"#;

#[test]
fn classify_ivp_threshold() {
    let ws = Ws::new();
    let o = run("classify", &ws.spec("p.json", r#"{"kind":"ivp","a":"2","b":"0"}"#), &[]);
    assert_eq!(o.status.code(), Some(0));
    // η = π/(2|a|)
    assert!(stdout(&o).starts_with("C1, η = 0.785398\n"), "{}", stdout(&o));
}

#[test]
fn classify_bvp_sign_line() {
    let ws = Ws::new();
    let p = ws.spec(
        "p.json",
        r#"{"kind":"bvp","a":"cos(t)","b":"0.5*cos(t)+sin(t)","T":1.5707963}"#,
    );
    let o = run("classify", &p, &[]);
    assert_eq!(o.status.code(), Some(0));
    // σ(1/2) = (π/3)/√3
    assert_eq!(
        stdout(&o).trim(),
        "C1', k=0.5, σ(k)=0.604600, |A(T)|=1 → sign not guaranteed"
    );
}

#[test]
fn classify_resonant_and_mixed() {
    let ws = Ws::new();
    let o = run("classify", &ws.spec("c4.json", r#"{"kind":"bvp","a":"1","b":"-1","T":1}"#), &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "C4' (resonant)");
    let o = run("classify", &ws.spec("s.json", RECIPROCAL), &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("fixed point 1,"), "{out}");
    assert!(out.contains("Mixed, contraction constant = 2.89"), "{out}");
}

#[test]
fn parse_errors_exit_5() {
    let ws = Ws::new();
    let o = run("classify", &ws.spec("p.json", r#"{"kind":"bvp","a":"sen(t)","b":"0","T":1}"#), &[]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("offset 0"), "{}", stderr(&o));
    let o = run("classify", &ws.spec("q.json", r#"{"kind":"bvp","a":"1""#), &[]);
    assert_eq!(o.status.code(), Some(5));
    let o = run("solve", &ws.spec("r.json", r#"{"kind":"bvp","a":"1","b":"0"}"#), &[]);
    assert_eq!(o.status.code(), Some(5), "bvp without T");
}

#[test]
fn solve_zero_forcing_is_zero() {
    let ws = Ws::new();
    let p = ws.spec("p.json", r#"{"kind":"bvp","a":"1 + 0.2*cos(t)","b":"0.3*t","T":1}"#);
    let o = run("solve", &p, &["--n", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("t,u\n"));
    let r = rows(&out);
    assert_eq!(r.len(), 11);
    assert!(r.iter().all(|row| row[1] == 0.0));
}

#[test]
fn solve_constant_bvp_closed_form() {
    // x = cos t is periodic and x' + x(-t) = cos t - sin t
    let ws = Ws::new();
    let p = ws.spec("p.json", r#"{"kind":"bvp","a":"1","b":"0","h":"cos(t) - sin(t)","T":1}"#);
    let out_path = ws.path("u.csv");
    let o = run("solve", &p, &["--n", "21", "--out", out_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("residual"));
    let r = rows(&std::fs::read_to_string(&out_path).unwrap());
    assert_eq!(r.len(), 21);
    for row in r {
        assert!((row[1] - row[0].cos()).abs() < 1e-9, "{row:?}");
    }
}

#[test]
fn ivp_solution_matches_oracle() {
    let ws = Ws::new();
    let p = ws.spec(
        "p.json",
        r#"{"kind":"ivp","a":"1.5","b":"-0.4","h":"exp(t) - t","T":1,"t0":0.25,"c":2}"#,
    );
    let o = run("check", &p, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("RK4 oracle"), "{}", stdout(&o));
    let o = run("solve", &p, &["--n", "5"]);
    let r = rows(&stdout(&o));
    let at = r.iter().find(|row| row[0] == 0.0).unwrap();
    assert!(r.len() == 5 && at[1].is_finite());
}

#[test]
fn check_bvp_against_shooting() {
    let ws = Ws::new();
    let p = ws.spec(
        "p.json",
        r#"{"kind":"bvp","a":"cos(t)","b":"0.5*cos(t)+sin(t)","h":"1 + t","T":1.2}"#,
    );
    let o = run("check", &p, &["--n", "101"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("agree"));
}

#[test]
fn contraction_gate_and_force() {
    let ws = Ws::new();
    let p = ws.spec("s.json", RECIPROCAL);
    let o = run("solve", &p, &["--n", "9"]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    let o = run("solve", &p, &["--n", "9", "--force"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary = stderr(&o);
    let res: f64 = summary
        .split("max relative ")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(res < 1e-5, "{summary}");
    let r = rows(&stdout(&o));
    assert_eq!((r[0][0], r[8][0]), (0.5, 2.0));
    assert!((r[0][1] - r[8][1]).abs() < 1e-8);
}

#[test]
fn resonant_solve_exits_3() {
    let ws = Ws::new();
    // C4': b_e = -a. h = sin t has h_e = 0, so the obstruction vanishes.
    let p = ws.spec("p.json", r#"{"kind":"bvp","a":"1","b":"-1","h":"sin(t)","T":1}"#);
    let o = run("solve", &p, &["--n", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("t,u,w\n"));
    assert!(stderr(&o).contains("for every real c"));
    // a constant forcing breaks solvability
    let p = ws.spec("q.json", r#"{"kind":"bvp","a":"1","b":"-1","h":"1","T":1}"#);
    let o = run("solve", &p, &["--n", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("no solution"));
}

#[test]
fn green_csv_is_deterministic_and_atomic() {
    let ws = Ws::new();
    let p = ws.spec("p.json", r#"{"kind":"bvp","a":"1 + 0.3*cos(t)","b":"0.5 + 0.15*cos(t) + t","T":1}"#);
    let out = ws.path("g.csv");
    let args = ["--n", "17", "--out", out.to_str().unwrap()];
    assert_eq!(run("green", &p, &args).status.code(), Some(0));
    let first = std::fs::read(&out).unwrap();
    assert_eq!(run("green", &p, &args).status.code(), Some(0));
    assert_eq!(first, std::fs::read(&out).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("t,s,G\n"));
    assert_eq!(rows(&text).len(), 17 * 17);
    // only the spec and the csv in the directory
    assert_eq!(std::fs::read_dir(ws.dir.path()).unwrap().count(), 2);
}

#[test]
fn green_ranges_and_unsupported() {
    let ws = Ws::new();
    let p = ws.spec("p.json", r#"{"kind":"ivp","a":"1","b":"0"}"#);
    let o = run("green", &p, &["--n", "3", "--t-range", "-2,2", "--s-range", "0.5,1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r[0][..2], [-2.0, 0.5]);
    assert_eq!(r[8][..2], [2.0, 1.5]);
    let mixed = ws.spec("m.json", r#"{"kind":"bvp","a":"t + 1","b":"0","T":0.5}"#);
    assert_eq!(run("green", &mixed, &[]).status.code(), Some(2));
    let c4 = ws.spec("c4.json", r#"{"kind":"bvp","a":"1","b":"-1","T":1}"#);
    assert_eq!(run("green", &c4, &[]).status.code(), Some(3));
}

#[test]
fn sign_report_and_grid() {
    let ws = Ws::new();
    // ωT = π/4 - 0.01 with a ≡ 1, b ≡ 0: constant sign
    let p = ws.spec("p.json", r#"{"kind":"bvp","a":"1","b":"0","T":0.7753981633974483}"#);
    let out = ws.path("sign.csv");
    let o = run("sign", &p, &["--n", "21", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("constant sign (positive)"), "{}", stdout(&o));
    let grid = std::fs::read_to_string(&out).unwrap();
    assert!(grid.starts_with("t,s,sign\n"));
    assert!(rows(&grid).iter().all(|r| r[2] == 1.0));

    let p = ws.spec("q.json", r#"{"kind":"ivp","a":"2","b":"0"}"#);
    let o = run("sign", &p, &[]);
    assert!(stdout(&o).contains("grid sampling confirms"));
}

#[test]
fn transform_round_trip() {
    let ws = Ws::new();
    let p = ws.spec("s.json", RECIPROCAL);
    let out = ws.path("t.json");
    let o = run("transform", &p, &["--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("[-0.5, 0.5]"));
    let json = std::fs::read_to_string(&out).unwrap();
    assert!(json.contains("\"kind\": \"bvp\""));
    // the transformed spec is an ordinary reflection problem
    let o = run("classify", &out, &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Mixed"));
    let o = run("check", &out, &["--force", "--n", "41"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // and its solution at s = 0 is x at the fixed point
    let y = run("solve", &out, &["--force", "--n", "3"]);
    let x = run("solve", &p, &["--force", "--n", "7"]);
    let (y, x) = (rows(&stdout(&y)), rows(&stdout(&x)));
    let x_at_1 = x.iter().find(|r| r[0] == 1.0).unwrap()[1];
    assert!((y[1][1] - x_at_1).abs() < 1e-8, "{} vs {x_at_1}", y[1][1]);
}

#[test]
fn transform_needs_general() {
    let ws = Ws::new();
    let p = ws.spec("p.json", r#"{"kind":"bvp","a":"1","b":"0","T":1}"#);
    assert_eq!(run("transform", &p, &[]).status.code(), Some(5));
    let bad = ws.spec(
        "q.json",
        r#"{"kind":"general","a":"1","b":"0","involution":{"phi":"t","dphi":"1","domain":[0,1]}}"#,
    );
    assert_eq!(run("transform", &bad, &[]).status.code(), Some(2));
}

#[test]
fn help_documents_grammar() {
    let o = bin().arg("--help").output().unwrap();
    let help = stdout(&o);
    for word in ["atanh", "right-assoc", "EXIT CODES", "classify", "transform"] {
        assert!(help.contains(word), "{word}");
    }
}
