//! Expression grammar for coefficient functions of `t`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' ('-')* power)?        right-associative
//! atom    := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
//! func    := sin cos tan sinh cosh exp ln abs atan atanh sqrt
//! ```
//!
//! `^` binds tighter than unary minus, so `-2^2 = -4`. Evaluation never
//! returns NaN silently: domain violations and division by zero are errors.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Exp,
    Ln,
    Abs,
    Atan,
    Atanh,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Exp,
        Func::Ln,
        Func::Abs,
        Func::Atan,
        Func::Atanh,
        Func::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Abs => "abs",
            Func::Atan => "atan",
            Func::Atanh => "atanh",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }

    fn apply(self, x: f64) -> Result<f64, EvalError> {
        let domain = |ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(EvalError::Domain {
                    func: self.name(),
                    arg: x,
                })
            }
        };
        match self {
            Func::Ln => domain(x > 0.0)?,
            Func::Sqrt => domain(x >= 0.0)?,
            Func::Atanh => domain(x > -1.0 && x < 1.0)?,
            _ => {}
        }
        Ok(match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Exp => x.exp(),
            Func::Ln => x.ln(),
            Func::Abs => x.abs(),
            Func::Atan => x.atan(),
            Func::Atanh => x.atanh(),
            Func::Sqrt => x.sqrt(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

/// Syntax tree. Literals are non-negative; negation is [`Expr::Neg`].
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Pi,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownIdentifier(String),
    InvalidNumber(String),
    Expected(&'static str),
    TrailingInput,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            Self::UnexpectedEnd => write!(f, "unexpected end of input"),
            Self::UnknownIdentifier(s) => write!(f, "unknown identifier {s:?}"),
            Self::InvalidNumber(s) => write!(f, "invalid number {s:?}"),
            Self::Expected(what) => write!(f, "expected {what}"),
            Self::TrailingInput => write!(f, "unexpected trailing input"),
        }
    }
}

/// Parse failure at byte `offset` of the source.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("{func}({arg}) is outside the domain")]
    Domain { func: &'static str, arg: f64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{base}^{exp} is not a real number")]
    Power { base: f64, exp: f64 },
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ParseError> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < src.len() {
            return Err(p.error(ParseErrorKind::TrailingInput));
        }
        Ok(e)
    }

    pub fn num(v: f64) -> Expr {
        if v < 0.0 {
            Expr::Neg(Box::new(Expr::Num(-v)))
        } else {
            Expr::Num(v)
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var => t,
            Expr::Pi => std::f64::consts::PI,
            Expr::Neg(e) => -e.eval(t)?,
            Expr::Call(f, e) => f.apply(e.eval(t)?)?,
            Expr::Bin(op, l, r) => {
                let (x, y) = (l.eval(t)?, r.eval(t)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(EvalError::DivisionByZero);
                        }
                        x / y
                    }
                    BinOp::Pow => {
                        if x == 0.0 && y < 0.0 {
                            return Err(EvalError::DivisionByZero);
                        }
                        let v = x.powf(y);
                        if v.is_nan() && !x.is_nan() && !y.is_nan() {
                            return Err(EvalError::Power { base: x, exp: y });
                        }
                        v
                    }
                }
            }
        })
    }

    /// Replaces every occurrence of `t` by `inner`.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        match self {
            Expr::Var => inner.clone(),
            Expr::Num(_) | Expr::Pi => self.clone(),
            Expr::Neg(e) => Expr::Neg(Box::new(e.substitute(inner))),
            Expr::Call(f, e) => Expr::Call(*f, Box::new(e.substitute(inner))),
            Expr::Bin(op, l, r) => {
                Expr::Bin(*op, Box::new(l.substitute(inner)), Box::new(r.substitute(inner)))
            }
        }
    }

    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Bin(op, Box::new(l), Box::new(r))
    }
}

/// Fully parenthesized; re-parses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var => f.write_str("t"),
            Expr::Pi => f.write_str("pi"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Bin(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            offset: self.pos,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some('+') => BinOp::Add,
                Some('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some('*') => BinOp::Mul,
                Some('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::bin(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        // exponent may carry its own sign: 2^-1
        let mut negations = 0;
        while self.eat('-') {
            negations += 1;
        }
        let mut exp = self.power()?;
        for _ in 0..negations {
            exp = Expr::Neg(Box::new(exp));
        }
        Ok(Expr::bin(BinOp::Pow, base, exp))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(ParseErrorKind::Expected("')'")));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.identifier(),
            Some(c) => Err(self.error(ParseErrorKind::UnexpectedChar(c))),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
            i += 1;
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if j < bytes.len() && bytes[j].is_ascii_digit() {
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let text = &self.src[start..i];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos = i;
                Ok(Expr::Num(v))
            }
            _ => Err(ParseError {
                kind: ParseErrorKind::InvalidNumber(text.to_string()),
                offset: start,
            }),
        }
    }

    fn identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        let name = &rest[..len];
        self.pos += len;
        match name {
            "t" => return Ok(Expr::Var),
            "pi" => return Ok(Expr::Pi),
            _ => {}
        }
        let Some(func) = Func::from_name(name) else {
            return Err(ParseError {
                kind: ParseErrorKind::UnknownIdentifier(name.to_string()),
                offset: start,
            });
        };
        if !self.eat('(') {
            return Err(self.error(ParseErrorKind::Expected("'(' after function name")));
        }
        let arg = self.expr()?;
        if !self.eat(')') {
            return Err(self.error(ParseErrorKind::Expected("')'")));
        }
        Ok(Expr::Call(func, Box::new(arg)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(src: &str, t: f64) -> f64 {
        Expr::parse(src).unwrap().eval(t).unwrap()
    }

    #[test]
    fn simple_sum() {
        assert_eq!(ev("cos(t) + 0.5", 0.0), 1.5);
    }

    #[test]
    fn power_is_right_associative() {
        assert_eq!(ev("2^3^2", 0.0), 512.0);
    }

    #[test]
    fn power_binds_tighter_than_negation() {
        assert_eq!(ev("-2^2", 0.0), -4.0);
        assert_eq!(ev("2^-1", 0.0), 0.5);
        assert_eq!(ev("(-2)^2", 0.0), 4.0);
    }

    #[test]
    fn precedence() {
        assert_eq!(ev("1 + 2 * 3", 0.0), 7.0);
        assert_eq!(ev("8 / 4 / 2", 0.0), 1.0);
        assert_eq!(ev("1 - 2 - 3", 0.0), -4.0);
        assert_eq!(ev("2*t^2", 3.0), 18.0);
    }

    #[test]
    fn spanish_sine_rejected_at_offset_zero() {
        let err = Expr::parse("sen(t)").unwrap_err();
        assert_eq!(err.offset, 0);
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("sen".into()));
    }

    #[test]
    fn error_offsets() {
        assert_eq!(Expr::parse("1 + ").unwrap_err().offset, 4);
        assert_eq!(Expr::parse("1 + $").unwrap_err().offset, 4);
        assert_eq!(Expr::parse("(1 + 2").unwrap_err().offset, 6);
        assert_eq!(Expr::parse("1 2").unwrap_err().kind, ParseErrorKind::TrailingInput);
        assert_eq!(Expr::parse("  cos t").unwrap_err().offset, 6);
    }

    #[test]
    fn constants_and_functions() {
        assert_eq!(ev("exp(0)", 0.0), 1.0);
        assert!((ev("abs(-3) * pi", 0.0) - 9.42477796076938).abs() < 1e-12);
        assert!((ev("sqrt(4) + ln(exp(2)) + atan(1)*4", 0.0) - (4.0 + std::f64::consts::PI)).abs() < 1e-14);
        assert_eq!(ev("1.5e-3", 0.0), 1.5e-3);
        assert_eq!(ev("2E2", 0.0), 200.0);
    }

    #[test]
    fn domain_errors() {
        let e = Expr::parse("atanh(2)").unwrap();
        assert!(matches!(e.eval(0.0), Err(EvalError::Domain { func: "atanh", .. })));
        assert!(matches!(Expr::parse("ln(t)").unwrap().eval(0.0), Err(EvalError::Domain { .. })));
        assert!(matches!(Expr::parse("sqrt(t)").unwrap().eval(-1.0), Err(EvalError::Domain { .. })));
        assert_eq!(Expr::parse("1/t").unwrap().eval(0.0), Err(EvalError::DivisionByZero));
        assert!(matches!(Expr::parse("(-8)^(1/3)").unwrap().eval(0.0), Err(EvalError::Power { .. })));
    }

    #[test]
    fn substitution() {
        let e = Expr::parse("t^2 + 1").unwrap();
        let s = e.substitute(&Expr::parse("sin(t)").unwrap());
        assert!((s.eval(0.3).unwrap() - (0.3f64.sin().powi(2) + 1.0)).abs() < 1e-15);
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0.0f64..100.0).prop_map(Expr::Num),
            Just(Expr::Var),
            Just(Expr::Pi),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (0..11usize, inner.clone()).prop_map(|(i, e)| Expr::Call(Func::ALL[i], Box::new(e))),
                (0..5usize, inner.clone(), inner).prop_map(|(i, l, r)| {
                    let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Pow][i];
                    Expr::bin(op, l, r)
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let back = Expr::parse(&printed).unwrap();
            prop_assert_eq!(&back, &e);
            for t in [-0.7, 0.0, 0.4] {
                match (e.eval(t), back.eval(t)) {
                    (Ok(x), Ok(y)) => prop_assert!(x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan())),
                    (Err(x), Err(y)) => prop_assert_eq!(x, y),
                    _ => prop_assert!(false, "evaluation disagrees"),
                }
            }
        }
    }
}
