//! Expressions over a number field and its algebra.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" exponent)?
//! exponent:= "-"? integer | "(" "-"? integer ")"
//! atom    := number | number "i" | "a" | "z^{" expr "}" | "(" expr ")"
//! ```
//!
//! `a` is the field generator, `1i` the imaginary unit of coefficients, and
//! `z^{e}` the algebra monomial with index `e`. Whitespace is ignored. A
//! quotient of two literals is read as one literal, so `1/2`, `(1)/(2)` and
//! `2/4` all parse to the number one half.

use std::fmt;
use std::sync::Arc;

use nlfield::rational::{format_rational, int};
use nlfield::{
    AlgebraElement, Coefficient, FieldElement, GaussianRational, NumberField, Rational,
};
use num_complex::Complex;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub pos: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at position {}: expected {}, found {}",
            self.pos, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative rational literal.
    Num(Rational),
    /// `q i` for a nonnegative rational literal `q`.
    Imag(Rational),
    Gen,
    Mono(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Dec(Rational),
    Imag,
    Gen,
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Dec(q) => format!("number {}", format_rational(q)),
            Tok::Imag => "'i'".into(),
            Tok::Gen => "'a'".into(),
            Tok::Z => "'z'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '0'..='9' | '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                let text = &src[start..i];
                let q = nlfield::rational::parse_rational(text).map_err(|_| ParseError {
                    pos: start,
                    expected: "a number".into(),
                    found: format!("{text:?}"),
                })?;
                out.push((
                    start,
                    if text.contains('.') {
                        Tok::Dec(q)
                    } else {
                        Tok::Int(q.to_integer())
                    },
                ));
                continue;
            }
            'i' => Tok::Imag,
            'a' => Tok::Gen,
            'z' => Tok::Z,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            other => {
                return Err(ParseError {
                    pos: start,
                    expected: "a number, 'a', 'z', an operator or a bracket".into(),
                    found: format!("{other:?}"),
                })
            }
        };
        i += c.len_utf8();
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(&t.describe())
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = match (lhs, rhs) {
                        (Expr::Num(p), Expr::Num(q)) if !q.is_zero() => Expr::Num(p / q),
                        (Expr::Imag(p), Expr::Num(q)) if !q.is_zero() => Expr::Imag(p / q),
                        (l, r) => Expr::Div(Box::new(l), Box::new(r)),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let e = self.unary()?;
            return Ok(Expr::Neg(Box::new(e)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let e = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let n: i64 = i64::try_from(n).or_else(|_| self.fail("an exponent within i64"))?;
                if neg {
                    -n
                } else {
                    n
                }
            }
            _ => return self.fail("an integer exponent"),
        };
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let q = Rational::from_integer(n);
                if *self.peek() == Tok::Imag {
                    self.bump();
                    return Ok(Expr::Imag(q));
                }
                Ok(Expr::Num(q))
            }
            Tok::Dec(q) => {
                self.bump();
                if *self.peek() == Tok::Imag {
                    self.bump();
                    return Ok(Expr::Imag(q));
                }
                Ok(Expr::Num(q))
            }
            Tok::Gen => {
                self.bump();
                Ok(Expr::Gen)
            }
            Tok::Z => {
                self.bump();
                self.expect(Tok::Caret)?;
                self.expect(Tok::LBrace)?;
                let e = self.expr()?;
                self.expect(Tok::RBrace)?;
                Ok(Expr::Mono(Box::new(e)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => self.fail("a number, 'a', 'z^{...}' or '('"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("({}/{})", q.numer(), q.denom())
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesised; reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write!(f, "{}", fmt_rational(q)),
            Expr::Imag(q) if q.is_integer() => write!(f, "{}i", q.numer()),
            Expr::Imag(q) => write!(f, "({}i/{})", q.numer(), q.denom()),
            Expr::Gen => write!(f, "a"),
            Expr::Mono(e) => write!(f, "z^{{{e}}}"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) => {
                let atomic = match &**a {
                    Expr::Num(q) => q.is_integer(),
                    Expr::Gen | Expr::Mono(_) => true,
                    _ => false,
                };
                if atomic {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
        }
    }
}

/// Value of an expression: a coefficient, a field element, or an algebra
/// element with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(GaussianRational),
    Element(FieldElement),
    Algebra(AlgebraElement<GaussianRational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Parse(ParseError),
    Type(String),
    Field(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Parse(e) => write!(f, "syntax error {e}"),
            EvalError::Type(s) => write!(f, "type error: {s}"),
            EvalError::Field(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<ParseError> for EvalError {
    fn from(e: ParseError) -> Self {
        EvalError::Parse(e)
    }
}

impl From<nlfield::Error> for EvalError {
    fn from(e: nlfield::Error) -> Self {
        EvalError::Field(e.to_string())
    }
}

type EResult<T> = Result<T, EvalError>;

fn real_part(c: &GaussianRational) -> Option<Rational> {
    c.im.is_zero().then(|| c.re.clone())
}

fn as_element(v: &Value, field: &Arc<NumberField>) -> EResult<FieldElement> {
    match v {
        Value::Element(x) => Ok(x.clone()),
        Value::Scalar(c) => real_part(c)
            .map(|q| FieldElement::from_rational(field, q))
            .ok_or_else(|| EvalError::Type("a non-real coefficient cannot be a field element".into())),
        Value::Algebra(_) => Err(EvalError::Type("algebra element used as a field element".into())),
    }
}

fn as_algebra(v: &Value, field: &Arc<NumberField>) -> EResult<AlgebraElement<GaussianRational>> {
    match v {
        Value::Algebra(f) => Ok(f.clone()),
        Value::Scalar(c) => Ok(AlgebraElement::monomial(&FieldElement::zero(field), c.clone())),
        Value::Element(x) => x
            .as_rational()
            .map(|q| {
                AlgebraElement::monomial(&FieldElement::zero(field), GaussianRational::from_rational(&q))
            })
            .ok_or_else(|| EvalError::Type("an irrational field element cannot be a coefficient".into())),
    }
}

fn as_coefficient(v: &Value) -> Option<GaussianRational> {
    match v {
        Value::Scalar(c) => Some(c.clone()),
        Value::Element(x) => x.as_rational().map(|q| GaussianRational::from_rational(&q)),
        Value::Algebra(_) => None,
    }
}

fn rank(v: &Value) -> u8 {
    match v {
        Value::Scalar(_) => 0,
        Value::Element(_) => 1,
        Value::Algebra(_) => 2,
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

fn binary(op: Op, a: Value, b: Value, field: &Arc<NumberField>) -> EResult<Value> {
    let level = rank(&a).max(rank(&b));
    // a real scalar next to a non-real coefficient stays a coefficient
    let level = if level == 1
        && matches!((&a, &b), (Value::Scalar(c), _) | (_, Value::Scalar(c)) if !c.im.is_zero())
    {
        if as_coefficient(&a).is_some() && as_coefficient(&b).is_some() {
            0
        } else {
            return Err(EvalError::Type(
                "non-real coefficient combined with an irrational field element".into(),
            ));
        }
    } else {
        level
    };
    match level {
        0 => {
            let (x, y) = (as_coefficient(&a).unwrap(), as_coefficient(&b).unwrap());
            Ok(Value::Scalar(match op {
                Op::Add => x + y,
                Op::Sub => x - y,
                Op::Mul => x * y,
                Op::Div => {
                    if y.is_zero() {
                        return Err(nlfield::Error::DivisionByZero.into());
                    }
                    x / y
                }
            }))
        }
        1 => {
            let (x, y) = (as_element(&a, field)?, as_element(&b, field)?);
            Ok(Value::Element(match op {
                Op::Add => x.checked_add(&y)?,
                Op::Sub => x.checked_sub(&y)?,
                Op::Mul => x.checked_mul(&y)?,
                Op::Div => x.checked_div(&y)?,
            }))
        }
        _ => match op {
            Op::Add => Ok(Value::Algebra(as_algebra(&a, field)?.checked_add(&as_algebra(&b, field)?)?)),
            Op::Sub => Ok(Value::Algebra(as_algebra(&a, field)?.checked_sub(&as_algebra(&b, field)?)?)),
            Op::Mul => match (as_coefficient(&a), as_coefficient(&b)) {
                (Some(c), _) => Ok(Value::Algebra(as_algebra(&b, field)?.scale(&c))),
                (_, Some(c)) => Ok(Value::Algebra(as_algebra(&a, field)?.scale(&c))),
                _ => Ok(Value::Algebra(
                    as_algebra(&a, field)?.cauchy_product(&as_algebra(&b, field)?)?,
                )),
            },
            Op::Div => {
                let c = as_coefficient(&b)
                    .ok_or_else(|| EvalError::Type("division by an algebra element".into()))?;
                if c.is_zero() {
                    return Err(nlfield::Error::DivisionByZero.into());
                }
                let inv = GaussianRational::one() / c;
                Ok(Value::Algebra(as_algebra(&a, field)?.scale(&inv)))
            }
        },
    }
}

fn pow_value(v: Value, n: i64, field: &Arc<NumberField>) -> EResult<Value> {
    match v {
        Value::Scalar(c) => {
            if c.is_zero() && n < 0 {
                return Err(nlfield::Error::DivisionByZero.into());
            }
            let base = if n < 0 { GaussianRational::one() / c } else { c };
            let mut acc = GaussianRational::one();
            for _ in 0..n.unsigned_abs() {
                acc = acc * base.clone();
            }
            Ok(Value::Scalar(acc))
        }
        Value::Element(x) => Ok(Value::Element(x.pow(n)?)),
        Value::Algebra(f) => {
            if n < 0 {
                return Err(EvalError::Type("negative power of an algebra element".into()));
            }
            let mut acc = as_algebra(&Value::Scalar(GaussianRational::one()), field)?;
            for _ in 0..n {
                acc = acc.cauchy_product(&f)?;
            }
            Ok(Value::Algebra(acc))
        }
    }
}

pub fn eval(e: &Expr, field: &Arc<NumberField>) -> EResult<Value> {
    Ok(match e {
        Expr::Num(q) => Value::Scalar(GaussianRational::from_rational(q)),
        Expr::Imag(q) => Value::Scalar(Complex::new(int(0), q.clone())),
        Expr::Gen => Value::Element(field.generator()),
        Expr::Mono(idx) => {
            let alpha = as_element(&eval(idx, field)?, field)?;
            Value::Algebra(AlgebraElement::monomial(&alpha, GaussianRational::one()))
        }
        Expr::Neg(x) => match eval(x, field)? {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Element(y) => Value::Element(-&y),
            Value::Algebra(f) => Value::Algebra(f.scale(&-GaussianRational::one())),
        },
        Expr::Add(a, b) => binary(Op::Add, eval(a, field)?, eval(b, field)?, field)?,
        Expr::Sub(a, b) => binary(Op::Sub, eval(a, field)?, eval(b, field)?, field)?,
        Expr::Mul(a, b) => binary(Op::Mul, eval(a, field)?, eval(b, field)?, field)?,
        Expr::Div(a, b) => binary(Op::Div, eval(a, field)?, eval(b, field)?, field)?,
        Expr::Pow(a, n) => pow_value(eval(a, field)?, *n, field)?,
    })
}

pub fn parse_element(src: &str, field: &Arc<NumberField>) -> EResult<FieldElement> {
    as_element(&eval(&parse(src)?, field)?, field)
}

pub fn parse_algebra(src: &str, field: &Arc<NumberField>) -> EResult<AlgebraElement<GaussianRational>> {
    as_algebra(&eval(&parse(src)?, field)?, field)
}

/// Text for a field element in the expression grammar, e.g. `1/2 + 3*a^2`.
pub fn element_to_source(x: &FieldElement) -> String {
    let mut parts = Vec::new();
    for (k, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coef = if mag.is_integer() {
            mag.numer().to_string()
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        let term = match k {
            0 => coef,
            1 if mag.is_one() => "a".into(),
            1 => format!("{coef}*a"),
            _ if mag.is_one() => format!("a^{k}"),
            _ => format!("{coef}*a^{k}"),
        };
        parts.push((c.is_negative(), term));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, t)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&t);
    }
    out
}

/// Text for an exact algebra element in the expression grammar.
pub fn algebra_to_source(f: &AlgebraElement<GaussianRational>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let q = |r: &Rational| {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    f.terms()
        .map(|(alpha, c)| {
            let coef = match (c.re.is_zero(), c.im.is_zero()) {
                (_, true) => format!("({})", q(&c.re)),
                (true, false) => format!("({}*1i)", q(&c.im)),
                _ => format!("({} + {}*1i)", q(&c.re), q(&c.im)),
            };
            format!("{coef}*z^{{{}}}", element_to_source(alpha))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
