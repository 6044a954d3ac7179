//! A small expression language for shuffle-algebra elements.
//!
//! ```text
//! expr    := product (('+' | '-') product)*
//! product := juxt ('*' juxt)*                  shuffle product
//! juxt    := ['+' | '-'] power power*          scalar product (juxtaposition)
//! power   := primary ['^' ['+' | '-'] INT]
//! primary := INT ['/' INT]
//!          | 'q' | 'q1' | 'q2' | 'z1' | 'z2' | ...
//!          | 'z'                                z1 in V_1, so z^d is a generator
//!          | 'sh' '[' [INT (',' INT)*] ']'       z^{d1} * ... * z^{dk}
//!          | '(' expr ')'
//! ```
//!
//! Juxtaposition binds tighter than `*`, which binds tighter than `+`/`-`.
//! `q` is shorthand for `q1 q2`. Identifiers split at the letter/digit
//! boundary, so `q1z2` reads as `q1 z2`.
//!
//! Every subexpression is either a *scalar* (a Laurent polynomial whose
//! arity is not fixed yet) or an *element* of some `V_k`. Arities are
//! inferred while parsing:
//!
//! * `a * b` has arity `arity(a) + arity(b)`; a scalar counts as an element
//!   of arity equal to its largest z-index.
//! * `a + b` needs equal arities; a scalar may join an element of arity `k`
//!   if it only uses `z1..zk`.
//! * `s e` (juxtaposition) multiplies an element by a scalar that only uses
//!   its variables; two elements cannot be juxtaposed.
//!
//! Symmetry is checked during evaluation.

use std::fmt;

use ishuffle_core::poly::ratio;
use ishuffle_core::{shuffle, Coeff, GeneratorWord, LaurentPoly, ShuffleElement, Variable};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("arity mismatch at offset {position}: {left} vs {right}")]
    ArityMismatch { position: usize, left: usize, right: usize },
    #[error("type error at offset {position}: {message}")]
    Type { position: usize, message: String },
    #[error(transparent)]
    Kernel(#[from] ishuffle_core::Error),
}

fn syntax(position: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax { position, message: message.into() }
}

/// Abstract syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Word(GeneratorWord),
    /// `z^d`, an element of `V_1`.
    ZPower(i32),
    Number(Coeff),
    Var(Variable),
    /// `q = q1 q2`.
    Q,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// Juxtaposition.
    Scale(Box<Expr>, Box<Expr>),
    Shuffle(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

/// Inferred type of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Scalar { max_z: u32 },
    Element { arity: usize },
}

impl Kind {
    pub fn arity(self) -> usize {
        match self {
            Kind::Scalar { max_z } => max_z as usize,
            Kind::Element { arity } => arity,
        }
    }
}

impl Expr {
    pub fn kind(&self) -> Kind {
        // parsing already rejected ill-typed trees
        infer(self, 0).expect("well-typed expression")
    }
}

fn infer(e: &Expr, pos: usize) -> Result<Kind, ExprError> {
    use Kind::*;
    Ok(match e {
        Expr::Word(w) => Element { arity: w.arity() },
        Expr::ZPower(_) => Element { arity: 1 },
        Expr::Number(_) | Expr::Q => Scalar { max_z: 0 },
        Expr::Var(Variable::Z(i)) => Scalar { max_z: *i },
        Expr::Var(_) => Scalar { max_z: 0 },
        Expr::Neg(x) => infer(x, pos)?,
        Expr::Add(a, b) | Expr::Sub(a, b) => combine_sum(infer(a, pos)?, infer(b, pos)?, pos)?,
        Expr::Scale(a, b) => combine_scale(infer(a, pos)?, infer(b, pos)?, pos)?,
        Expr::Shuffle(a, b) => Element { arity: infer(a, pos)?.arity() + infer(b, pos)?.arity() },
        Expr::Pow(x, n) => match infer(x, pos)? {
            s @ Scalar { .. } => s,
            Element { arity } if *n >= 1 => Element { arity: arity * *n as usize },
            Element { .. } => {
                return Err(ExprError::Type {
                    position: pos,
                    message: "shuffle powers need a positive exponent".into(),
                })
            }
        },
    })
}

fn combine_sum(a: Kind, b: Kind, pos: usize) -> Result<Kind, ExprError> {
    use Kind::*;
    match (a, b) {
        (Scalar { max_z: x }, Scalar { max_z: y }) => Ok(Scalar { max_z: x.max(y) }),
        (Element { arity: k }, Element { arity: l }) if k == l => Ok(Element { arity: k }),
        (Element { arity: k }, Scalar { max_z: m }) | (Scalar { max_z: m }, Element { arity: k })
            if m as usize <= k =>
        {
            Ok(Element { arity: k })
        }
        _ => Err(ExprError::ArityMismatch { position: pos, left: a.arity(), right: b.arity() }),
    }
}

fn combine_scale(a: Kind, b: Kind, pos: usize) -> Result<Kind, ExprError> {
    use Kind::*;
    match (a, b) {
        (Scalar { max_z: x }, Scalar { max_z: y }) => Ok(Scalar { max_z: x.max(y) }),
        (Element { arity: k }, Scalar { max_z: m }) | (Scalar { max_z: m }, Element { arity: k }) => {
            if m as usize <= k {
                Ok(Element { arity: k })
            } else {
                Err(ExprError::ArityMismatch { position: pos, left: a.arity(), right: b.arity() })
            }
        }
        (Element { .. }, Element { .. }) => Err(ExprError::Type {
            position: pos,
            message: "two shuffle elements side by side; use `*`".into(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| syntax(start, "integer literal too large"))?;
            out.push((start, Tok::Int(n)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            _ => return Err(syntax(start, format!("unexpected character `{}`", c))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(_) => Err(syntax(pos, format!("expected {}", what))),
            None => Err(syntax(pos, format!("expected {}, found end of input", what))),
        }
    }

    fn expr(&mut self) -> Result<(Expr, Kind), ExprError> {
        let (mut e, mut k) = self.product()?;
        loop {
            let pos = self.pos();
            let minus = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.bump();
            let (r, rk) = self.product()?;
            k = combine_sum(k, rk, pos)?;
            e = if minus {
                Expr::Sub(Box::new(e), Box::new(r))
            } else {
                Expr::Add(Box::new(e), Box::new(r))
            };
        }
        Ok((e, k))
    }

    fn product(&mut self) -> Result<(Expr, Kind), ExprError> {
        let (mut e, mut k) = self.juxt()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let (r, rk) = self.juxt()?;
            k = Kind::Element { arity: k.arity() + rk.arity() };
            e = Expr::Shuffle(Box::new(e), Box::new(r));
        }
        Ok((e, k))
    }

    fn starts_power(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn juxt(&mut self) -> Result<(Expr, Kind), ExprError> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let (mut e, mut k) = self.power()?;
        while self.starts_power() {
            let pos = self.pos();
            let (r, rk) = self.power()?;
            k = combine_scale(k, rk, pos)?;
            e = Expr::Scale(Box::new(e), Box::new(r));
        }
        if negate {
            e = Expr::Neg(Box::new(e));
        }
        Ok((e, k))
    }

    fn signed_int(&mut self, what: &str) -> Result<i64, ExprError> {
        let pos = self.pos();
        let sign = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -1
            }
            Some(Tok::Plus) => {
                self.bump();
                1
            }
            _ => 1,
        };
        let pos_n = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(sign * n),
            _ => Err(syntax(if pos_n > pos { pos_n } else { pos }, format!("expected {}", what))),
        }
    }

    fn exponent(&mut self) -> Result<i32, ExprError> {
        let pos = self.pos();
        let n = self.signed_int("an integer exponent")?;
        i32::try_from(n).map_err(|_| syntax(pos, "exponent out of range"))
    }

    fn power(&mut self) -> Result<(Expr, Kind), ExprError> {
        let (base, k) = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok((base, k));
        }
        let caret = self.pos();
        self.bump();
        let n = self.exponent()?;
        let e = Expr::Pow(Box::new(base), n);
        let kind = infer(&e, caret)?;
        Ok((e, kind))
    }

    fn primary(&mut self) -> Result<(Expr, Kind), ExprError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(0)) => Err(syntax(dpos, "zero denominator")),
                        Some(Tok::Int(d)) => Ok((Expr::Number(ratio(n, d)), Kind::Scalar { max_z: 0 })),
                        _ => Err(syntax(dpos, "expected a denominator")),
                    }
                } else {
                    Ok((Expr::Number(Coeff::from_int(n)), Kind::Scalar { max_z: 0 }))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => self.ident(&name, pos),
            Some(_) => Err(syntax(pos, "expected a term")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }

    fn ident(&mut self, name: &str, pos: usize) -> Result<(Expr, Kind), ExprError> {
        let scalar = |e: Expr| Ok((e, Kind::Scalar { max_z: 0 }));
        match name {
            "q" => scalar(Expr::Q),
            "q1" => scalar(Expr::Var(Variable::Q1)),
            "q2" => scalar(Expr::Var(Variable::Q2)),
            "z" => {
                if self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    let d = self.exponent()?;
                    Ok((Expr::ZPower(d), Kind::Element { arity: 1 }))
                } else {
                    Ok((Expr::ZPower(1), Kind::Element { arity: 1 }))
                }
            }
            "sh" => {
                self.expect(Tok::LBracket, "`[` after `sh`")?;
                let mut ds = Vec::new();
                if self.peek() != Some(&Tok::RBracket) {
                    loop {
                        let p = self.pos();
                        let d = self.signed_int("an integer exponent")?;
                        ds.push(i32::try_from(d).map_err(|_| syntax(p, "exponent out of range"))?);
                        if self.peek() == Some(&Tok::Comma) {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBracket, "`,` or `]`")?;
                let k = ds.len();
                Ok((Expr::Word(GeneratorWord::new(ds)), Kind::Element { arity: k }))
            }
            _ => {
                if let Some(digits) = name.strip_prefix('z') {
                    if let Ok(i) = digits.parse::<u32>() {
                        if i >= 1 {
                            return Ok((Expr::Var(Variable::Z(i)), Kind::Scalar { max_z: i }));
                        }
                    }
                    return Err(syntax(pos, format!("`{}`: z-variables are z1, z2, ...", name)));
                }
                Err(syntax(pos, format!("unknown identifier `{}`", name)))
            }
        }
    }
}

/// Parses and type-checks an expression.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    parse_typed(text).map(|(e, _)| e)
}

/// Parses an expression and returns it with its inferred kind.
pub fn parse_typed(text: &str) -> Result<(Expr, Kind), ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.chars().count() };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(out)
}

/// A word given as `0,1,2`, `[0,1,2]` or `sh[0,1,2]`.
pub fn parse_word(text: &str) -> Result<GeneratorWord, ExprError> {
    let t = text.trim();
    let offset = text.len() - text.trim_start().len();
    let body = t.strip_prefix("sh").unwrap_or(t);
    let inner_offset = offset + (t.len() - body.len());
    let inner = match body.strip_prefix('[') {
        Some(rest) => rest
            .strip_suffix(']')
            .ok_or_else(|| syntax(text.chars().count(), "expected `]`"))?,
        None => body,
    };
    let base = inner_offset + usize::from(body.starts_with('['));
    if inner.trim().is_empty() {
        return Ok(GeneratorWord::new(Vec::new()));
    }
    let mut ds = Vec::new();
    let mut at = base;
    for part in inner.split(',') {
        let d = part
            .trim()
            .parse::<i32>()
            .map_err(|_| syntax(at + (part.len() - part.trim_start().len()), "expected an integer"))?;
        ds.push(d);
        at += part.len() + 1;
    }
    Ok(GeneratorWord::new(ds))
}

/// Result of evaluating a subexpression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(LaurentPoly),
    Element(ShuffleElement),
}

impl Value {
    pub fn poly(&self) -> &LaurentPoly {
        match self {
            Value::Scalar(p) => p,
            Value::Element(e) => e.poly(),
        }
    }

    fn into_element(self, arity: usize) -> Result<ShuffleElement, ExprError> {
        match self {
            Value::Element(e) => Ok(e),
            Value::Scalar(p) => Ok(ShuffleElement::new(arity, p)?),
        }
    }
}

pub fn eval_value(e: &Expr) -> Result<Value, ExprError> {
    Ok(match e {
        Expr::Word(w) => Value::Element(ishuffle_core::shuffle_word(w)?),
        Expr::ZPower(d) => Value::Element(ShuffleElement::z_power(*d)),
        Expr::Number(c) => Value::Scalar(LaurentPoly::constant(c.clone())),
        Expr::Var(v) => Value::Scalar(LaurentPoly::var(*v)),
        Expr::Q => Value::Scalar(LaurentPoly::q()),
        Expr::Neg(x) => match eval_value(x)? {
            Value::Scalar(p) => Value::Scalar(-p),
            Value::Element(el) => Value::Element(ShuffleElement::new(el.arity(), -el.into_poly())?),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let minus = matches!(e, Expr::Sub(..));
            let kind = e.kind();
            let (x, y) = (eval_value(a)?, eval_value(b)?);
            match kind {
                Kind::Scalar { .. } => {
                    let (x, y) = (x.poly(), y.poly());
                    Value::Scalar(if minus { x - y } else { x + y })
                }
                Kind::Element { arity } => {
                    let (x, y) = (x.into_element(arity)?, y.into_element(arity)?);
                    Value::Element(if minus { x.sub(&y)? } else { x.add(&y)? })
                }
            }
        }
        Expr::Scale(a, b) => match (eval_value(a)?, eval_value(b)?) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
            (Value::Element(el), Value::Scalar(s)) | (Value::Scalar(s), Value::Element(el)) => {
                Value::Element(el.mul_symmetric(&s)?)
            }
            (Value::Element(_), Value::Element(_)) => unreachable!("rejected while parsing"),
        },
        Expr::Shuffle(a, b) => {
            let (ka, kb) = (a.kind().arity(), b.kind().arity());
            let x = eval_value(a)?.into_element(ka)?;
            let y = eval_value(b)?.into_element(kb)?;
            Value::Element(shuffle(&x, &y)?)
        }
        Expr::Pow(x, n) => match eval_value(x)? {
            Value::Scalar(p) => Value::Scalar(p.powi(*n)?),
            Value::Element(el) => {
                let mut acc = el.clone();
                for _ in 1..*n {
                    acc = shuffle(&acc, &el)?;
                }
                Value::Element(acc)
            }
        },
    })
}

/// Evaluates to an element; a bare scalar becomes an element of arity equal
/// to its largest z-index.
pub fn eval(e: &Expr) -> Result<ShuffleElement, ExprError> {
    let arity = e.kind().arity();
    eval_value(e)?.into_element(arity)
}

/// Parses a polynomial such as a certificate cofactor.
pub fn parse_poly(text: &str) -> Result<LaurentPoly, ExprError> {
    Ok(eval_value(&parse(text)?)?.poly().clone())
}

impl fmt::Display for Expr {
    /// Fully parenthesised; parses back to the same tree shape.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Word(w) => write!(f, "sh{}", w),
            Expr::ZPower(d) => write!(f, "z^{}", d),
            Expr::Number(c) if c.is_negative() => write!(f, "({})", c),
            Expr::Number(c) => write!(f, "{}", c),
            Expr::Var(v) => write!(f, "{}", v),
            Expr::Q => f.write_str("q"),
            Expr::Neg(x) => write!(f, "(-{})", x),
            Expr::Add(a, b) => write!(f, "({} + {})", a, b),
            Expr::Sub(a, b) => write!(f, "({} - {})", a, b),
            Expr::Scale(a, b) => write!(f, "({} {})", a, b),
            Expr::Shuffle(a, b) => write!(f, "({} * {})", a, b),
            Expr::Pow(x, n) => write!(f, "({})^{}", x, n),
        }
    }
}
