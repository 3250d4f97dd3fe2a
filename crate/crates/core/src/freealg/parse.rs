//! Lexer and recursive-descent parser for the presentation DSL:
//!
//! ```text
//! algebra Q; gens x, y; rels x*y - y*x - 1;
//! lie Fp(5); gens e, f, h; rels [e,f] - h, [h,e] - 2*e, [h,f] + 2*f;
//! group Q; gens a, b; rels a*b*a^-1*b^-1;
//! ```
//!
//! `#` starts a comment running to the end of the line.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::exactmat::{FieldSpec, Scalar};
use crate::rational::Rational;

use super::builders::{group_algebra_presentation, GroupWord};
use super::group::GroupPresentation;
use super::lie::LiePoly;
use super::poly::NcPoly;
use super::presentation::Presentation;
use super::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                s.push(bump(&mut chars));
            }
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line: l, column: col });
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| c.is_alphanumeric() || c == '_' || c == '\'') {
                s.push(bump(&mut chars));
            }
            out.push(Token { tok: Tok::Ident(s), line: l, column: col });
        } else if "+-*^/()[],;".contains(c) {
            bump(&mut chars);
            out.push(Token { tok: Tok::Sym(c), line: l, column: col });
        } else {
            return Err(ParseError::new(l, col, ParseErrorKind::Syntax(format!("unexpected character {c:?}"))));
        }
    }
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}

#[derive(Clone, Debug)]
enum ExprKind {
    Num(Rational),
    Gen(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Bracket(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug)]
struct Expr {
    kind: ExprKind,
    line: usize,
    column: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Algebra,
    Lie,
    Group,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    gens: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(t: &Token, msg: impl Into<String>) -> ParseError {
        ParseError::new(t.line, t.column, ParseErrorKind::Syntax(msg.into()))
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("{s:?}"),
            Tok::Int(i) => format!("{i}"),
            Tok::Sym(c) => format!("{c:?}"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<Token, ParseError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(t)
        } else {
            Err(Self::err_at(&t, format!("expected {c:?}, found {}", Self::describe(&t.tok))))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<Token, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(t),
            other => Err(Self::err_at(&t, format!("expected `{kw}`, found {}", Self::describe(other)))),
        }
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn header(&mut self) -> Result<(Kind, FieldSpec), ParseError> {
        let t = self.next();
        let kind = match &t.tok {
            Tok::Ident(s) if s == "algebra" => Kind::Algebra,
            Tok::Ident(s) if s == "lie" => Kind::Lie,
            Tok::Ident(s) if s == "group" => Kind::Group,
            other => {
                return Err(Self::err_at(
                    &t,
                    format!("expected `algebra`, `lie` or `group`, found {}", Self::describe(other)),
                ))
            }
        };
        let t = self.next();
        let field = match &t.tok {
            Tok::Ident(s) if s == "Q" => FieldSpec::Rationals,
            Tok::Ident(s) if s == "Fp" => {
                self.expect_sym('(')?;
                let pt = self.next();
                let Tok::Int(p) = &pt.tok else {
                    return Err(Self::err_at(&pt, "expected a prime"));
                };
                let p = p.to_u64().ok_or_else(|| Self::err_at(&pt, "modulus too large"))?;
                let field = FieldSpec::prime(p)
                    .map_err(|_| ParseError::new(pt.line, pt.column, ParseErrorKind::NotPrime(p)))?;
                self.expect_sym(')')?;
                field
            }
            other => return Err(Self::err_at(&t, format!("expected `Q` or `Fp(p)`, found {}", Self::describe(other)))),
        };
        self.expect_sym(';')?;
        Ok((kind, field))
    }

    fn generators(&mut self) -> Result<(), ParseError> {
        self.expect_keyword("gens")?;
        if self.at_sym(';') {
            self.next();
            return Ok(());
        }
        loop {
            let t = self.next();
            let Tok::Ident(name) = &t.tok else {
                return Err(Self::err_at(&t, format!("expected a generator name, found {}", Self::describe(&t.tok))));
            };
            if matches!(name.as_str(), "gens" | "rels") {
                return Err(Self::err_at(&t, format!("`{name}` cannot be a generator name")));
            }
            if self.gens.contains(name) {
                return Err(ParseError::new(t.line, t.column, ParseErrorKind::DuplicateGenerator(name.clone())));
            }
            self.gens.push(name.clone());
            if self.at_sym(',') {
                self.next();
            } else {
                self.expect_sym(';')?;
                return Ok(());
            }
        }
    }

    fn relators(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect_keyword("rels")?;
        let mut out = Vec::new();
        if self.at_sym(';') {
            self.next();
        } else {
            loop {
                out.push(self.expr()?);
                if self.at_sym(',') {
                    self.next();
                } else {
                    self.expect_sym(';')?;
                    break;
                }
            }
        }
        let t = self.peek();
        if t.tok != Tok::Eof {
            return Err(Self::err_at(t, format!("unexpected {} after relators", Self::describe(&t.tok))));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let t = self.peek().clone();
            let ctor: fn(Box<Expr>, Box<Expr>) -> ExprKind = match t.tok {
                Tok::Sym('+') => ExprKind::Add,
                Tok::Sym('-') => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            lhs = Expr { kind: ctor(Box::new(lhs), Box::new(rhs)), line: t.line, column: t.column };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.at_sym('*') {
            let t = self.next();
            let rhs = self.unary()?;
            lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), line: t.line, column: t.column };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.at_sym('-') {
            let t = self.next();
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), line: t.line, column: t.column });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.at_sym('^') {
            return Ok(base);
        }
        let t = self.next();
        let negative = if self.at_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let et = self.next();
        let Tok::Int(e) = &et.tok else {
            return Err(Self::err_at(&et, "expected an integer exponent"));
        };
        let e = e.to_i64().filter(|&e| e <= 1 << 16).ok_or_else(|| Self::err_at(&et, "exponent too large"))?;
        let e = if negative { -e } else { e };
        Ok(Expr { kind: ExprKind::Pow(Box::new(base), e), line: t.line, column: t.column })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        let kind = match &t.tok {
            Tok::Int(num) => {
                let mut value = Rational::from_integer(num.clone());
                if self.at_sym('/') {
                    self.next();
                    let dt = self.next();
                    let Tok::Int(den) = &dt.tok else {
                        return Err(Self::err_at(&dt, "expected a denominator"));
                    };
                    if den.is_zero() {
                        return Err(Self::err_at(&dt, "zero denominator"));
                    }
                    value = Rational::new(num.clone(), den.clone());
                }
                ExprKind::Num(value)
            }
            Tok::Ident(name) => match self.gens.iter().position(|g| g == name) {
                Some(i) => ExprKind::Gen(i),
                None => {
                    return Err(ParseError::new(t.line, t.column, ParseErrorKind::UndeclaredGenerator(name.clone())));
                }
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                return Ok(e);
            }
            Tok::Sym('[') => {
                let a = self.expr()?;
                self.expect_sym(',')?;
                let b = self.expr()?;
                self.expect_sym(']')?;
                ExprKind::Bracket(Box::new(a), Box::new(b))
            }
            other => return Err(Self::err_at(&t, format!("expected an operand, found {}", Self::describe(other)))),
        };
        Ok(Expr { kind, line: t.line, column: t.column })
    }
}

fn scalar(field: FieldSpec, r: &Rational, e: &Expr) -> Result<Scalar, ParseError> {
    field.from_rational(r).map_err(|_| {
        ParseError::new(e.line, e.column, ParseErrorKind::NotInField(crate::rational::format_rational(r)))
    })
}

fn lower_assoc(e: &Expr, field: FieldSpec) -> Result<NcPoly, ParseError> {
    Ok(match &e.kind {
        ExprKind::Num(r) => NcPoly::constant(scalar(field, r, e)?),
        ExprKind::Gen(g) => NcPoly::generator(field, *g),
        ExprKind::Add(a, b) => &lower_assoc(a, field)? + &lower_assoc(b, field)?,
        ExprKind::Sub(a, b) => &lower_assoc(a, field)? - &lower_assoc(b, field)?,
        ExprKind::Neg(a) => -&lower_assoc(a, field)?,
        ExprKind::Mul(a, b) => &lower_assoc(a, field)? * &lower_assoc(b, field)?,
        ExprKind::Pow(a, k) => {
            if *k < 0 {
                return Err(ParseError::new(e.line, e.column, ParseErrorKind::NegativePower));
            }
            lower_assoc(a, field)?.pow(*k as u32)
        }
        ExprKind::Bracket(a, b) => NcPoly::commutator(&lower_assoc(a, field)?, &lower_assoc(b, field)?),
    })
}

enum LieValue {
    Const(Rational),
    Lie(LiePoly),
}

fn lower_lie(e: &Expr, field: FieldSpec) -> Result<LieValue, ParseError> {
    let product_err = || ParseError::new(e.line, e.column, ParseErrorKind::LieProduct);
    let as_lie = |v: LieValue, at: &Expr| -> Result<LiePoly, ParseError> {
        match v {
            LieValue::Lie(p) => Ok(p),
            LieValue::Const(c) if c.is_zero() => Ok(LiePoly::zero(field)),
            LieValue::Const(_) => Err(ParseError::new(at.line, at.column, ParseErrorKind::LieConstant)),
        }
    };
    let combine = |a: LieValue, b: LieValue, sign: i64| -> Result<LieValue, ParseError> {
        Ok(match (a, b) {
            (LieValue::Const(x), LieValue::Const(y)) => LieValue::Const(x + y * Rational::from_integer(sign.into())),
            (a, b) => {
                let b = as_lie(b, e)?.scale(&field.from_i64(sign));
                LieValue::Lie(as_lie(a, e)?.add(&b))
            }
        })
    };
    Ok(match &e.kind {
        ExprKind::Num(r) => LieValue::Const(r.clone()),
        ExprKind::Gen(g) => LieValue::Lie(LiePoly::generator(field, *g)),
        ExprKind::Add(a, b) => combine(lower_lie(a, field)?, lower_lie(b, field)?, 1)?,
        ExprKind::Sub(a, b) => combine(lower_lie(a, field)?, lower_lie(b, field)?, -1)?,
        ExprKind::Neg(a) => match lower_lie(a, field)? {
            LieValue::Const(c) => LieValue::Const(-c),
            LieValue::Lie(p) => LieValue::Lie(p.scale(&field.from_i64(-1))),
        },
        ExprKind::Mul(a, b) => match (lower_lie(a, field)?, lower_lie(b, field)?) {
            (LieValue::Const(x), LieValue::Const(y)) => LieValue::Const(x * y),
            (LieValue::Const(c), LieValue::Lie(p)) | (LieValue::Lie(p), LieValue::Const(c)) => {
                LieValue::Lie(p.scale(&scalar(field, &c, e)?))
            }
            _ => return Err(product_err()),
        },
        ExprKind::Pow(a, k) => match lower_lie(a, field)? {
            LieValue::Const(c) if *k >= 0 => LieValue::Const(num_traits::pow::pow(c, *k as usize)),
            LieValue::Lie(p) if *k == 1 => LieValue::Lie(p),
            _ => return Err(product_err()),
        },
        ExprKind::Bracket(a, b) => {
            let x = as_lie(lower_lie(a, field)?, a)?;
            let y = as_lie(lower_lie(b, field)?, b)?;
            LieValue::Lie(x.bracket(&y))
        }
    })
}

fn lower_group(e: &Expr) -> Result<GroupWord, ParseError> {
    let err = |kind| ParseError::new(e.line, e.column, kind);
    Ok(match &e.kind {
        ExprKind::Num(r) if r == &Rational::from_integer(1.into()) => Vec::new(),
        ExprKind::Gen(g) => vec![(*g, false)],
        ExprKind::Mul(a, b) => {
            let mut w = lower_group(a)?;
            w.extend(lower_group(b)?);
            w
        }
        ExprKind::Pow(a, k) => {
            let base = lower_group(a)?;
            let unit: GroupWord = if *k < 0 {
                base.iter().rev().map(|&(g, inv)| (g, !inv)).collect()
            } else {
                base
            };
            unit.repeat(k.unsigned_abs() as usize)
        }
        _ => return Err(err(ParseErrorKind::GroupWord)),
    })
}

struct Document {
    kind: Kind,
    field: FieldSpec,
    gens: Vec<String>,
    exprs: Vec<Expr>,
}

fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, gens: Vec::new() };
    let (kind, field) = p.header()?;
    p.generators()?;
    let exprs = p.relators()?;
    Ok(Document { kind, field, gens: p.gens, exprs })
}

/// Parses a `group` presentation, keeping the group words.
pub fn parse_group_presentation(text: &str) -> Result<GroupPresentation, ParseError> {
    let Document { kind, field, gens, exprs } = parse_document(text)?;
    if kind != Kind::Group {
        return Err(ParseError::new(1, 1, ParseErrorKind::NotGroup));
    }
    let words: Vec<GroupWord> = exprs.iter().map(lower_group).collect::<Result<_, _>>()?;
    GroupPresentation::new(field, gens, words).map_err(|e| ParseError::new(1, 1, ParseErrorKind::Invalid(e)))
}

/// Parses a presentation in the DSL. `group` presentations are converted
/// to the presentation of the group algebra.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let Document { kind, field, gens, exprs } = parse_document(text)?;
    let built = match kind {
        Kind::Algebra => {
            let rels = exprs.iter().map(|e| lower_assoc(e, field)).collect::<Result<_, _>>()?;
            Presentation::associative(field, gens, rels)
        }
        Kind::Lie => {
            let rels = exprs
                .iter()
                .map(|e| match lower_lie(e, field)? {
                    LieValue::Lie(p) => Ok(p),
                    LieValue::Const(c) if c.is_zero() => Ok(LiePoly::zero(field)),
                    LieValue::Const(_) => Err(ParseError::new(e.line, e.column, ParseErrorKind::LieConstant)),
                })
                .collect::<Result<_, _>>()?;
            Presentation::lie(field, gens, rels)
        }
        Kind::Group => {
            let words: Vec<GroupWord> = exprs.iter().map(lower_group).collect::<Result<_, _>>()?;
            group_algebra_presentation(field, &gens, &words)
        }
    };
    built.map_err(|e| ParseError::new(1, 1, ParseErrorKind::Invalid(e)))
}
