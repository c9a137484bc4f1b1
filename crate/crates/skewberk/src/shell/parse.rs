//! Tokenizer and recursive-descent parser for map specs, rational
//! expressions, point and direction literals.
//!
//! Precedence, loosest first: unary minus, `+ -`, `* /`, `^`. So `-x + y`
//! means `-(x + y)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::berktree::{BerkPoint, Direction};
use crate::error::{Error, Result};
use crate::ratcalc::RationalFunc;
use crate::valcore::{default_order, Classical, PuiseuxSeries, Rat, ValExp};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
        } else if ch == '#' {
            while let Some(&(_, c)) = it.peek() {
                if c == '\n' {
                    break;
                }
                it.next();
            }
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                it.next();
            }
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), pos: i });
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                s.push(c);
                it.next();
            }
            out.push(Token { tok: Tok::Ident(s), pos: i });
        } else if "+-*/^()=;,".contains(ch) {
            out.push(Token { tok: Tok::Sym(ch), pos: i });
            it.next();
        } else {
            return Err(syntax_at(src, i, format!("unexpected character `{ch}`")));
        }
    }
    out.push(Token { tok: Tok::Eof, pos: src.len() });
    Ok(out)
}

fn syntax_at(src: &str, pos: usize, msg: String) -> Error {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Error::Syntax { line, col, msg }
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    i: usize,
    prec: Rat,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str, prec: Rat) -> Result<Self> {
        Ok(Parser { src, toks: tokenize(src)?, i: 0, prec })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn pos(&self) -> usize {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if t != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(syntax_at(self.src, self.pos(), msg.into()))
    }

    fn at_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == s)
    }

    pub(crate) fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    /// expr := '-' expr | sum
    pub(crate) fn expr(&mut self) -> Result<RationalFunc> {
        if self.eat_sym('-') {
            return Ok(self.expr()?.neg());
        }
        self.sum()
    }

    fn sum(&mut self) -> Result<RationalFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunc> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_sym('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.at_sym('/') {
                let at = self.pos();
                self.bump();
                let rhs = self.factor()?;
                acc = acc.div(&rhs).map_err(|_| syntax_at(self.src, at, "division by zero".into()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunc> {
        let base = self.atom()?;
        if !self.at_sym('^') {
            return Ok(base);
        }
        let at = self.pos();
        self.bump();
        let e = self.exponent()?;
        let fail = |m: String| syntax_at(self.src, at, m);
        if e.is_integer() {
            let n = e.to_integer().to_i64().filter(|n| n.abs() <= 4096).ok_or_else(|| fail("exponent too large".into()))?;
            return base.powi(n).map_err(|_| fail("zero to a negative power".into()));
        }
        if !base.is_y_free() {
            return Err(fail("fractional powers apply to x only".into()));
        }
        let s = y_free_series(&base, &self.prec)?;
        let p = s.pow_rat(&e, &self.prec).map_err(|err| fail(err.to_string()))?;
        Ok(RationalFunc::constant(p))
    }

    /// `n`, `(p/q)`, `(-p/q)` or `-n` after `^`.
    fn exponent(&mut self) -> Result<Rat> {
        if self.eat_sym('(') {
            let r = self.signed_rat()?;
            self.expect_sym(')')?;
            return Ok(r);
        }
        let neg = self.eat_sym('-');
        let n = self.int()?;
        Ok(Rat::from_integer(if neg { -n } else { n }))
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn signed_rat(&mut self) -> Result<Rat> {
        let neg = self.eat_sym('-');
        let n = self.int()?;
        let d = if self.eat_sym('/') { self.int()? } else { BigInt::one() };
        if d.is_zero() {
            return self.err("zero denominator");
        }
        let r = Rat::new(n, d);
        Ok(if neg { -r } else { r })
    }

    fn atom(&mut self) -> Result<RationalFunc> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(RationalFunc::constant(PuiseuxSeries::constant(Rat::from_integer(n))))
            }
            Tok::Ident(s) if s == "x" => {
                self.bump();
                Ok(RationalFunc::constant(PuiseuxSeries::x()))
            }
            Tok::Ident(s) if s == "y" => {
                self.bump();
                Ok(RationalFunc::y())
            }
            Tok::Ident(s) if s == "O" => {
                // O(x^(T))
                self.bump();
                self.expect_sym('(')?;
                if !self.at_ident("x") {
                    return self.err("expected `x` inside O(..)");
                }
                self.bump();
                let t = if self.eat_sym('^') { self.exponent()? } else { Rat::one() };
                self.expect_sym(')')?;
                Ok(RationalFunc::constant(PuiseuxSeries::big_o(t)))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Eof => self.err("unexpected end of input"),
            t => self.err(format!("unexpected {}", describe(&t))),
        }
    }

    /// A y-free expression as a series.
    pub(crate) fn series(&mut self) -> Result<PuiseuxSeries> {
        let at = self.pos();
        let f = self.expr()?;
        if !f.is_y_free() {
            return Err(syntax_at(self.src, at, "expected an expression in x only".into()));
        }
        y_free_series(&f, &self.prec).map_err(|e| syntax_at(self.src, at, e.to_string()))
    }

    /// A radius exponent: the raw text up to the closing parenthesis.
    fn valexp(&mut self) -> Result<ValExp> {
        let start = self.pos();
        let mut depth = 0usize;
        while !(depth == 0 && (self.at_sym(')') || self.at_sym(','))) {
            match self.bump() {
                Tok::Eof => return self.err("unterminated radius"),
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => depth -= 1,
                _ => {}
            }
        }
        let text = &self.src[start..self.pos()];
        if text.trim().is_empty() {
            return Err(syntax_at(self.src, start, "expected a radius".into()));
        }
        text.parse::<ValExp>().map_err(|e| syntax_at(self.src, start, e.to_string()))
    }

    /// `zeta(c, r)`, `gauss`, `typeI(a)`, `infty`, `typeIV(zeta(..), ..)`.
    pub(crate) fn point(&mut self) -> Result<BerkPoint> {
        let at = self.pos();
        let name = match self.bump() {
            Tok::Ident(s) => s,
            t => return Err(syntax_at(self.src, at, format!("expected a point, found {}", describe(&t)))),
        };
        let wrap = |e: Error| match e {
            Error::Syntax { .. } => e,
            other => syntax_at(self.src, at, other.to_string()),
        };
        match name.as_str() {
            "gauss" => Ok(BerkPoint::gauss()),
            "infty" => Ok(BerkPoint::infinity()),
            "typeI" => {
                self.expect_sym('(')?;
                let a = self.series()?;
                self.expect_sym(')')?;
                Ok(BerkPoint::TypeI(Classical::Finite(a)))
            }
            "zeta" => {
                let (c, r) = self.disk_args()?;
                BerkPoint::disk(&c, r).map_err(wrap)
            }
            "typeIV" => {
                self.expect_sym('(')?;
                let mut chain = Vec::new();
                loop {
                    if !self.at_ident("zeta") {
                        return self.err("expected zeta(..) inside typeIV");
                    }
                    self.bump();
                    chain.push(self.disk_args()?);
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(')')?;
                BerkPoint::type_iv(chain).map_err(wrap)
            }
            other => Err(syntax_at(self.src, at, format!("unknown point kind `{other}`"))),
        }
    }

    fn disk_args(&mut self) -> Result<(PuiseuxSeries, ValExp)> {
        self.expect_sym('(')?;
        let c = self.series()?;
        self.expect_sym(',')?;
        let r = self.valexp()?;
        self.expect_sym(')')?;
        Ok((c, r))
    }

    /// `out` or `res(b)`.
    pub(crate) fn direction(&mut self, at: &BerkPoint) -> Result<Direction> {
        let pos = self.pos();
        if self.at_ident("out") {
            self.bump();
            return Ok(Direction::outward(at.clone()));
        }
        if self.at_ident("res") {
            self.bump();
            self.expect_sym('(')?;
            let b = self.series()?;
            self.expect_sym(')')?;
            return Direction::residue(at.clone(), &b).map_err(|e| syntax_at(self.src, pos, e.to_string()));
        }
        self.err("expected `out` or `res(..)`")
    }

    /// `phi1 = ..; phi2 = ..; name = value; ..`
    pub(crate) fn spec(&mut self) -> Result<SpecParts> {
        let mut phi1 = None;
        let mut phi2 = None;
        let mut opts = Vec::new();
        while *self.peek() != Tok::Eof {
            let at = self.pos();
            let name = match self.bump() {
                Tok::Ident(s) => s,
                t => return Err(syntax_at(self.src, at, format!("expected a name, found {}", describe(&t)))),
            };
            self.expect_sym('=')?;
            match name.as_str() {
                "phi1" | "phi2" => {
                    let start = self.pos();
                    let e = self.expr()?;
                    let text = self.src[start..self.pos()].trim().to_string();
                    let slot = if name == "phi1" { &mut phi1 } else { &mut phi2 };
                    if slot.replace((e, text)).is_some() {
                        return Err(syntax_at(self.src, at, format!("`{name}` given twice")));
                    }
                }
                _ => {
                    let start = self.pos();
                    while !(self.at_sym(';') || *self.peek() == Tok::Eof) {
                        self.bump();
                    }
                    opts.push((name, self.src[start..self.pos()].trim().to_string(), at));
                }
            }
            self.expect_sym(';')?;
        }
        match (phi1, phi2) {
            (Some(a), Some(b)) => Ok(SpecParts { phi1: a, phi2: b, opts }),
            (None, _) => self.err("missing `phi1 = ...;`"),
            (_, None) => self.err("missing `phi2 = ...;`"),
        }
    }

    pub(crate) fn syntax(&self, pos: usize, msg: String) -> Error {
        syntax_at(self.src, pos, msg)
    }
}

/// Both components with their source text, plus raw `(name, value, offset)`
/// options.
pub(crate) struct SpecParts {
    pub phi1: (RationalFunc, String),
    pub phi2: (RationalFunc, String),
    pub opts: Vec<(String, String, usize)>,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

/// The series value of a y-free rational function.
pub(crate) fn y_free_series(f: &RationalFunc, prec: &Rat) -> Result<PuiseuxSeries> {
    let n = f.num().coeff(0);
    let d = f.den().coeff(0);
    if d == PuiseuxSeries::one() {
        return Ok(n);
    }
    Ok(&n * &d.inv(prec)?)
}

pub fn parse_expr(src: &str) -> Result<RationalFunc> {
    let mut p = Parser::new(src, default_order())?;
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

pub fn parse_series(src: &str) -> Result<PuiseuxSeries> {
    let mut p = Parser::new(src, default_order())?;
    let e = p.series()?;
    p.expect_eof()?;
    Ok(e)
}

pub fn parse_point(src: &str) -> Result<BerkPoint> {
    let mut p = Parser::new(src, default_order())?;
    let z = p.point()?;
    p.expect_eof()?;
    Ok(z)
}

pub fn parse_direction(src: &str, at: &BerkPoint) -> Result<Direction> {
    let mut p = Parser::new(src, default_order())?;
    let d = p.direction(at)?;
    p.expect_eof()?;
    Ok(d)
}

/// Splits `a, b, c` on commas outside parentheses.
pub fn split_top_level(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(src[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}
