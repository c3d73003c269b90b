//! Recursive-descent parser for polynomial and series expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | "+" unary | power
//! power  := atom ("^" (integer | "(" rational ")"))?
//! atom   := integer ("/" integer)? | ident | "(" expr ")"
//! ```
//! A fractional exponent is only accepted on the variable `t` in series
//! expressions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Q;
use crate::error::{Error, Result};

/// Largest exponent accepted on a single variable while parsing.
pub const PARSE_DEGREE_CAP: u32 = 256;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    tok: Tok::Num(s.parse().expect("digits")),
                    col,
                });
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    col,
                });
                continue;
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column: col,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push(Spanned { tok, col });
        i += 1;
    }
    Ok(out)
}

/// Monomial keys the evaluator can multiply and raise to powers.
pub(crate) trait MonoKey: Ord + Clone {
    fn unit() -> Self;
    fn var(name: &str, allowed: &str) -> Option<Self>;
    fn combine(&self, other: &Self) -> Self;
    /// `self^e` for a monomial; `None` when the exponent is not allowed.
    fn power(&self, e: &Q) -> Option<Self>;
    fn max_exponent(&self) -> u32;
}

/// Exponent vector over (x, y, z, t).
pub(crate) type Mono = [u32; 4];

const VARS: [&str; 4] = ["x", "y", "z", "t"];

impl MonoKey for Mono {
    fn unit() -> Self {
        [0; 4]
    }
    fn var(name: &str, allowed: &str) -> Option<Self> {
        let i = VARS.iter().position(|v| *v == name)?;
        if !allowed.contains(name) {
            return None;
        }
        let mut m = [0; 4];
        m[i] = 1;
        Some(m)
    }
    fn combine(&self, o: &Self) -> Self {
        [self[0] + o[0], self[1] + o[1], self[2] + o[2], self[3] + o[3]]
    }
    fn power(&self, e: &Q) -> Option<Self> {
        if !e.is_integer() || e.is_negative() {
            return None;
        }
        let k = e.to_integer().to_u32()?;
        Some([self[0] * k, self[1] * k, self[2] * k, self[3] * k])
    }
    fn max_exponent(&self) -> u32 {
        *self.iter().max().unwrap()
    }
}

/// Fractional power of t.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) struct TExp(pub Q);

impl MonoKey for TExp {
    fn unit() -> Self {
        TExp(Q::zero())
    }
    fn var(name: &str, _allowed: &str) -> Option<Self> {
        (name == "t").then(|| TExp(Q::one()))
    }
    fn combine(&self, o: &Self) -> Self {
        TExp(&self.0 + &o.0)
    }
    fn power(&self, e: &Q) -> Option<Self> {
        (!e.is_negative()).then(|| TExp(&self.0 * e))
    }
    fn max_exponent(&self) -> u32 {
        self.0.ceil().to_integer().to_u32().unwrap_or(u32::MAX)
    }
}

pub(crate) type Sparse<K> = BTreeMap<K, Q>;

fn add_into<K: MonoKey>(acc: &mut Sparse<K>, k: K, c: Q) {
    let e = acc.entry(k.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

fn sp_mul<K: MonoKey>(a: &Sparse<K>, b: &Sparse<K>) -> Sparse<K> {
    let mut out = Sparse::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            add_into(&mut out, ka.combine(kb), ca * cb);
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
    allowed: &'a str,
    /// Whether an "O(...)" order term is accepted at top level.
    order_term: bool,
    order: Option<Q>,
}

impl<'a> Parser<'a> {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: col,
            message: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|s| s.col).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(self.col(), format!("expected {what}")))
        }
    }

    fn expr<K: MonoKey>(&mut self) -> Result<Sparse<K>> {
        let mut acc = self.term::<K>()?;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            if self.order_term && self.at_order_term() {
                if neg {
                    return Err(self.err(self.col(), "order term must be added"));
                }
                self.parse_order_term()?;
                break;
            }
            let rhs = self.term::<K>()?;
            for (k, c) in rhs {
                add_into(&mut acc, k, if neg { -c } else { c });
            }
        }
        Ok(acc)
    }

    fn at_order_term(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "O")
    }

    fn parse_order_term(&mut self) -> Result<()> {
        self.pos += 1;
        self.expect(Tok::LParen, "'(' after O")?;
        let col = self.col();
        match self.bump() {
            Some(Tok::Ident(s)) if s == "t" => {}
            _ => return Err(self.err(col, "expected t inside O(...)")),
        }
        let e = if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            self.exponent(true)?
        } else {
            Q::one()
        };
        self.expect(Tok::RParen, "')'")?;
        self.order = Some(e);
        Ok(())
    }

    fn term<K: MonoKey>(&mut self) -> Result<Sparse<K>> {
        let mut acc = self.unary::<K>()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let col = self.col();
            let rhs = self.unary::<K>()?;
            acc = sp_mul(&acc, &rhs);
            self.check_cap(&acc, col)?;
        }
        Ok(acc)
    }

    fn check_cap<K: MonoKey>(&self, p: &Sparse<K>, col: usize) -> Result<()> {
        if p.keys().any(|k| k.max_exponent() > PARSE_DEGREE_CAP) {
            return Err(Error::DegreeLimit(format!(
                "line {}, column {col}: exponent above {PARSE_DEGREE_CAP}",
                self.line
            )));
        }
        Ok(())
    }

    fn unary<K: MonoKey>(&mut self) -> Result<Sparse<K>> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let v = self.unary::<K>()?;
                Ok(v.into_iter().map(|(k, c)| (k, -c)).collect())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary::<K>()
            }
            _ => self.power::<K>(),
        }
    }

    fn exponent(&mut self, allow_frac: bool) -> Result<Q> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Q::from_integer(n)),
            Some(Tok::LParen) if allow_frac => {
                let num_col = self.col();
                let n = match self.bump() {
                    Some(Tok::Num(n)) => n,
                    _ => return Err(self.err(num_col, "expected integer exponent")),
                };
                let e = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let dcol = self.col();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => Q::new(n, d),
                        _ => return Err(self.err(dcol, "expected nonzero denominator")),
                    }
                } else {
                    Q::from_integer(n)
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Minus) => Err(self.err(col, "exponent must be a nonnegative integer")),
            _ => Err(self.err(col, "expected exponent")),
        }
    }

    fn power<K: MonoKey>(&mut self) -> Result<Sparse<K>> {
        let base_col = self.col();
        let base = self.atom::<K>()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let ecol = self.col();
        let e = self.exponent(self.order_term)?;
        if self.peek() == Some(&Tok::Caret) {
            return Err(self.err(self.col(), "chained exponents need parentheses"));
        }
        // a bare monomial with coefficient 1 takes any exponent its key allows
        if base.len() == 1 {
            let (k, c) = base.iter().next().unwrap();
            if c.is_one() {
                return match k.power(&e) {
                    Some(kp) => {
                        let out: Sparse<K> = [(kp, Q::one())].into_iter().collect();
                        self.check_cap(&out, base_col)?;
                        Ok(out)
                    }
                    None => Err(self.err(ecol, "exponent must be a nonnegative integer")),
                };
            }
        }
        if !e.is_integer() || e.is_negative() {
            return Err(self.err(ecol, "exponent must be a nonnegative integer"));
        }
        let k = e
            .to_integer()
            .to_u32()
            .filter(|&k| k <= PARSE_DEGREE_CAP)
            .ok_or_else(|| Error::DegreeLimit(format!("line {}, column {ecol}: exponent too large", self.line)))?;
        let mut acc: Sparse<K> = [(K::unit(), Q::one())].into_iter().collect();
        for _ in 0..k {
            acc = sp_mul(&acc, &base);
            self.check_cap(&acc, base_col)?;
        }
        Ok(acc)
    }

    fn atom<K: MonoKey>(&mut self) -> Result<Sparse<K>> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let v = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let dcol = self.col();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => Q::new(n, d),
                        Some(Tok::Num(_)) => return Err(self.err(dcol, "division by zero")),
                        _ => return Err(self.err(dcol, "expected integer denominator")),
                    }
                } else {
                    Q::from_integer(n)
                };
                let mut m = Sparse::new();
                add_into(&mut m, K::unit(), v);
                Ok(m)
            }
            Some(Tok::Ident(name)) => match K::var(&name, self.allowed) {
                Some(k) => Ok([(k, Q::one())].into_iter().collect()),
                None => Err(self.err(col, format!("unknown identifier '{name}'"))),
            },
            Some(Tok::LParen) => {
                let v = self.expr::<K>()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            Some(Tok::Slash) => Err(self.err(col, "'/' only forms rational literals p/q")),
            Some(_) => Err(self.err(col, "unexpected token")),
            None => Err(self.err(col, "unexpected end of input")),
        }
    }
}

fn run<K: MonoKey>(
    text: &str,
    line: usize,
    col0: usize,
    allowed: &str,
    order_term: bool,
) -> Result<(Sparse<K>, Option<Q>)> {
    let toks = lex(text, line, col0)?;
    let end_col = col0 + text.chars().count();
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col,
        allowed,
        order_term,
        order: None,
    };
    if p.toks.is_empty() {
        return Err(p.err(col0, "empty expression"));
    }
    let v = if order_term && p.at_order_term() {
        // a series known to be zero below the order term
        p.parse_order_term()?;
        Sparse::new()
    } else {
        p.expr::<K>()?
    };
    if p.pos < p.toks.len() {
        let col = p.col();
        let msg = match p.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::LParen) => {
                "implicit multiplication is not allowed; use '*'"
            }
            Some(Tok::RParen) => "unbalanced ')'",
            _ => "unexpected token",
        };
        return Err(p.err(col, msg));
    }
    Ok((v, p.order))
}

/// Parses an expression in the given variables (a subset of "xyzt").
pub(crate) fn parse_sparse(text: &str, line: usize, col0: usize, allowed: &str) -> Result<Sparse<Mono>> {
    run::<Mono>(text, line, col0, allowed, false).map(|(v, _)| v)
}

/// Parses a series in fractional powers of t with an optional `O(t^k)` tail.
pub(crate) fn parse_series_sparse(text: &str) -> Result<(Sparse<TExp>, Option<Q>)> {
    run::<TExp>(text, 1, 1, "t", true)
}
