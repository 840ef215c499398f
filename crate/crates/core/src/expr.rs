//! A small expression grammar shared by every text format in the crate:
//! sums of products of integers and symbols, with `^` powers and parentheses.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | symbol | '(' expr ')'
//! ```
//!
//! Symbols are `x<k>`, `y<k>` (base generators), `t`, `u` (kernel generators)
//! and `s` (formal variable of a power series). Which symbols are legal is
//! decided by the [`ExprRing`] an expression is evaluated in.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("unexpected character {ch:?} at column {col}")]
    UnexpectedChar { ch: char, col: usize },
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("expected {expected} at column {col}")]
    Expected { expected: &'static str, col: usize },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("{0}")]
    Eval(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Symbol(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Target of expression evaluation.
pub trait ExprRing: Sized + Clone {
    fn from_int(&self, n: i64) -> Result<Self, ExprError>;
    fn symbol(&self, name: &str) -> Result<Self, ExprError>;
    fn add(&self, other: &Self) -> Result<Self, ExprError>;
    fn mul(&self, other: &Self) -> Result<Self, ExprError>;
    fn neg(&self) -> Result<Self, ExprError>;
}

impl Expr {
    pub fn eval<R: ExprRing>(&self, ctx: &R) -> Result<R, ExprError> {
        match self {
            Expr::Int(n) => ctx.from_int(*n),
            Expr::Symbol(s) => ctx.symbol(s),
            Expr::Neg(a) => a.eval(ctx)?.neg(),
            Expr::Add(a, b) => a.eval(ctx)?.add(&b.eval(ctx)?),
            Expr::Sub(a, b) => a.eval(ctx)?.add(&b.eval(ctx)?.neg()?),
            Expr::Mul(a, b) => a.eval(ctx)?.mul(&b.eval(ctx)?),
            Expr::Pow(a, k) => {
                let base = a.eval(ctx)?;
                let mut acc = ctx.from_int(1)?;
                for _ in 0..*k {
                    acc = acc.mul(&base)?;
                }
                Ok(acc)
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if let Some((_, col)) = p.tokens.get(p.pos) {
        return Err(ExprError::Expected {
            expected: "end of expression",
            col: *col,
        });
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Sym(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                    col,
                ));
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse::<i64>().map_err(|_| ExprError::Expected {
                    expected: "integer that fits in 64 bits",
                    col,
                })?;
                out.push((Tok::Int(n), col));
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Sym(chars[start..i].iter().collect()), col));
            }
            other => return Err(ExprError::UnexpectedChar { ch: other, col }),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| self.tokens.last().map(|(_, c)| c + 1).unwrap_or(1))
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            Expr::Neg(Box::new(self.term()?))
        } else {
            if self.peek() == Some(&Tok::Plus) {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Int(k)) if (0..=u32::MAX as i64).contains(&k) => {
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), k as u32))
                }
                Some(_) => Err(ExprError::Expected {
                    expected: "nonnegative integer exponent",
                    col,
                }),
                None => Err(ExprError::UnexpectedEnd),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Sym(s)) => {
                self.pos += 1;
                Ok(Expr::Symbol(s))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(ExprError::Expected {
                        expected: "')'",
                        col: self.col(),
                    });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => Err(ExprError::Expected {
                expected: "integer, symbol or '('",
                col,
            }),
            None => Err(ExprError::UnexpectedEnd),
        }
    }
}

/// Integer polynomials in the formal variable `s`, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    pub fn parse(text: &str) -> Result<IntPoly, ExprError> {
        parse(text)?.eval(&IntPoly(vec![]))
    }

    fn trimmed(mut v: Vec<i64>) -> IntPoly {
        while v.last() == Some(&0) {
            v.pop();
        }
        IntPoly(v)
    }
}

impl ExprRing for IntPoly {
    fn from_int(&self, n: i64) -> Result<Self, ExprError> {
        Ok(IntPoly::trimmed(vec![n]))
    }
    fn symbol(&self, name: &str) -> Result<Self, ExprError> {
        if name == "s" {
            Ok(IntPoly(vec![0, 1]))
        } else {
            Err(ExprError::UnknownSymbol(name.to_string()))
        }
    }
    fn add(&self, other: &Self) -> Result<Self, ExprError> {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        Ok(IntPoly::trimmed(v))
    }
    fn mul(&self, other: &Self) -> Result<Self, ExprError> {
        if self.0.is_empty() || other.0.is_empty() {
            return Ok(IntPoly(vec![]));
        }
        let mut v = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] = v[i + j]
                    .checked_add(a.checked_mul(*b).ok_or_else(|| ExprError::Eval("overflow".into()))?)
                    .ok_or_else(|| ExprError::Eval("overflow".into()))?;
            }
        }
        Ok(IntPoly::trimmed(v))
    }
    fn neg(&self) -> Result<Self, ExprError> {
        Ok(IntPoly(self.0.iter().map(|x| -x).collect()))
    }
}
