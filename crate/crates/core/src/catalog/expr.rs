//! Small expression language for transcribed tables.
//!
//! `x@y` is a tensor, `*` is scalar or algebra multiplication, numbers are
//! integers or fractions, `i` is the imaginary unit. A bare scalar next to `@`
//! or `+` stands for that multiple of the unit.

use crate::error::{Error, Result};
use crate::scalar::GaussScalar;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(GaussScalar),
    I,
    Ident(String),
    Plus,
    Minus,
    Star,
    At,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' => k += 1,
            '+' => {
                out.push(Tok::Plus);
                k += 1
            }
            '-' => {
                out.push(Tok::Minus);
                k += 1
            }
            '*' => {
                out.push(Tok::Star);
                k += 1
            }
            '@' => {
                out.push(Tok::At);
                k += 1
            }
            '(' => {
                out.push(Tok::Open);
                k += 1
            }
            ')' => {
                out.push(Tok::Close);
                k += 1
            }
            d if d.is_ascii_digit() => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '/') {
                    k += 1;
                }
                let text: String = chars[start..k].iter().collect();
                out.push(Tok::Num(GaussScalar::from_str(&text)?));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                let text: String = chars[start..k].iter().collect();
                out.push(if text == "i" { Tok::I } else { Tok::Ident(text) });
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}` in `{src}`"))),
        }
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(GaussScalar),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn fail(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in `{}`", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.tensor()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.tensor()?
            }
            _ => self.tensor()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.tensor()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.tensor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let left = self.product()?;
        if self.peek() == Some(&Tok::At) {
            self.bump();
            let right = self.product()?;
            return Ok(Expr::Tensor(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.atom()?));
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(Tok::Num(s)) => Ok(Expr::Scalar(s)),
            Some(Tok::I) => Ok(Expr::Scalar(GaussScalar::i())),
            Some(Tok::Ident(n)) => Ok(Expr::Name(n)),
            Some(Tok::Open) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::Close) => Ok(e),
                    _ => Err(self.fail("expected `)`")),
                }
            }
            _ => Err(self.fail("expected a number, name or `(`")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.fail("trailing input"));
    }
    Ok(e)
}

/// The operations an interpretation of [`Expr`] must provide.
pub trait Interp {
    type V: Clone;
    fn scalar(&self, s: &GaussScalar) -> Result<Self::V>;
    fn name(&self, n: &str) -> Result<Self::V>;
    fn add(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn scale(&self, s: &GaussScalar, a: Self::V) -> Result<Self::V>;
    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn tensor(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    /// The scalar held by `v`, if it is one.
    fn as_scalar(&self, v: &Self::V) -> Option<GaussScalar>;
}

pub fn eval<I: Interp>(e: &Expr, it: &I) -> Result<I::V> {
    let minus_one = GaussScalar::from_int(-1);
    match e {
        Expr::Scalar(s) => it.scalar(s),
        Expr::Name(n) => it.name(n),
        Expr::Neg(a) => {
            let v = eval(a, it)?;
            it.scale(&minus_one, v)
        }
        Expr::Add(a, b) => it.add(eval(a, it)?, eval(b, it)?),
        Expr::Sub(a, b) => {
            let r = it.scale(&minus_one, eval(b, it)?)?;
            it.add(eval(a, it)?, r)
        }
        Expr::Mul(a, b) => {
            let (x, y) = (eval(a, it)?, eval(b, it)?);
            match (it.as_scalar(&x), it.as_scalar(&y)) {
                (Some(s), _) => it.scale(&s, y),
                (None, Some(s)) => it.scale(&s, x),
                _ => it.mul(x, y),
            }
        }
        Expr::Tensor(a, b) => it.tensor(eval(a, it)?, eval(b, it)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sc;

    /// Evaluates to plain scalars, with names bound to 2 and tensor as product.
    struct Num;

    impl Interp for Num {
        type V = GaussScalar;
        fn scalar(&self, s: &GaussScalar) -> Result<GaussScalar> {
            Ok(s.clone())
        }
        fn name(&self, _: &str) -> Result<GaussScalar> {
            Ok(GaussScalar::from_int(2))
        }
        fn add(&self, a: GaussScalar, b: GaussScalar) -> Result<GaussScalar> {
            Ok(a + b)
        }
        fn scale(&self, s: &GaussScalar, a: GaussScalar) -> Result<GaussScalar> {
            Ok(s * &a)
        }
        fn mul(&self, a: GaussScalar, b: GaussScalar) -> Result<GaussScalar> {
            Ok(a * b)
        }
        fn tensor(&self, a: GaussScalar, b: GaussScalar) -> Result<GaussScalar> {
            Ok(a * b)
        }
        fn as_scalar(&self, v: &GaussScalar) -> Option<GaussScalar> {
            Some(v.clone())
        }
    }

    #[test]
    fn precedence_and_signs() {
        let e = parse("-1@1 + 1/2*(x@1 - 3/4*x@x) + i*y").unwrap();
        assert_eq!(eval(&e, &Num).unwrap(), sc("-1") + sc("1/2") * (sc("2") - sc("3")) + sc("2*i"));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse("x@").is_err());
        assert!(parse("(x + y").is_err());
        assert!(parse("x $ y").is_err());
        assert!(parse("x y").is_err());
    }
}
