//! A small expression language for cyclotomic integers.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := int | 'z(' uint ',' int ')' | '(' expr ')' | '-' atom
//! ```
//!
//! `z(n,k)` is `zeta_n^k`. Whitespace is ignored. The `Display` form of a
//! [`CyclotomicInteger`] is valid input.

use std::fmt;

use num_bigint::BigInt;

use crate::cyclonum::CyclotomicInteger;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Root { modulus: u64, exponent: i64 },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self) -> Result<CyclotomicInteger> {
        let bin = |a: &Expr, b: &Expr| -> Result<(CyclotomicInteger, CyclotomicInteger)> {
            let (a, b) = (a.eval()?, b.eval()?);
            Ok(CyclotomicInteger::lift_pair(&a, &b))
        };
        match self {
            Expr::Int(c) => Ok(CyclotomicInteger::from_integer(c.clone())),
            Expr::Root { modulus, exponent } => CyclotomicInteger::root(*modulus, *exponent),
            Expr::Neg(a) => Ok(a.eval()?.negate()),
            Expr::Add(a, b) => {
                let (a, b) = bin(a, b)?;
                a.add(&b)
            }
            Expr::Sub(a, b) => {
                let (a, b) = bin(a, b)?;
                a.sub(&b)
            }
            Expr::Mul(a, b) => {
                let (a, b) = bin(a, b)?;
                a.mul(&b)
            }
            Expr::Pow(a, k) => Ok(a.eval()?.pow(*k)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(c) => write!(f, "{c}"),
            Expr::Root { modulus, exponent } => write!(f, "z({modulus},{exponent})"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a})*({b})"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(
                self.pos,
                format!("expected '{}', found '{}'", c as char, x as char),
            ),
            None => self.err(
                self.pos,
                format!("expected '{}', found end of input", c as char),
            ),
        }
    }

    fn digits(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok((start, text))
    }

    fn uint<T: std::str::FromStr>(&mut self, what: &str) -> Result<(usize, T)> {
        let (start, text) = self.digits()?;
        match text.parse() {
            Ok(v) => Ok((start, v)),
            Err(_) => self.err(start, format!("{what} out of range")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let (_, k) = self.uint::<u32>("exponent")?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'z') => {
                let at = self.pos;
                self.pos += 1;
                self.expect(b'(')?;
                let (_, modulus) = self.uint::<u64>("modulus")?;
                if modulus == 0 {
                    return self.err(at, "root modulus must be positive");
                }
                self.expect(b',')?;
                let negative = self.peek() == Some(b'-');
                if negative {
                    self.pos += 1;
                }
                let (start, k) = self.uint::<i64>("exponent")?;
                self.expect(b')')?;
                let exponent = if negative { k.checked_neg() } else { Some(k) };
                match exponent {
                    Some(exponent) => Ok(Expr::Root { modulus, exponent }),
                    None => self.err(start, "exponent out of range"),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let (_, text) = self.digits()?;
                Ok(Expr::Int(text.parse().expect("decimal digits")))
            }
            Some(c) => self.err(self.pos, format!("unexpected '{}'", c as char)),
            None => self.err(self.pos, "unexpected end of input"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected '{}'", c as char));
    }
    Ok(e)
}

/// Parses and evaluates in one step.
pub fn evaluate(text: &str) -> Result<CyclotomicInteger> {
    parse_expr(text)?.eval()
}
