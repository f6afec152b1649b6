//! Recursive-descent parser for the component expression language.
//!
//! ```text
//! expr   = term { ("+" | "-") term } ;
//! term   = unary { ("*" | "/") unary } ;
//! unary  = ("+" | "-") unary | power ;
//! power  = atom [ "^" integer ] ;
//! atom   = integer | identifier | "sqrt" "(" integer ")" | "(" expr ")" ;
//! ```
//!
//! Identifiers are chart variables or one of `alpha`, `beta`, `sigma`,
//! `sqrtD`. Expressions are evaluated while parsing, so the result is a
//! canonical [`RatFunc`].

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Chart, RatFunc};
use crate::error::{Error, Result};
use crate::numfield::{MetallicParams, QuadScalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(Tok, usize)>> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && (bytes[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= bytes.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = bytes[start] as char;
        let column = start + 1;
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && (bytes[self.pos] as char).is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok(Some((Tok::Int(n), column)));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while self.pos < bytes.len()
                && ((bytes[self.pos] as char).is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok(Some((Tok::Ident(self.src[start..self.pos].to_string()), column)));
        }
        if "+-*/^()".contains(c) {
            self.pos += 1;
            return Ok(Some((Tok::Op(c), column)));
        }
        let ch = self.src[start..].chars().next().unwrap_or(c);
        Err(Error::Syntax {
            column,
            message: format!("unexpected character `{ch}`"),
        })
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end_column: usize,
    chart: &'a Chart,
    params: &'a MetallicParams,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|&(_, c)| c)
            .unwrap_or(self.end_column)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            self.err(format!("expected `{op}`"))
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            let col = self.column();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = acc.checked_add(&rhs).map_err(|e| at(col, e))?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = acc.checked_sub(&rhs).map_err(|e| at(col, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            let col = self.column();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = acc.checked_mul(&rhs).map_err(|e| at(col, e))?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return Err(Error::Syntax {
                        column: col,
                        message: "division by the zero expression".into(),
                    });
                }
                acc = acc.checked_div(&rhs).map_err(|e| at(col, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = match self.peek() {
                Some(Tok::Int(n)) => u32::try_from(n.clone())
                    .ok()
                    .filter(|&e| e <= 256)
                    .ok_or_else(|| Error::Syntax {
                        column: self.column(),
                        message: "exponent too large".into(),
                    })?,
                _ => return self.err("expected a nonnegative integer exponent"),
            };
            self.at += 1;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let col = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(RatFunc::constant(QuadScalar::from_rational(
                    BigRational::from_integer(n),
                )))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "sqrt" {
                    self.expect('(')?;
                    let n = match self.peek() {
                        Some(Tok::Int(n)) => u64::try_from(n.clone()).ok(),
                        _ => None,
                    };
                    let Some(n) = n else {
                        return self.err("sqrt takes a nonnegative integer literal");
                    };
                    self.at += 1;
                    self.expect(')')?;
                    return Ok(RatFunc::constant(QuadScalar::sqrt_of(n)));
                }
                if let Some(i) = self.chart.index_of(&name) {
                    return Ok(RatFunc::var(i));
                }
                let p = self.params;
                let value = match name.as_str() {
                    "alpha" => p.alpha_scalar(),
                    "beta" => p.beta_scalar(),
                    "sigma" => p.sigma().clone(),
                    "sqrtD" => p.sqrt_d().clone(),
                    _ => return Err(Error::UnknownIdentifier { name, column: col }),
                };
                Ok(RatFunc::constant(value))
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of expression"),
        }
    }
}

fn at(column: usize, e: Error) -> Error {
    match e {
        Error::DivisionByZero => Error::Syntax {
            column,
            message: "division by the zero expression".into(),
        },
        other => other,
    }
}

/// Parses `text` on `chart`, resolving the metallic constants from `params`.
pub fn parse_expr(text: &str, chart: &Chart, params: &MetallicParams) -> Result<RatFunc> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end_column: text.len() + 1,
        chart,
        params,
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
