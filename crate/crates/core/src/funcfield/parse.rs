//! Recursive-descent parser for rational-function expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | VAR | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{Poly, RationalFunction, Q};
use crate::{Error, Result};

/// Parses an expression in the variable `t`.
pub fn parse_rational_function(text: &str) -> Result<RationalFunction> {
    parse_rational_function_in(text, "t")
}

/// Parses an expression in the variable `var`.
pub fn parse_rational_function_in(text: &str, var: &str) -> Result<RationalFunction> {
    let mut p = Parser { src: text, pos: 0, var };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

/// Parses an expression that must reduce to a polynomial.
pub fn parse_poly(text: &str, var: &str) -> Result<Poly> {
    let a = parse_rational_function_in(text, var)?;
    if !a.is_polynomial() {
        return Err(Error::Syntax { pos: 0, msg: format!("`{text}` is not a polynomial") });
    }
    Ok(a.numer().clone())
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).map_err(|_| Error::Syntax {
                    pos: at,
                    msg: "division by the zero function".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let e = self.integer().ok_or_else(|| self.error("expected a nonnegative integer exponent"))?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return base.pow(i64::from(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        if let Some(n) = self.integer() {
            return Ok(RationalFunction::constant(Q::from_integer(n)));
        }
        let rest = &self.src[self.pos..];
        let ident_len = rest
            .char_indices()
            .find(|&(_, c)| !(c.is_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        if ident_len == 0 {
            return Err(match self.peek() {
                None => self.error("unexpected end of input"),
                Some(c) => self.error(&format!("unexpected character `{c}`")),
            });
        }
        if &rest[..ident_len] != self.var {
            return Err(self.error(&format!("unknown symbol `{}`", &rest[..ident_len])));
        }
        self.pos += ident_len;
        Ok(RationalFunction::from_poly(Poly::x()))
    }

    fn integer(&mut self) -> Option<BigInt> {
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        rest[..len].parse().ok()
    }
}
