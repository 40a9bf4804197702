//! A small expression language for polynomial and scalar literals.
//!
//! ```text
//! expr   := [+|-] term { (+|-) term }
//! term   := power { [*|/] power }        (juxtaposition multiplies: 2t, (s+1)t)
//! power  := atom [ ^ digits ]
//! atom   := digits | t | s | g | ( expr )
//! ```
//!
//! `t` is the polynomial variable, `s` the transcendental of GF(p)(s) and `g`
//! the generator of an extension field. Division is only allowed by nonzero
//! constants, so `1/3`, `(s+1)/s` and `t^2/2` are fine but `1/t` is not.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            't' | 's' | 'g' => out.push(Token::Ident(c)),
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '/' => out.push(Token::Slash),
            '^' => out.push(Token::Caret),
            '(' => out.push(Token::LParen),
            ')' => out.push(Token::RParen),
            other => return Err(Error::Parse(format!("unexpected character `{other}` in `{text}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    tokens: Vec<Token>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.text))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.err("division by a non-constant or zero expression"));
                    }
                    let inv = self.field.inv(&d.coeff(0))?;
                    acc = acc.scale(&inv);
                }
                Some(Token::Int(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let f = self.field;
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Poly::constant(f, f.from_bigint(&n)))
            }
            Some(Token::Ident('t')) => {
                self.pos += 1;
                Ok(Poly::var(f))
            }
            Some(Token::Ident(c)) => {
                self.pos += 1;
                match (f.symbol(), f.generator()) {
                    (Some(sym), Some(gen)) if sym.starts_with(c) => Ok(Poly::constant(f, gen)),
                    _ => Err(self.err(&format!("symbol `{c}` is not defined over {f}"))),
                }
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.err("unexpected end or token")),
        }
    }
}

/// Parses a polynomial in `t` over `field`.
pub fn parse_poly(field: &Field, text: &str) -> Result<Poly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { field, tokens, pos: 0, text };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(p)
}

/// Parses a constant expression (no `t`).
pub fn parse_scalar(field: &Field, text: &str) -> Result<Scalar> {
    let p = parse_poly(field, text)?;
    if !p.is_constant() {
        return Err(Error::Parse(format!("`{text}` is not a constant")));
    }
    Ok(p.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let q = Field::rationals();
        let p = parse_poly(&q, "t^2 - 2t + 1").unwrap();
        assert_eq!(p, Poly::from_ints(&q, &[1, -2, 1]));
        let third = parse_scalar(&q, "1/3").unwrap();
        assert_eq!(q.mul(&third, &q.from_i64(3)), q.one());
        assert_eq!(parse_poly(&q, "-(t+1)^2").unwrap(), Poly::from_ints(&q, &[-1, -2, -1]));
        assert!(parse_poly(&q, "1/t").is_err());
        assert!(parse_poly(&q, "t^2+s").is_err());
        assert!(parse_poly(&q, "t^2+").is_err());
        assert!(parse_poly(&q, "t)").is_err());
    }

    #[test]
    fn ratfunc_literals() {
        let f = Field::parse("GF(2)(s)").unwrap();
        let p = parse_poly(&f, "t^2+t+(1+s)").unwrap();
        assert_eq!(p.degree(), Some(2));
        let c = parse_scalar(&f, "(s^2+1)/(s+1)").unwrap();
        assert_eq!(c, parse_scalar(&f, "s+1").unwrap());
    }
}
