//! Polynomial text grammar.
//!
//! Variables are identifiers, `^` takes powers, `*` is optional
//! (juxtaposition multiplies), literals are integers or `a/b` rationals,
//! `+`/`-` and parentheses as usual. The parser accepts everything the
//! printer emits, so print-then-parse is the identity up to term order.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::Error;
use crate::field::Scalar;
use crate::poly::Poly;
use crate::ring::Ring;
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Nat(BigUint),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' | '−' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' | '·' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n = digits
                    .bytes()
                    .fold(BigUint::ZERO, |acc, b| acc * 10u32 + (b - b'0'));
                toks.push(Tok::Nat(n));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(name));
            }
            other => {
                return Err(Error::Parse(alloc::format!(
                    "unexpected character `{}`",
                    other
                )))
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // Juxtaposition: `2x`, `x y`, `3(x+1)`.
                Some(Tok::Ident(_)) | Some(Tok::Nat(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let e = match self.next() {
                Some(Tok::Nat(n)) => {
                    let digits = n.to_u64_digits();
                    match digits.as_slice() {
                        [] => 0u32,
                        // Generous but bounded: keeps hostile scripts from
                        // spinning in exponentiation.
                        [d] if *d <= 4096 => *d as u32,
                        _ => return Err(Error::Parse("exponent too large".into())),
                    }
                }
                _ => return Err(Error::Parse("expected integer exponent after `^`".into())),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.next() {
            Some(Tok::Ident(name)) => {
                let idx = self.ring.var_index(&name)?;
                Ok(Poly::var(self.ring, idx))
            }
            Some(Tok::Nat(n)) => {
                // Rational literal `a/b` binds at the lexical level.
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.next();
                    match self.next() {
                        Some(Tok::Nat(d)) => {
                            let num = self.ring.field().from_biguint(&n);
                            let den = self.ring.field().from_biguint(&d);
                            let inv = self
                                .ring
                                .field()
                                .inv(&den)
                                .map_err(|_| Error::Parse("zero denominator".into()))?;
                            Ok(Poly::constant(
                                self.ring,
                                self.ring.field().mul(&num, &inv),
                            ))
                        }
                        _ => Err(Error::Parse("expected integer after `/`".into())),
                    }
                } else {
                    Ok(Poly::constant(self.ring, self.ring.field().from_biguint(&n)))
                }
            }
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            other => Err(Error::Parse(alloc::format!(
                "unexpected token {:?}",
                other
            ))),
        }
    }
}

/// Parses a polynomial in the given ring from its text form.
pub fn parse_poly(ring: &Arc<Ring>, input: &str) -> Result<Poly> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(alloc::format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(poly)
}

/// Parses a scalar (integer or `a/b`) into the ring's field.
pub fn parse_scalar(ring: &Arc<Ring>, input: &str) -> Result<Scalar> {
    let p = parse_poly(ring, input)?;
    if p.is_zero() {
        return Ok(ring.field().zero());
    }
    if !p.is_constant() {
        return Err(Error::Parse("expected a constant".into()));
    }
    Ok(p.leading().expect("nonzero").1.clone())
}
