//! Parsing of the textual element syntax `3/2*x^2*y*D*E^2 - E + 1`.
//!
//! Products may be written in any order and are normalized in A, so
//! `D*y` parses to `y*D + F`. Parentheses and integer powers are accepted.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::ore::{Letter, OreElement};
use crate::poly::CommPoly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Gen(Letter),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            'x' => out.push(Tok::Gen(Letter::X)),
            'y' => out.push(Tok::Gen(Letter::Y)),
            'D' => out.push(Tok::Gen(Letter::D)),
            'E' => out.push(Tok::Gen(Letter::E)),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(lit.parse().expect("digits")));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}` at {i}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    arr: &'a Arc<Arrangement>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at token {}", self.pos)))
    }

    fn expr(&mut self) -> Result<OreElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<OreElement> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(if neg { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<OreElement> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<OreElement> {
        match self.next() {
            Some(Tok::Num(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            Ok(OreElement::scalar(self.arr, Rational::from_bigints(n, d)))
                        }
                        _ => self.err("expected nonzero denominator"),
                    }
                } else {
                    Ok(OreElement::scalar(self.arr, Rational::from(n)))
                }
            }
            Some(Tok::Gen(l)) => Ok(OreElement::letter(self.arr, l)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => self.err("expected `)`"),
                }
            }
            _ => self.err("expected a number, generator or `(`"),
        }
    }
}

/// Parse an element of A.
pub fn parse_element(arr: &Arc<Arrangement>, s: &str) -> Result<OreElement> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, arr };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse an element of S.
pub fn parse_poly(arr: &Arc<Arrangement>, s: &str) -> Result<CommPoly> {
    parse_element(arr, s)?.to_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::Mono;

    #[test]
    fn round_trip_and_normalization() {
        let a = Arrangement::example(3).unwrap();
        let u = parse_element(&a, "3/2*x^2*y*D*E^2 - E + 7").unwrap();
        assert_eq!(parse_element(&a, &u.to_string()).unwrap(), u);
        let dy = parse_element(&a, "D*y").unwrap();
        let expect = &OreElement::mono(&a, Mono::new(0, 1, 1, 0), Rational::from(1)) + &OreElement::from_poly(&a, a.f());
        assert_eq!(dy, expect);
        assert!(parse_element(&a, "x +").is_err());
        assert!(parse_element(&a, "z").is_err());
        assert!(parse_element(&a, "1/0").is_err());
    }
}
