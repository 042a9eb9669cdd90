//! Recursive-descent parser for the polynomial input language:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := nat | nat '/' nat | name | '(' expr ')'
//! ```
//!
//! A leading unary minus is accepted at the start of an expression, which
//! includes right after '('.

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::polynomial::Polynomial;
use super::ring::RingRef;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Nat(text[start..i].parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            other => return Err(Error::Parse { pos: start, msg: format!("unexpected character `{other}`") }),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a RingRef,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
            self.guard(&acc)?;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
            self.guard(&acc)?;
        }
        Ok(acc)
    }

    fn guard(&self, p: &Polynomial) -> Result<()> {
        let g = self.ring.guards();
        if p.num_terms() > g.max_terms {
            return Err(Error::ResourceLimit { what: "term count", limit: g.max_terms as u64 });
        }
        Ok(())
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Nat(n)) => {
                self.pos += 1;
                let e: i64 = i64::try_from(&n).map_err(|_| Error::ResourceLimit {
                    what: "polynomial degree",
                    limit: self.ring.guards().max_degree as u64,
                })?;
                base.checked_pow(e)
            }
            Some(Tok::Minus) => {
                if let Some((_, Tok::Nat(n))) = self.toks.get(self.pos + 1) {
                    let e = i64::try_from(n).unwrap_or(i64::MAX);
                    return Err(Error::NegativeExponent(-e));
                }
                self.err("expected exponent")
            }
            _ => self.err("expected exponent"),
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Nat(n)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Nat(d)) => {
                            self.pos += 1;
                            let c = self.ring.field().from_fraction(&n, &d)?;
                            Ok(Polynomial::constant(self.ring, c))
                        }
                        _ => self.err("division is only allowed inside a rational literal"),
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n)))
                }
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UnknownIdentifier(name)),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Slash) => self.err("division is only allowed inside a rational literal"),
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &RingRef) -> Result<Polynomial> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), ring };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        if p.peek() == Some(&Tok::Slash) {
            return p.err("division is only allowed inside a rational literal");
        }
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::Field;
    use crate::poly::monomial::MonomialOrder;
    use crate::poly::ring::PolyRing;

    fn ring(f: Field, vars: &[&str]) -> RingRef {
        PolyRing::new(f, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn circle_has_three_terms() {
        let r = ring(Field::Rational, &["x", "y"]);
        assert_eq!(parse_poly("x^2 + y^2 - 1", &r).unwrap().num_terms(), 3);
    }

    #[test]
    fn zero_and_char_two() {
        let r = ring(Field::Rational, &["x"]);
        assert!(parse_poly("0", &r).unwrap().is_zero());
        let r2 = ring(Field::Prime(2), &["x"]);
        assert!(parse_poly("2*x", &r2).unwrap().is_zero());
    }

    #[test]
    fn unary_minus_placement() {
        let r = ring(Field::Rational, &["x"]);
        assert_eq!(parse_poly("-x + 1", &r).unwrap().to_string(), "-x + 1");
        assert_eq!(parse_poly("2*(-x)", &r).unwrap().to_string(), "-2*x");
        assert!(matches!(parse_poly("2*-x", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejections() {
        let r = ring(Field::Rational, &["x"]);
        assert_eq!(parse_poly("y", &r), Err(Error::UnknownIdentifier("y".into())));
        assert!(matches!(parse_poly("x/2", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("2x", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x^-1", &r), Err(Error::NegativeExponent(-1))));
        assert!(matches!(parse_poly("(x", &r), Err(Error::Parse { .. })));
        let r3 = ring(Field::Prime(3), &["x"]);
        assert!(matches!(parse_poly("1/3*x", &r3), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn rational_literals() {
        let r = ring(Field::Rational, &["x"]);
        let p = parse_poly("1/2*x^2 + 1/2*x", &r).unwrap();
        assert_eq!(p.to_string(), "1/2*x^2 + 1/2*x");
        let r5 = ring(Field::Prime(5), &["x"]);
        assert_eq!(parse_poly("x - 1/2", &r5).unwrap().to_string(), "x + 2");
    }
}
