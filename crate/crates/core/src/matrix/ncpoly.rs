//! Polynomials in noncommuting letters with a central variable `x`.
//!
//! A letter may be marked inverse; adjacent `c·c⁻¹` and `c⁻¹·c` cancel.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{Field, Scalar};

const Q: Field = Field::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub name: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(name: impl Into<String>) -> Letter {
        Letter { name: name.into(), inverse: false }
    }

    pub fn inv(&self) -> Letter {
        Letter { name: self.name.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

type Word = Vec<Letter>;

fn concat(u: &[Letter], v: &[Letter]) -> Word {
    let mut out: Word = u.to_vec();
    for l in v {
        match out.last() {
            Some(last) if last.name == l.name && last.inverse != l.inverse => {
                out.pop();
            }
            _ => out.push(l.clone()),
        }
    }
    out
}

/// Rational combination of terms `word · x^k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<(Word, u32), Scalar>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly::default()
    }

    pub fn constant(c: i64) -> NcPoly {
        NcPoly::term(Vec::new(), 0, Q.from_i64(c))
    }

    pub fn one() -> NcPoly {
        NcPoly::constant(1)
    }

    pub fn x() -> NcPoly {
        NcPoly::term(Vec::new(), 1, Q.one())
    }

    pub fn letter(l: Letter) -> NcPoly {
        NcPoly::term(vec![l], 0, Q.one())
    }

    pub fn sym(name: &str) -> NcPoly {
        NcPoly::letter(Letter::new(name))
    }

    fn term(w: Word, k: u32, c: Scalar) -> NcPoly {
        let mut p = NcPoly::zero();
        p.push(w, k, c);
        p
    }

    fn push(&mut self, w: Word, k: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (w, k);
        let v = match self.terms.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    /// `Σ c_k x^k` with integer coefficients, lowest first.
    pub fn in_x(coeffs: &[i64]) -> NcPoly {
        let mut p = NcPoly::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.push(Vec::new(), k as u32, Q.from_i64(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for ((w, k), c) in &o.terms {
            out.push(w.clone(), *k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for ((u, i), a) in &self.terms {
            for ((v, j), b) in &o.terms {
                out.push(concat(u, v), i + j, a.mul(b));
            }
        }
        out
    }

    /// Substitutes a rational value for `x`.
    pub fn eval_x(&self, c: i64) -> NcPoly {
        let c = Q.from_i64(c);
        let mut out = NcPoly::zero();
        for ((w, k), a) in &self.terms {
            out.push(w.clone(), 0, a.mul(&c.pow(*k as u64)));
        }
        out
    }

    /// Coefficient of `x^k`, as a polynomial in the letters.
    pub fn x_coefficient(&self, k: u32) -> NcPoly {
        let mut out = NcPoly::zero();
        for ((w, j), a) in &self.terms {
            if *j == k {
                out.push(w.clone(), 0, a.clone());
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Letter], u32, &Scalar)> {
        self.terms.iter().map(|((w, k), c)| (w.as_slice(), *k, c))
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|(_, k)| *k).max().unwrap_or(0)
    }

    /// Longest word appearing.
    pub fn word_length(&self) -> usize {
        self.terms.keys().map(|(w, _)| w.len()).max().unwrap_or(0)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, ((w, k), c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = w.iter().map(|l| l.to_string()).collect();
            match k {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{k}")),
            }
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_do_not_commute() {
        let (a, b) = (NcPoly::sym("a"), NcPoly::sym("b"));
        assert_ne!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b).sub(&b.mul(&a)).to_string(), "a*b - b*a");
        assert_eq!(a.mul(&NcPoly::x()), NcPoly::x().mul(&a));
    }

    #[test]
    fn inverses_cancel() {
        let c = Letter::new("c");
        let (cp, ci) = (NcPoly::letter(c.clone()), NcPoly::letter(c.inv()));
        let a = NcPoly::sym("a");
        let conj = cp.mul(&a).mul(&ci);
        assert_eq!(conj.to_string(), "c*a*c^-1");
        assert_eq!(conj.mul(&conj), cp.mul(&a).mul(&a).mul(&ci));
        assert_eq!(ci.mul(&cp), NcPoly::one());
    }

    #[test]
    fn x_arithmetic() {
        let r = NcPoly::in_x(&[1, 0, -1]);
        assert_eq!(r.to_string(), "1 - x^2");
        assert_eq!(r.eval_x(1), NcPoly::zero());
        assert_eq!(r.x_degree(), 2);
        assert_eq!(r.x_coefficient(2), NcPoly::constant(-1));
    }
}
