use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

use super::field::Scalar;
use super::monomial::{Monomial, MonomialOrder};
use super::ring::{PolyRing, RingRef};

/// Sparse polynomial. Terms are kept sorted by the ring's monomial order,
/// largest first, with no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    pub(crate) ring: RingRef,
    pub(crate) terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        PolyRing::same(&self.ring, &o.ring) && self.terms == o.terms
    }
}

impl Eq for Polynomial {}

/// Anything polynomials can be evaluated into.
pub trait AlgebraElem: Clone {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
}

impl AlgebraElem for Scalar {
    fn add(&self, o: &Self) -> Self {
        Scalar::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar::mul(self, o)
    }
    fn scale(&self, c: &Scalar) -> Self {
        Scalar::mul(self, c)
    }
}

impl AlgebraElem for Polynomial {
    fn add(&self, o: &Self) -> Self {
        Polynomial::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Polynomial::mul(self, o)
    }
    fn scale(&self, c: &Scalar) -> Self {
        Polynomial::scale(self, c)
    }
}

/// Evaluates `p` at `images` (one per variable) inside any algebra. Powers
/// of each image are cached.
pub fn evaluate<T: AlgebraElem>(p: &Polynomial, images: &[T], one: &T, zero: &T) -> T {
    assert_eq!(images.len(), p.ring.arity(), "one image per variable");
    let mut powers: Vec<Vec<T>> = images.iter().map(|im| vec![one.clone(), im.clone()]).collect();
    let mut acc = zero.clone();
    for (m, c) in &p.terms {
        let mut t = one.clone().scale(c);
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = &mut powers[i];
            while pw.len() <= e as usize {
                let next = pw[pw.len() - 1].mul(&pw[1]);
                pw.push(next);
            }
            t = t.mul(&pw[e as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.arity()), c)
    }

    pub fn from_i64(ring: &RingRef, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.arity(), i), ring.field().one())
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.arity(), ring.arity());
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), ring.arity());
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = ring.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_term(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.field().zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        let ord = self.ring.order();
        match self.terms.binary_search_by(|(t, _)| ord.cmp(m, t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.field().zero(),
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        debug_assert!(PolyRing::same(&self.ring, &o.ring));
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match ord.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.1.add(&b.1);
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// `c * m * self`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        debug_assert!(PolyRing::same(&self.ring, &o.ring));
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_term(m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let m = a.mul(b);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ring, acc)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Power with a signed exponent, rejecting negative values.
    pub fn checked_pow(&self, e: i64) -> Result<Polynomial> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        let e32 = u32::try_from(e).map_err(|_| Error::ResourceLimit { what: "exponent", limit: u32::MAX as u64 })?;
        if let Some(d) = self.total_degree() {
            let max = self.ring.guards().max_degree as u64;
            if d as u64 * e as u64 > max && !self.is_constant() {
                return Err(Error::ResourceLimit { what: "polynomial degree", limit: max });
            }
        }
        Ok(self.pow(e32))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.ring.field();
        let terms = self.terms.iter().filter(|(m, _)| m.exp(i) > 0).map(|(m, c)| {
            let mut e = m.exps().to_vec();
            let k = e[i];
            e[i] -= 1;
            (Monomial::from_exps(e), c.mul(&f.from_i64(k as i64)))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Evaluates at a point of the ground field.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let f = self.ring.field();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes polynomial images (all in one target ring) for the variables.
    pub fn substitute(&self, images: &[Polynomial], target: &RingRef) -> Polynomial {
        evaluate(self, images, &Polynomial::one(target), &Polynomial::zero(target))
    }

    /// Moves into `target`, sending variable `i` to variable `var_map[i]`.
    pub fn embed(&self, target: &RingRef, var_map: &[usize]) -> Polynomial {
        let n = target.arity();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exps().iter().enumerate() {
                e[var_map[i]] += x;
            }
            (Monomial::from_exps(e), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Same variables, possibly different order: just re-sorts.
    pub fn with_ring(&self, target: &RingRef) -> Polynomial {
        debug_assert_eq!(target.arity(), self.ring.arity());
        let mut terms = self.terms.clone();
        let ord = target.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial { ring: target.clone(), terms }
    }

    /// Variables actually occurring.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.arity()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, u)| **u).map(|(i, _)| i).collect()
    }

    /// Text with canonical degrevlex-descending term order.
    pub fn to_canonical_string(&self) -> String {
        let mut terms: Vec<&(Monomial, Scalar)> = self.terms.iter().collect();
        if self.ring.order() != MonomialOrder::DegRevLex {
            terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
        }
        format_terms(&terms, self.ring.vars())
    }
}

pub(crate) fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn format_terms(terms: &[&(Monomial, Scalar)], vars: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { c.neg() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&format_monomial(m, vars));
        } else {
            out.push_str(&format!("{}*{}", mag, format_monomial(m, vars)));
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

/// Arithmetic entry point with ring checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(op: ArithOp, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    PolyRing::check_same(&a.ring, &b.ring)?;
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => {
            let out = a.mul(b);
            let g = a.ring.guards();
            if out.num_terms() > g.max_terms {
                return Err(Error::ResourceLimit { what: "term count", limit: g.max_terms as u64 });
            }
            out
        }
    })
}

pub fn poly_scale(a: &Polynomial, c: &Scalar) -> Result<Polynomial> {
    if c.field() != a.ring.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", c.field(), a.ring.field())));
    }
    Ok(a.scale(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::Field;

    fn ring(f: Field, vars: &[&str]) -> RingRef {
        PolyRing::new(f, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(Field::Rational, &["x"]);
        let x = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let p = x.add(&one).mul(&x.sub(&one));
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn frobenius_over_f2() {
        let r = ring(Field::Prime(2), &["x", "y"]);
        let s = Polynomial::var(&r, 0).add(&Polynomial::var(&r, 1));
        assert_eq!(s.pow(2).to_string(), "x^2 + y^2");
    }

    #[test]
    fn scale_by_zero() {
        let r = ring(Field::Rational, &["x"]);
        assert!(Polynomial::var(&r, 0).scale(&Field::Rational.zero()).is_zero());
    }

    #[test]
    fn negative_exponent_rejected() {
        let r = ring(Field::Rational, &["x"]);
        assert_eq!(Polynomial::var(&r, 0).checked_pow(-1), Err(Error::NegativeExponent(-1)));
    }

    #[test]
    fn mismatched_rings_rejected() {
        let r = ring(Field::Rational, &["x"]);
        let s = ring(Field::Rational, &["y"]);
        let err = poly_arith(ArithOp::Add, &Polynomial::var(&r, 0), &Polynomial::var(&s, 0)).unwrap_err();
        assert!(matches!(err, Error::RingMismatch(_)));
        let p = ring(Field::Prime(5), &["x"]);
        let err = poly_arith(ArithOp::Mul, &Polynomial::var(&r, 0), &Polynomial::var(&p, 0)).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch(_)));
    }

    #[test]
    fn derivative_and_eval() {
        let r = ring(Field::Rational, &["x", "y"]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = x.pow(2).mul(&y);
        assert_eq!(p.derivative(0).to_string(), "2*x*y");
        let q = Field::Rational;
        assert_eq!(p.eval(&[q.from_i64(3), q.from_i64(2)]), q.from_i64(18));
    }
}
