//! Points of polynomial systems with coordinates in the ground field.
//!
//! Triangular back-substitution over a lex basis: a generator univariate
//! in an unassigned variable is solved exactly (rational root test over ℚ,
//! full search over small 𝔽_p); a variable without such a generator is
//! tried at 0, 1, −1 and the result is marked incomplete.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::field::{Field, Scalar};
use super::groebner::GroebnerBasis;
use super::monomial::MonomialOrder;
use super::polynomial::Polynomial;
use super::ring::RingRef;

const MAX_NODES: u64 = 200_000;
const MAX_DIVISOR_SEARCH: u64 = 10_000_000;
const MAX_PRIME_SCAN: u64 = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Solutions {
    /// Distinct points in discovery order.
    pub points: Vec<Vec<Scalar>>,
    /// Set when every point of the system over the ground field is listed.
    pub complete: bool,
    /// Set when the system has no point over the algebraic closure.
    pub inconsistent: bool,
}

struct Search {
    lex: RingRef,
    limit: usize,
    nodes: u64,
    out: Vec<Vec<Scalar>>,
    complete: bool,
}

/// Up to `limit` points of `system` (all of them when `limit` is `usize::MAX`).
pub fn field_solutions(system: &[Polynomial], ring: &RingRef, limit: usize) -> Result<Solutions> {
    let lex = ring.with_order(MonomialOrder::Lex);
    let polys: Vec<Polynomial> = system.iter().map(|p| p.with_ring(&lex)).collect();
    let top = GroebnerBasis::compute(&lex, &polys)?;
    if top.is_unit_ideal() {
        return Ok(Solutions { points: Vec::new(), complete: true, inconsistent: true });
    }
    let mut s = Search { lex: lex.clone(), limit, nodes: 0, out: Vec::new(), complete: true };
    let assigned = vec![None; ring.arity()];
    s.descend(top.polys().to_vec(), assigned)?;
    let complete = s.complete && s.out.len() < limit;
    Ok(Solutions { points: s.out, complete, inconsistent: false })
}

impl Search {
    fn descend(&mut self, polys: Vec<Polynomial>, assigned: Vec<Option<Scalar>>) -> Result<()> {
        if self.out.len() >= self.limit {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > MAX_NODES {
            return Err(Error::ResourceLimit { what: "solver branches", limit: MAX_NODES });
        }
        let gb = GroebnerBasis::compute(&self.lex, &polys)?;
        if gb.is_unit_ideal() {
            return Ok(());
        }
        let open: Vec<usize> = (0..assigned.len()).filter(|&i| assigned[i].is_none()).collect();
        if open.is_empty() {
            let pt: Vec<Scalar> = assigned.into_iter().map(|s| s.expect("assigned")).collect();
            if !self.out.contains(&pt) {
                self.out.push(pt);
            }
            return Ok(());
        }
        // prefer the lex-smallest variable with a univariate generator
        let uni = open.iter().rev().find_map(|&i| {
            gb.polys().iter().find(|p| p.support_vars() == [i]).map(|p| (i, p.clone()))
        });
        let (var, values) = match uni {
            Some((i, p)) => match roots(&p, i) {
                Some(r) => (i, r),
                None => {
                    self.complete = false;
                    (i, trial_values(self.lex.field()))
                }
            },
            None => {
                let i = *open.last().expect("nonempty");
                self.complete = false;
                (i, trial_values(self.lex.field()))
            }
        };
        for v in values {
            let mut next = assigned.clone();
            next[var] = Some(v);
            let images: Vec<Polynomial> = (0..next.len())
                .map(|k| match &next[k] {
                    Some(c) => Polynomial::constant(&self.lex, c.clone()),
                    None => Polynomial::var(&self.lex, k),
                })
                .collect();
            let sub: Vec<Polynomial> = gb.polys().iter().map(|p| p.substitute(&images, &self.lex)).collect();
            self.descend(sub, next)?;
            if self.out.len() >= self.limit {
                break;
            }
        }
        Ok(())
    }
}

fn trial_values(f: Field) -> Vec<Scalar> {
    let mut v = vec![f.zero(), f.one(), f.from_i64(-1)];
    v.dedup();
    v
}

/// Coefficients of a polynomial univariate in variable `i`, lowest first.
fn univariate_coeffs(p: &Polynomial, i: usize) -> Vec<Scalar> {
    let deg = p.degree_in(i) as usize;
    let mut c = vec![p.ring().field().zero(); deg + 1];
    for (m, s) in p.terms() {
        c[m.exp(i) as usize] = s.clone();
    }
    c
}

/// All roots in the ground field, or `None` when the search is out of reach.
pub fn roots(p: &Polynomial, i: usize) -> Option<Vec<Scalar>> {
    let c = univariate_coeffs(p, i);
    let field = p.ring().field();
    let mut found = match field {
        Field::Prime(q) => {
            if q > MAX_PRIME_SCAN {
                return None;
            }
            (0..q).map(|k| Scalar::Fp(k, q)).filter(|x| horner(&c, x).is_zero()).collect()
        }
        Field::Rational => rational_roots(&c)?,
    };
    found.sort();
    found.dedup();
    Some(found)
}

fn horner(c: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for a in c.iter().rev() {
        acc = acc.mul(x).add(a);
    }
    acc
}

fn rational_roots(c: &[Scalar]) -> Option<Vec<Scalar>> {
    let q: Vec<BigRational> = c.iter().map(|s| s.as_rational().expect("rational").clone()).collect();
    let den = q.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = q.iter().map(|r| (r * BigRational::from_integer(den.clone())).to_integer()).collect();
    let low = ints.iter().position(|a| !a.is_zero())?;
    let mut out = Vec::new();
    if low > 0 {
        out.push(Scalar::Q(BigRational::zero()));
    }
    let ints = &ints[low..];
    if ints.len() == 1 {
        return Some(out);
    }
    let a0 = divisors(&ints[0].abs())?;
    let an = divisors(&ints[ints.len() - 1].abs())?;
    let cs: Vec<Scalar> = c[low..].to_vec();
    for p in &a0 {
        for q in &an {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                let x = Scalar::Q(r);
                if horner(&cs, &x).is_zero() && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    Some(out)
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.to_u64()?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u64 = 1;
    while d.saturating_mul(d) <= n {
        if d > MAX_DIVISOR_SEARCH {
            return None;
        }
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};

    fn sys(f: Field, vars: &[&str], ps: &[&str]) -> (RingRef, Vec<Polynomial>) {
        let r = PolyRing::new(f, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex).unwrap();
        let p = ps.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        (r, p)
    }

    #[test]
    fn univariate_rational_roots() {
        let (r, p) = sys(Field::Rational, &["x"], &["6*x^3 - 5*x^2 - 2*x + 1"]);
        let s = field_solutions(&p, &r, usize::MAX).unwrap();
        assert!(s.complete);
        let mut got: Vec<String> = s.points.iter().map(|v| v[0].to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["-1/2", "1", "1/3"]);
    }

    #[test]
    fn irrational_roots_are_absent() {
        let (r, p) = sys(Field::Rational, &["x"], &["x^2 - 2"]);
        let s = field_solutions(&p, &r, usize::MAX).unwrap();
        assert!(s.points.is_empty() && s.complete && !s.inconsistent);
    }

    #[test]
    fn triangular_system() {
        let (r, p) = sys(Field::Rational, &["a", "b"], &["a^2 - a", "b^2 - b", "a*b"]);
        let s = field_solutions(&p, &r, usize::MAX).unwrap();
        assert_eq!(s.points.len(), 3);
        assert!(s.complete);
    }

    #[test]
    fn inconsistent_system() {
        let (r, p) = sys(Field::Rational, &["a"], &["a^2 - a", "a^2 - a + 1"]);
        let s = field_solutions(&p, &r, usize::MAX).unwrap();
        assert!(s.inconsistent && s.points.is_empty());
    }

    #[test]
    fn free_variables_are_trials() {
        let (r, p) = sys(Field::Rational, &["a", "b"], &["a + b - 1"]);
        let s = field_solutions(&p, &r, 1).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(!s.complete);
        let pt = &s.points[0];
        assert!(p[0].eval(pt).is_zero());
    }

    #[test]
    fn prime_field_roots() {
        let (r, p) = sys(Field::Prime(5), &["x"], &["x^2 + 1"]);
        let s = field_solutions(&p, &r, usize::MAX).unwrap();
        assert_eq!(s.points.len(), 2);
    }
}
