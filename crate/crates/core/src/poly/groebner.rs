use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::field::Scalar;
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;
use super::ring::{PolyRing, RingRef};

/// A reduced Gröbner basis: monic, auto-reduced, sorted by leading
/// monomial (ascending in the ring order).
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ring: RingRef,
    polys: Vec<Polynomial>,
}

fn check_guards(p: &Polynomial, ring: &RingRef) -> Result<()> {
    let g = ring.guards();
    if p.num_terms() > g.max_terms {
        return Err(Error::ResourceLimit { what: "term count", limit: g.max_terms as u64 });
    }
    if p.total_degree().unwrap_or(0) > g.max_degree {
        return Err(Error::ResourceLimit { what: "polynomial degree", limit: g.max_degree as u64 });
    }
    Ok(())
}

/// Full reduction of `p` by `basis` (any order of divisors is fine for a
/// Gröbner basis; the first divisor in slice order is used).
fn reduce(p: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
    let ring = p.ring.clone();
    let mut rest = p.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((lm, lc)) = rest.terms.first().cloned() {
        let div = basis.iter().find(|g| g.terms[0].0.divides(&lm));
        match div {
            Some(g) => {
                let (gm, gc) = &g.terms[0];
                let q = gm.quotient_of(&lm).expect("divides");
                let c = lc.div(gc);
                rest = rest.sub(&g.mul_term(&q, &c));
            }
            None => {
                rem.push((lm, lc));
                rest.terms.remove(0);
            }
        }
    }
    Polynomial { ring, terms: rem }
}

fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = &f.terms[0];
    let (gm, gc) = &g.terms[0];
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l).unwrap(), &fc.inv());
    let b = g.mul_term(&gm.quotient_of(&l).unwrap(), &gc.inv());
    a.sub(&b)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    ring: RingRef,
    store: Vec<Polynomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lm(&self, i: usize) -> &Monomial {
        &self.store[i].terms[0].0
    }

    /// Gebauer–Möller update with the new polynomial at index `h`.
    fn update(&mut self, h: usize) -> Result<()> {
        let lmh = self.lm(h).clone();
        let mut c: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, lmh.lcm(self.lm(g)))).collect();
        let mut d: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = c.pop() {
            let coprime = lmh.is_coprime(self.lm(g1));
            let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                d.push((g1, l1));
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|(g, _)| !lmh.is_coprime(self.lm(*g)))
            .map(|(g, lcm)| Pair { i: g, j: h, lcm })
            .collect();
        let store = &self.store;
        let lm = |i: usize| &store[i].terms[0].0;
        self.pairs.retain(|p| {
            !(lmh.divides(&p.lcm) && lm(p.i).lcm(&lmh) != p.lcm && lmh.lcm(lm(p.j)) != p.lcm)
        });
        self.pairs.extend(e);
        self.active.retain(|&g| !lmh.divides(&store[g].terms[0].0));
        self.active.push(h);
        if self.active.len() > self.ring.guards().max_basis {
            return Err(Error::ResourceLimit { what: "basis size", limit: self.ring.guards().max_basis as u64 });
        }
        Ok(())
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ring.order();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = ord.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j)));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn add(&mut self, p: Polynomial) -> Result<()> {
        check_guards(&p, &self.ring)?;
        self.store.push(p.monic());
        self.update(self.store.len() - 1)
    }

    fn active_refs(&self) -> Vec<&Polynomial> {
        self.active.iter().map(|&i| &self.store[i]).collect()
    }
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
    /// Generators from a ring with the same variables but another order are
    /// re-sorted into `ring`.
    pub fn compute(ring: &RingRef, gens: &[Polynomial]) -> Result<GroebnerBasis> {
        let mut input = Vec::with_capacity(gens.len());
        for g in gens {
            if g.ring.field() != ring.field() {
                return Err(Error::FieldMismatch(format!("{} vs {}", g.ring.field(), ring.field())));
            }
            if g.ring.vars() != ring.vars() {
                return Err(Error::RingMismatch(format!(
                    "[{}] vs [{}]",
                    g.ring.vars().join(","),
                    ring.vars().join(",")
                )));
            }
            if !g.is_zero() {
                input.push(g.with_ring(ring));
            }
        }
        // deterministic feed order: ascending leading monomials
        let ord = ring.order();
        input.sort_by(|a, b| ord.cmp(&a.terms[0].0, &b.terms[0].0));
        let mut b = Builder { ring: ring.clone(), store: Vec::new(), active: Vec::new(), pairs: Vec::new() };
        for p in input {
            let h = reduce(&p, &b.active_refs());
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                return Ok(Self::unit(ring));
            }
            b.add(h)?;
        }
        while let Some(pair) = b.next_pair() {
            let s = spoly(&b.store[pair.i], &b.store[pair.j]);
            check_guards(&s, ring)?;
            let h = reduce(&s, &b.active_refs());
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                return Ok(Self::unit(ring));
            }
            b.add(h)?;
        }
        Ok(Self::interreduce(ring, b.active.iter().map(|&i| b.store[i].clone()).collect()))
    }

    fn unit(ring: &RingRef) -> GroebnerBasis {
        GroebnerBasis { ring: ring.clone(), polys: vec![Polynomial::one(ring)] }
    }

    fn interreduce(ring: &RingRef, mut polys: Vec<Polynomial>) -> GroebnerBasis {
        let ord = ring.order();
        polys.sort_by(|a, b| ord.cmp(&a.terms[0].0, &b.terms[0].0));
        // minimal basis: drop any whose leading monomial is divisible by another's
        let mut minimal: Vec<Polynomial> = Vec::new();
        for (k, p) in polys.iter().enumerate() {
            let lm = &p.terms[0].0;
            let redundant = polys.iter().enumerate().any(|(l, q)| {
                l != k && q.terms[0].0.divides(lm) && (q.terms[0].0 != *lm || l < k)
            });
            if !redundant {
                minimal.push(p.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, q)| q).collect();
            let head = Polynomial { ring: ring.clone(), terms: vec![minimal[k].terms[0].clone()] };
            let tail = Polynomial { ring: ring.clone(), terms: minimal[k].terms[1..].to_vec() };
            out.push(head.add(&reduce(&tail, &others)).monic());
        }
        GroebnerBasis { ring: ring.clone(), polys: out }
    }

    /// Wraps polynomials already known to form a reduced basis.
    pub fn from_reduced_unchecked(ring: &RingRef, polys: Vec<Polynomial>) -> GroebnerBasis {
        GroebnerBasis { ring: ring.clone(), polys }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant() && !p.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.polys.iter().map(|p| &p.terms[0].0).collect()
    }

    /// Normal form of a polynomial already living in this basis' ring.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        debug_assert!(PolyRing::same(&self.ring, &p.ring));
        let refs: Vec<&Polynomial> = self.polys.iter().collect();
        reduce(p, &refs)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        PolyRing::check_same(&self.ring, &p.ring)?;
        Ok(self.reduce(p))
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn ideal_membership(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.polys.iter().any(|p| p.terms[0].0.divides(m))
    }

    /// Standard monomials of degree ≤ `max_deg`, ascending by degree then
    /// degrevlex.
    pub fn standard_monomials(&self, max_deg: u32) -> Result<Vec<Monomial>> {
        let n = self.ring.arity();
        let limit = self.ring.guards().max_basis;
        let mut out = Vec::new();
        if self.is_unit_ideal() {
            return Ok(out);
        }
        // DFS over exponent vectors; standard monomials form an order ideal
        // so pruning at the first non-standard monomial is safe.
        let mut stack = vec![(Monomial::one(n), 0usize)];
        while let Some((m, first)) = stack.pop() {
            out.push(m.clone());
            if out.len() > limit {
                return Err(Error::ResourceLimit { what: "basis size", limit: limit as u64 });
            }
            if m.degree() == max_deg {
                continue;
            }
            for i in first..n {
                let next = m.mul(&Monomial::var(n, i));
                if self.is_standard(&next) {
                    stack.push((next, i));
                }
            }
        }
        out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(a, b));
        Ok(out)
    }

    /// True when every variable has a pure power among the leading monomials.
    pub fn is_finite_dimensional(&self) -> bool {
        if self.is_unit_ideal() {
            return true;
        }
        (0..self.ring.arity()).all(|i| self.pure_power(i).is_some())
    }

    fn pure_power(&self, i: usize) -> Option<u32> {
        self.polys
            .iter()
            .map(|p| &p.terms[0].0)
            .filter(|m| m.supported_in(i..i + 1) && m.exp(i) > 0)
            .map(|m| m.exp(i))
            .min()
    }

    /// Bound on the degree of any standard monomial, for finite-dimensional
    /// quotients.
    pub fn max_standard_degree(&self) -> Option<u32> {
        if !self.is_finite_dimensional() {
            return None;
        }
        Some((0..self.ring.arity()).map(|i| self.pure_power(i).unwrap_or(1) - 1).sum())
    }

    /// All standard monomials of a finite-dimensional quotient.
    pub fn standard_basis(&self) -> Result<Option<Vec<Monomial>>> {
        match self.max_standard_degree() {
            Some(d) => self.standard_monomials(d).map(Some),
            None => Ok(None),
        }
    }
}

/// Reduced basis of the ideal generated by `gens` under `order`.
pub fn groebner(ring: &RingRef, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let r = if ring.order() == order { ring.clone() } else { ring.with_order(order) };
    GroebnerBasis::compute(&r, gens)
}

/// Generators of `I ∩ F[keep]`, returned in the subring on the kept
/// variables (declared order preserved, degrevlex).
pub fn elimination_ideal(ring: &RingRef, gens: &[Polynomial], keep: &[usize]) -> Result<(RingRef, Vec<Polynomial>)> {
    let n = ring.arity();
    let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let perm: Vec<usize> = elim.iter().chain(kept.iter()).copied().collect();
    let names: Vec<String> = perm.iter().map(|&i| ring.vars()[i].clone()).collect();
    let block = PolyRing::with_guards(ring.field(), names, MonomialOrder::Block(elim.len()), ring.guards())?;
    // position of old variable i inside the block ring
    let mut to_block = vec![0; n];
    for (pos, &i) in perm.iter().enumerate() {
        to_block[i] = pos;
    }
    let moved: Vec<Polynomial> = gens.iter().map(|g| g.embed(&block, &to_block)).collect();
    let gb = GroebnerBasis::compute(&block, &moved)?;
    let sub_names: Vec<String> = kept.iter().map(|&i| ring.vars()[i].clone()).collect();
    let sub = PolyRing::with_guards(ring.field(), sub_names, MonomialOrder::DegRevLex, ring.guards())?;
    let k = elim.len();
    let out = gb
        .polys()
        .iter()
        .filter(|p| p.terms.iter().all(|(m, _)| m.supported_in(k..block.arity())))
        .map(|p| {
            let terms = p.terms.iter().map(|(m, c)| (m.slice(k..block.arity()), c.clone()));
            Polynomial::from_terms(&sub, terms)
        })
        .collect();
    Ok((sub, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::Field;
    use crate::poly::parse::parse_poly;

    fn ring(f: Field, vars: &[&str]) -> RingRef {
        PolyRing::new(f, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex).unwrap()
    }

    fn gb(r: &RingRef, gens: &[&str]) -> GroebnerBasis {
        let ps: Vec<Polynomial> = gens.iter().map(|g| parse_poly(g, r).unwrap()).collect();
        GroebnerBasis::compute(r, &ps).unwrap()
    }

    #[test]
    fn collapses_to_linear() {
        let r = ring(Field::Rational, &["x"]);
        let g = gb(&r, &["x^2 - 1", "x - 1"]);
        assert_eq!(g.polys().len(), 1);
        assert_eq!(g.polys()[0].to_string(), "x - 1");
    }

    #[test]
    fn zero_ideal() {
        let r = ring(Field::Rational, &["x"]);
        assert!(gb(&r, &[]).is_empty());
        assert!(gb(&r, &["0"]).is_empty());
    }

    #[test]
    fn two_points_quotient_dimension() {
        let r = ring(Field::Rational, &["x", "y"]);
        let g = gb(&r, &["x*y", "x + y - 1"]);
        assert_eq!(g.standard_basis().unwrap().unwrap().len(), 2);
    }

    #[test]
    fn normal_forms() {
        let r = ring(Field::Rational, &["x"]);
        let g = gb(&r, &["x^2 - x"]);
        assert_eq!(g.reduce(&parse_poly("x^2", &r).unwrap()).to_string(), "x");
        let g3 = gb(&r, &["x^3 - x"]);
        assert_eq!(g3.reduce(&parse_poly("x^3", &r).unwrap()).to_string(), "x");
        assert!(g3.contains(&parse_poly("x^5 - x", &r).unwrap()));
    }

    #[test]
    fn memberships() {
        let r = ring(Field::Rational, &["z0", "z1"]);
        let g = gb(&r, &["z0^2 - z0", "z1*(2*z0 - 1)", "z1^2"]);
        assert!(g.contains(&parse_poly("z1", &r).unwrap()));
        let rx = ring(Field::Rational, &["x"]);
        assert!(gb(&rx, &["x", "x - 1"]).is_unit_ideal());
        assert!(!gb(&rx, &["x^2"]).contains(&parse_poly("x", &rx).unwrap()));
    }

    #[test]
    fn elimination() {
        let r = ring(Field::Rational, &["t", "x", "y"]);
        let gens = [parse_poly("t - x^2", &r).unwrap(), parse_poly("t - y", &r).unwrap()];
        let (sub, out) = elimination_ideal(&r, &gens, &[1, 2]).unwrap();
        assert_eq!(sub.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].to_string(), "x^2 - y");
        let r2 = ring(Field::Rational, &["x", "y"]);
        let (_, out) = elimination_ideal(&r2, &[parse_poly("x", &r2).unwrap()], &[1]).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn guard_trips() {
        let r = PolyRing::with_guards(
            Field::Rational,
            vec!["x".into(), "y".into()],
            MonomialOrder::DegRevLex,
            crate::poly::ring::Guards { max_basis: 1, ..Default::default() },
        )
        .unwrap();
        let gens = [parse_poly("x^2 - y", &r).unwrap(), parse_poly("y^2 - x", &r).unwrap()];
        let err = GroebnerBasis::compute(&r, &gens).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }
}
