use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::linalg::Vector;
use crate::poly::{
    evaluate, parse_poly, AlgebraElem, Field, Guards, GroebnerBasis, Monomial, MonomialOrder, PolyRing, Polynomial,
    RingRef, Scalar,
};

/// `F[vars]/(relations)`, with its reduced degrevlex Gröbner basis computed
/// on first use.
pub struct AlgebraPresentation {
    ring: RingRef,
    relations: Vec<Polynomial>,
    gb: OnceLock<std::result::Result<Arc<GroebnerBasis>, Error>>,
}

pub type Algebra = Arc<AlgebraPresentation>;

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraPresentation")
            .field("field", &self.ring.field())
            .field("vars", &self.ring.vars())
            .field("relations", &self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl AlgebraPresentation {
    pub fn new(ring: RingRef, relations: Vec<Polynomial>) -> Result<Algebra> {
        let ring = if ring.order() == MonomialOrder::DegRevLex { ring } else { ring.with_order(MonomialOrder::DegRevLex) };
        let mut rels = Vec::with_capacity(relations.len());
        for r in relations {
            if r.ring().vars() != ring.vars() || r.ring().field() != ring.field() {
                PolyRing::check_same(r.ring(), &ring)?;
            }
            rels.push(r.with_ring(&ring));
        }
        Ok(Arc::new(AlgebraPresentation { ring, relations: rels, gb: OnceLock::new() }))
    }

    /// Like [`new`](Self::new) with a basis known in advance (a cache hit,
    /// or a construction whose basis is known by design).
    pub fn with_basis(ring: RingRef, relations: Vec<Polynomial>, gb: GroebnerBasis) -> Result<Algebra> {
        let a = Self::new(ring, relations)?;
        let _ = a.gb.set(Ok(Arc::new(gb)));
        Ok(a)
    }

    pub fn parse(field: Field, vars: &[&str], relations: &[&str]) -> Result<Algebra> {
        Self::parse_with_guards(field, vars, relations, Guards::default())
    }

    pub fn parse_with_guards(field: Field, vars: &[&str], relations: &[&str], guards: Guards) -> Result<Algebra> {
        let ring = PolyRing::with_guards(field, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex, guards)?;
        let rels = relations.iter().map(|r| parse_poly(r, &ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, rels)
    }

    pub fn free(field: Field, vars: &[&str]) -> Result<Algebra> {
        Self::parse(field, vars, &[])
    }

    /// The ground field as an algebra with no generators.
    pub fn ground(field: Field) -> Algebra {
        Self::free(field, &[]).expect("no variables")
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn arity(&self) -> usize {
        self.ring.arity()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn gb(&self) -> Result<&Arc<GroebnerBasis>> {
        self.gb
            .get_or_init(|| GroebnerBasis::compute(&self.ring, &self.relations).map(Arc::new))
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn is_zero_algebra(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit_ideal())
    }

    pub fn parse_elem(&self, text: &str) -> Result<Polynomial> {
        parse_poly(text, &self.ring)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ring, i)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.ring)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.ring)
    }

    pub fn nf(&self, p: &Polynomial) -> Result<Polynomial> {
        self.gb()?.normal_form(p)
    }

    pub fn equal(&self, p: &Polynomial, q: &Polynomial) -> Result<bool> {
        Ok(self.nf(&p.sub(q))?.is_zero())
    }

    pub fn element(&self, p: &Polynomial) -> Result<ElementRep> {
        let gb = self.gb()?.clone();
        let poly = gb.normal_form(p)?;
        Ok(ElementRep { gb, poly })
    }

    pub fn standard_monomials(&self, max_deg: u32) -> Result<Vec<Monomial>> {
        self.gb()?.standard_monomials(max_deg)
    }

    /// Full monomial basis when the algebra is finite-dimensional.
    pub fn basis(&self) -> Result<Option<Vec<Monomial>>> {
        self.gb()?.standard_basis()
    }

    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.basis()?.map(|b| b.len()))
    }

    /// Coordinates of the normal form of `p` in `basis`; fails when the
    /// normal form leaves the span.
    pub fn coordinates(&self, p: &Polynomial, basis: &[Monomial]) -> Result<Vector> {
        let nf = self.nf(p)?;
        coordinates_of(&nf, basis)
    }
}

/// Coordinates of an already reduced polynomial in a monomial basis.
pub fn coordinates_of(p: &Polynomial, basis: &[Monomial]) -> Result<Vector> {
    let f = p.ring().field();
    let mut v = vec![f.zero(); basis.len()];
    for (m, c) in p.terms() {
        match basis.iter().position(|b| b == m) {
            Some(i) => v[i] = c.clone(),
            None => {
                return Err(Error::TruncationTooSmall(format!(
                    "monomial {} outside the chosen span",
                    crate::poly::polynomial::format_monomial(m, p.ring().vars())
                )))
            }
        }
    }
    Ok(v)
}

/// Linear combination of basis monomials.
pub fn from_coordinates(ring: &RingRef, basis: &[Monomial], v: &[Scalar]) -> Polynomial {
    Polynomial::from_terms(ring, basis.iter().cloned().zip(v.iter().cloned()))
}

/// An element stored as its own normal form.
#[derive(Clone, Debug)]
pub struct ElementRep {
    gb: Arc<GroebnerBasis>,
    poly: Polynomial,
}

impl PartialEq for ElementRep {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly
    }
}

impl ElementRep {
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn lift(&self, p: Polynomial) -> ElementRep {
        ElementRep { gb: self.gb.clone(), poly: self.gb.reduce(&p) }
    }
}

impl AlgebraElem for ElementRep {
    fn add(&self, o: &Self) -> Self {
        ElementRep { gb: self.gb.clone(), poly: self.poly.add(&o.poly) }
    }
    fn mul(&self, o: &Self) -> Self {
        ElementRep { gb: self.gb.clone(), poly: self.gb.reduce(&self.poly.mul(&o.poly)) }
    }
    fn scale(&self, c: &Scalar) -> Self {
        ElementRep { gb: self.gb.clone(), poly: self.poly.scale(c) }
    }
}

/// Substitutes images (polynomials of `target`) into `p`, reducing after
/// every product so intermediate degrees stay small.
pub fn substitute_reduced(p: &Polynomial, images: &[Polynomial], target: &AlgebraPresentation) -> Result<Polynomial> {
    let gb = target.gb()?.clone();
    let ims: Vec<ElementRep> = images.iter().map(|q| ElementRep { gb: gb.clone(), poly: gb.reduce(q) }).collect();
    let one = ElementRep { gb: gb.clone(), poly: gb.reduce(&target.one()) };
    let zero = ElementRep { gb: gb.clone(), poly: target.zero() };
    Ok(evaluate(p, &ims, &one, &zero).poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_standard_monomials() {
        let a = AlgebraPresentation::parse(Field::Rational, &["x"], &["x^3 - x"]).unwrap();
        let s = a.standard_monomials(5).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(a.dimension().unwrap(), Some(3));
        let free = AlgebraPresentation::free(Field::Rational, &["x"]).unwrap();
        assert_eq!(free.standard_monomials(2).unwrap().len(), 3);
        assert_eq!(free.dimension().unwrap(), None);
    }

    #[test]
    fn zero_algebra_is_flagged() {
        let a = AlgebraPresentation::parse(Field::Rational, &["x"], &["x", "x - 1"]).unwrap();
        assert!(a.is_zero_algebra().unwrap());
    }

    #[test]
    fn element_products_stay_reduced() {
        let a = AlgebraPresentation::parse(Field::Rational, &["x"], &["x^3 - x"]).unwrap();
        let e = a.element(&a.parse_elem("1/2*x^2 + 1/2*x").unwrap()).unwrap();
        assert_eq!(e.mul(&e), e);
    }
}
