//! Dense coordinates for families of polynomial vectors, and the kernel and
//! span computations built on them.

use std::collections::HashMap;

use super::field::{Field, Scalar};
use super::linalg::{self, Echelon, Vector};
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::RingRef;

/// Shared index of `(slot, monomial)` pairs.
#[derive(Default, Debug)]
pub(crate) struct CoordIndex {
    keys: HashMap<(usize, Monomial), usize>,
    pub(crate) order: Vec<(usize, Monomial)>,
}

impl CoordIndex {
    pub(crate) fn register(&mut self, w: &[Polynomial]) {
        for (s, c) in w.iter().enumerate() {
            for (m, _) in c.terms() {
                let key = (s, m.clone());
                if !self.keys.contains_key(&key) {
                    self.keys.insert(key.clone(), self.order.len());
                    self.order.push(key);
                }
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.order.len()
    }

    pub(crate) fn dense(&self, w: &[Polynomial], field: Field) -> Vector {
        let mut v = vec![field.zero(); self.order.len()];
        for (s, c) in w.iter().enumerate() {
            for (m, x) in c.terms() {
                v[self.keys[&(s, m.clone())]] = x.clone();
            }
        }
        v
    }

    /// Inverse of [`CoordIndex::dense`].
    pub(crate) fn split(&self, v: &[Scalar], ring: &RingRef, slots: usize) -> Vec<Polynomial> {
        let mut terms: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); slots];
        for ((s, m), x) in self.order.iter().zip(v) {
            if !x.is_zero() {
                terms[*s].push((m.clone(), x.clone()));
            }
        }
        terms.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
    }
}

/// Elements `Σ α_j basis_j` whose images `Σ α_j images_j` vanish, in
/// reduced echelon form and sorted by leading monomial.
pub(crate) fn kernel_elements(ring: &RingRef, basis: &[Monomial], images: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let field = ring.field();
    let mut idx = CoordIndex::default();
    for w in images {
        idx.register(w);
    }
    let cols: Vec<Vector> = images.iter().map(|w| idx.dense(w, field)).collect();
    let mut sols: Vec<Vector> = if idx.len() == 0 {
        (0..basis.len()).map(|i| unit(field, basis.len(), i)).collect()
    } else {
        let matrix: Vec<Vector> = (0..idx.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        linalg::kernel(&matrix, basis.len(), field)
    };
    let rank = linalg::rref(&mut sols, field).len();
    sols.truncate(rank);
    sorted(ring, sols.iter().map(|v| Polynomial::from_terms(ring, basis.iter().cloned().zip(v.iter().cloned()))).collect())
}

fn unit(field: Field, n: usize, i: usize) -> Vector {
    (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()
}

pub(crate) fn sorted(ring: &RingRef, mut ps: Vec<Polynomial>) -> Vec<Polynomial> {
    let order = ring.order();
    ps.sort_by(|p, q| {
        for (a, b) in p.terms().iter().zip(q.terms()) {
            let c = order.cmp(&a.0, &b.0).then_with(|| a.1.cmp(&b.1));
            if c.is_ne() {
                return c;
            }
        }
        p.num_terms().cmp(&q.num_terms())
    });
    ps
}

/// Whether two families of reduced polynomials span the same space.
pub fn same_span(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let Some(first) = a.iter().chain(b).next() else {
        return true;
    };
    let field = first.ring().field();
    let mut idx = CoordIndex::default();
    for p in a.iter().chain(b) {
        idx.register(std::slice::from_ref(p));
    }
    let mut ea = Echelon::new(field, idx.len());
    for p in a {
        ea.insert(&idx.dense(std::slice::from_ref(p), field));
    }
    let mut eb = Echelon::new(field, idx.len());
    for p in b {
        eb.insert(&idx.dense(std::slice::from_ref(p), field));
    }
    ea.rank() == eb.rank() && b.iter().all(|p| ea.contains(&idx.dense(std::slice::from_ref(p), field)))
}

/// Whether every element of `b` lies in the span of `a`.
pub fn in_span(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let Some(first) = a.iter().chain(b).next() else {
        return true;
    };
    let field = first.ring().field();
    let mut idx = CoordIndex::default();
    for p in a.iter().chain(b) {
        idx.register(std::slice::from_ref(p));
    }
    let mut ea = Echelon::new(field, idx.len());
    for p in a {
        ea.insert(&idx.dense(std::slice::from_ref(p), field));
    }
    b.iter().all(|p| ea.contains(&idx.dense(std::slice::from_ref(p), field)))
}

/// Moves vectors whose slots live in different rings into a common ring of
/// fresh variables, keeping the slots apart.
pub(crate) fn rehome(vectors: &[Vec<Polynomial>]) -> crate::error::Result<Vec<Vec<Polynomial>>> {
    let Some(first) = vectors.iter().find_map(|v| v.first()) else {
        return Ok(vectors.to_vec());
    };
    let slots = vectors[0].len();
    let arity = (0..slots).map(|s| vectors[0][s].ring().arity()).max().unwrap_or(0);
    let names: Vec<String> = (0..arity).map(|i| format!("w{i}")).collect();
    let ring = super::ring::PolyRing::new(first.ring().field(), names, super::monomial::MonomialOrder::DegRevLex)?;
    Ok(vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|p| {
                    let map: Vec<usize> = (0..p.ring().arity()).collect();
                    p.embed(&ring, &map)
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, MonomialOrder, PolyRing};

    #[test]
    fn kernel_and_spans() {
        let r = PolyRing::new(Field::Rational, vec!["x".into(), "y".into()], MonomialOrder::DegRevLex).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let basis = vec![Monomial::one(2), Monomial::var(2, 0), Monomial::var(2, 1)];
        // images of 1, x, y under a ↦ (a(1,1) - a(0,0)) with y ↦ x
        let images = vec![vec![p("0")], vec![p("1")], vec![p("1")]];
        let k = kernel_elements(&r, &basis, &images);
        assert_eq!(k.len(), 2);
        assert!(same_span(&k, &[p("1"), p("x - y")]));
        assert!(!same_span(&k, &[p("1")]));
        assert!(in_span(&k, &[p("2*x - 2*y + 3")]));
        assert!(same_span(&[], &[]));
    }
}
