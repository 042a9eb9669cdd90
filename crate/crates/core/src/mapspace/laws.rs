//! Canonical isomorphisms between map spaces, checked at a truncation level.

use serde::Serialize;

use crate::algebra::{
    compose, direct_sum, point_coordinates_with, tensor_product, Algebra, AlgebraMorphism, AlgebraPresentation,
};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::poly::{AlgebraElem, Field, Polynomial};

use super::associated::{associated_from_elems, functor_action};
use super::presentation::{mapspace_presentation, uniform_mapspace, Truncation};
use super::tensor::{TensorCtx, TensorElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    Exponential,
    Tensor,
    Directsum,
}

impl std::str::FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Law> {
        match s {
            "exp" | "exponential" => Ok(Law::Exponential),
            "tensor" => Ok(Law::Tensor),
            "dsum" | "directsum" => Ok(Law::Directsum),
            other => Err(Error::invalid(format!("unknown law `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LawSide {
    pub vars: Vec<String>,
    pub relations: Vec<String>,
}

impl LawSide {
    fn of(a: &AlgebraPresentation) -> LawSide {
        LawSide { vars: a.vars().to_vec(), relations: a.relations().iter().map(|r| r.to_string()).collect() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub law: Law,
    pub left: LawSide,
    pub right: LawSide,
    pub forward: Vec<String>,
    pub backward: Vec<String>,
    pub mutually_inverse: bool,
    /// `(left, right)` point counts when the field is finite.
    pub point_counts: Option<(usize, usize)>,
}

fn report(law: Law, fwd: &AlgebraMorphism, bwd: &AlgebraMorphism, counts: Option<(usize, usize)>) -> Result<LawReport> {
    let there = compose(bwd, fwd)?;
    if !there.equals(&AlgebraMorphism::identity(fwd.source())) {
        return Err(Error::property(format!("{law:?} law"), "backward ∘ forward is not the identity"));
    }
    let back = compose(fwd, bwd)?;
    if !back.equals(&AlgebraMorphism::identity(fwd.target())) {
        return Err(Error::property(format!("{law:?} law"), "forward ∘ backward is not the identity"));
    }
    Ok(LawReport {
        law,
        left: LawSide::of(fwd.source()),
        right: LawSide::of(fwd.target()),
        forward: fwd.image_strings(),
        backward: bwd.image_strings(),
        mutually_inverse: true,
        point_counts: counts,
    })
}

fn counts(l: &Algebra, r: &Algebra) -> Result<Option<(usize, usize)>> {
    if let Field::Prime(_) = l.field() {
        let a = point_coordinates_with(l, Exec::best())?.len();
        let b = point_coordinates_with(r, Exec::best())?.len();
        if a != b {
            return Err(Error::property("law point counts", format!("{a} vs {b}")));
        }
        return Ok(Some((a, b)));
    }
    Ok(None)
}

/// `M(A, B ⊗ B') ≅ M(M(A, B), B')` with `θ ⊗ θ'` on the left and `θ'|θ`
/// on the right (degrees `d` in `B`, `d'` in `B'`).
pub fn exponential_law(a: &Algebra, b: &Algebra, b2: &Algebra, d: u32, d2: u32) -> Result<LawReport> {
    let inner = uniform_mapspace(a, b, d)?;
    let right = uniform_mapspace(&inner.alg, b2, d2)?;
    let tp = tensor_product(b, b2)?;
    let s1 = b.standard_monomials(d)?;
    let s2 = b2.standard_monomials(d2)?;
    let prod: Vec<_> = s1.iter().flat_map(|v| s2.iter().map(move |w| v.concat(w))).collect();
    let left = mapspace_presentation(a, &tp.alg, &Truncation::per_generator(vec![prod; a.arity()]))?;

    // L → R from a ↦ Σ v⊗v' ⊗ w_{z_{a,v}, v'}
    let ctx = TensorCtx::new(&tp.alg, &right.alg)?;
    let phis = (0..a.arity())
        .map(|i| {
            let mut acc = TensorElem::zero(&ctx);
            for v in &s1 {
                let z = inner.zvar(i, v).expect("own variable");
                for w in &s2 {
                    let k = right.zvar(z, w).expect("own variable");
                    acc = acc.add(&TensorElem::basic(&ctx, v.concat(w), &right.alg.var(k)));
                }
            }
            acc
        })
        .collect::<Vec<_>>();
    let fwd = associated_from_elems(&left, &right.alg, &phis)?;

    // R → L from z_{a,v} ↦ Σ v' ⊗ z^L_{a, v⊗v'}
    let ctx2 = TensorCtx::new(b2, &left.alg)?;
    let psis = inner
        .zvars
        .iter()
        .map(|(i, v)| {
            let mut acc = TensorElem::zero(&ctx2);
            for w in &s2 {
                let k = left.zvar(*i, &v.concat(w)).expect("own variable");
                acc = acc.add(&TensorElem::basic(&ctx2, w.clone(), &left.alg.var(k)));
            }
            acc
        })
        .collect::<Vec<_>>();
    let bwd = associated_from_elems(&right, &left.alg, &psis)?;
    let c = counts(&left.alg, &right.alg)?;
    report(Law::Exponential, &fwd, &bwd, c)
}

/// `M(A ⊗ A', B) ≅ M(A, B) ⊗ M(A', B)` at uniform degree `d`.
pub fn tensor_law(a: &Algebra, a2: &Algebra, b: &Algebra, d: u32) -> Result<LawReport> {
    let ta = tensor_product(a, a2)?;
    let left = uniform_mapspace(&ta.alg, b, d)?;
    let m1 = uniform_mapspace(a, b, d)?;
    let m2 = uniform_mapspace(a2, b, d)?;
    let right = tensor_product(&m1.alg, &m2.alg)?;

    let ctx = TensorCtx::new(b, &right.alg)?;
    let ring = right.alg.ring().clone();
    let lm: Vec<usize> = (0..m1.arity()).collect();
    let rm: Vec<usize> = (m1.arity()..ring.arity()).collect();
    let mut phis: Vec<TensorElem> = m1.upsilon()?.iter().map(|u| u.map_coeffs(&ctx, |q| q.embed(&ring, &lm))).collect();
    phis.extend(m2.upsilon()?.iter().map(|u| u.map_coeffs(&ctx, |q| q.embed(&ring, &rm))));
    let fwd = associated_from_elems(&left, &right.alg, &phis)?;

    let id = AlgebraMorphism::identity(b);
    let g1 = functor_action(&ta.inj1, &id, &m1, &left)?;
    let g2 = functor_action(&ta.inj2, &id, &m2, &left)?;
    let images: Vec<Polynomial> = g1.images().iter().chain(g2.images()).cloned().collect();
    let bwd = AlgebraMorphism::check(&right.alg, &left.alg, images)?;
    let c = counts(&left.alg, &right.alg)?;
    report(Law::Tensor, &fwd, &bwd, c)
}

/// `M(A, B ⊕ B') ≅ M(A, B) ⊗ M(A, B')`, with full truncations; both `B`
/// and `B'` must be finite-dimensional.
pub fn directsum_law(a: &Algebra, b: &Algebra, b2: &Algebra) -> Result<LawReport> {
    let ds = direct_sum(b, b2)?;
    let left = mapspace_presentation(a, &ds.alg, &Truncation::full(a, &ds.alg)?)?;
    let m1 = mapspace_presentation(a, b, &Truncation::full(a, b)?)?;
    let m2 = mapspace_presentation(a, b2, &Truncation::full(a, b2)?)?;
    let right = tensor_product(&m1.alg, &m2.alg)?;

    let ring = ds.alg.ring().clone();
    let nb = b.arity();
    let e = ds.alg.var(ds.e);
    let not_e = ds.alg.one().sub(&e);
    let lmap: Vec<usize> = (0..nb).collect();
    let rmap: Vec<usize> = (nb..nb + b2.arity()).collect();
    let ctx = TensorCtx::new(&ds.alg, &right.alg)?;
    let phis = (0..a.arity())
        .map(|i| {
            let mut acc = TensorElem::zero(&ctx);
            for (ms, map, idem, off) in [(&m1, &lmap, &e, 0), (&m2, &rmap, &not_e, m1.arity())] {
                for v in &ms.theta.deltas()[i] {
                    let vb = Polynomial::monomial(ms.b.ring(), v.clone(), ms.b.field().one()).embed(&ring, map).mul(idem);
                    let z = right.alg.var(off + ms.zvar(i, v).expect("own variable"));
                    acc = acc.add(&TensorElem::from_b(&ctx, &vb).mul(&TensorElem::from_c(&ctx, &z)));
                }
            }
            acc
        })
        .collect::<Vec<_>>();
    let fwd = associated_from_elems(&left, &right.alg, &phis)?;

    let id = AlgebraMorphism::identity(a);
    let g1 = functor_action(&id, &ds.p1, &m1, &left)?;
    let g2 = functor_action(&id, &ds.p2, &m2, &left)?;
    let images: Vec<Polynomial> = g1.images().iter().chain(g2.images()).cloned().collect();
    let bwd = AlgebraMorphism::check(&right.alg, &left.alg, images)?;
    let c = counts(&left.alg, &right.alg)?;
    report(Law::Directsum, &fwd, &bwd, c)
}

/// Dispatches on the law: exponential takes `[A, B, B']` and `[d, d']`,
/// tensor `[A, A', B]` and `[d]`, direct sum `[A, B, B']`.
pub fn verify_natural_isomorphism(law: Law, algebras: &[Algebra], degrees: &[u32]) -> Result<LawReport> {
    let [x, y, z] = algebras else {
        return Err(Error::invalid("three algebras are required"));
    };
    match law {
        Law::Exponential => {
            let d = degrees.first().copied().unwrap_or(1);
            exponential_law(x, y, z, d, degrees.get(1).copied().unwrap_or(d))
        }
        Law::Tensor => tensor_law(x, y, z, degrees.first().copied().unwrap_or(1)),
        Law::Directsum => directsum_law(x, y, z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(f: Field, vars: &[&str], rels: &[&str]) -> Algebra {
        AlgebraPresentation::parse(f, vars, rels).unwrap()
    }

    #[test]
    fn exponential_dual_numbers() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &["t^2"]);
        let b = alg(q, &["eps"], &["eps^2"]);
        let r = exponential_law(&a, &b, &b, 1, 1).unwrap();
        assert!(r.mutually_inverse);
        assert_eq!(r.left.vars.len(), 4);
        assert_eq!(r.right.vars.len(), 4);
    }

    #[test]
    fn exponential_over_finite_field_counts() {
        let f3 = Field::Prime(3);
        let a = alg(f3, &["t"], &["t^2 - 1"]);
        let b = alg(f3, &["x"], &["x^2 - x"]);
        let r = exponential_law(&a, &b, &b, 1, 1).unwrap();
        assert_eq!(r.point_counts, Some((16, 16)));
    }

    #[test]
    fn tensor_idempotents() {
        let f2 = Field::Prime(2);
        let a = alg(f2, &["t"], &["t^2 - t"]);
        let r = tensor_law(&a, &a, &AlgebraPresentation::ground(f2), 0).unwrap();
        assert_eq!(r.right.relations.len(), 2);
        assert_eq!(r.left.relations.len(), 2);
        assert_eq!(r.point_counts, Some((4, 4)));
    }

    #[test]
    fn directsum_square_roots() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &["t^2 - 1"]);
        let f = AlgebraPresentation::ground(q);
        assert!(directsum_law(&a, &f, &f).unwrap().mutually_inverse);
        let f3 = Field::Prime(3);
        let a3 = alg(f3, &["t"], &["t^2 - 1"]);
        let g = AlgebraPresentation::ground(f3);
        assert_eq!(directsum_law(&a3, &g, &g).unwrap().point_counts, Some((4, 4)));
    }

    #[test]
    fn directsum_nontrivial_summands() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &["t^2 - t"]);
        let b = alg(q, &["x"], &["x^2"]);
        let b2 = alg(q, &["y"], &["y^2 - 1"]);
        directsum_law(&a, &b, &b2).unwrap();
    }

    #[test]
    fn directsum_needs_finite_targets() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &[]);
        let b = alg(q, &["x"], &[]);
        assert!(directsum_law(&a, &b, &b).is_err());
    }

    #[test]
    fn law_names() {
        assert_eq!("exp".parse::<Law>().unwrap(), Law::Exponential);
        assert!("sum".parse::<Law>().is_err());
    }
}
