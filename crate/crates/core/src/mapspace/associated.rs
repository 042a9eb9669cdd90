use std::collections::HashMap;
use serde::Serialize;

use crate::algebra::points::point_coordinates_with;
use crate::algebra::{compose, enumerate_hom_with, tensor_product, Algebra, AlgebraMorphism, TensorProduct};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::poly::polynomial::format_monomial;
use crate::poly::{AlgebraElem, Monomial, PolyRing, Polynomial, Scalar};

use super::presentation::MapSpace;
use super::tensor::{eval_tensor, TensorCtx, TensorElem};

/// The morphism `M_θ → C` associated with `φ: A → B ⊗ C`, given by the
/// tensor images of the generators of `A`.
pub fn associated_from_elems(ms: &MapSpace, c: &Algebra, phis: &[TensorElem]) -> Result<AlgebraMorphism> {
    if phis.len() != ms.a.arity() {
        return Err(Error::invalid("one image per generator of the source is required"));
    }
    let mut images = vec![c.zero(); ms.arity()];
    for (i, phi) in phis.iter().enumerate() {
        for (v, q) in phi.terms_sorted() {
            match ms.zvar(i, &v) {
                Some(k) => images[k] = q,
                None => {
                    return Err(Error::TruncationTooSmall(format!(
                        "image of {} uses {} outside its truncation",
                        ms.a.vars()[i],
                        format_monomial(&v, ms.b.vars())
                    )))
                }
            }
        }
    }
    let psi = AlgebraMorphism::check(&ms.alg, c, images)?;
    // (id ⊗ ψ)Υθ(a) = φ(a) on generators
    let ctx = phis.first().map(|p| p.ctx().clone()).map(Ok).unwrap_or_else(|| TensorCtx::new(&ms.b, c))?;
    for (i, phi) in phis.iter().enumerate() {
        let mut back = TensorElem::zero(&ctx);
        for v in &ms.theta.deltas()[i] {
            let k = ms.zvar(i, v).expect("own variable");
            back = back.add(&TensorElem::basic(&ctx, v.clone(), &psi.images()[k]));
        }
        if &back != phi {
            return Err(Error::property("universal factorization", format!("generator {}", ms.a.vars()[i])));
        }
    }
    Ok(psi)
}

/// `φ: A → B ⊗ C` given as a morphism into the presentation `tp = B ⊗ C`.
pub fn associated_morphism(ms: &MapSpace, phi: &AlgebraMorphism, tp: &TensorProduct) -> Result<AlgebraMorphism> {
    if !PolyRing::same(tp.left.ring(), ms.b.ring()) {
        return Err(Error::RingMismatch("left tensor factor must be the target of the map space".into()));
    }
    if !PolyRing::same(phi.source().ring(), ms.a.ring()) || !PolyRing::same(phi.target().ring(), tp.alg.ring()) {
        return Err(Error::RingMismatch("morphism must go from A into B ⊗ C".into()));
    }
    let ctx = TensorCtx::new(&ms.b, &tp.right)?;
    let phis: Vec<TensorElem> = phi.images().iter().map(|p| TensorElem::from_tensor_poly(&ctx, tp, p)).collect();
    associated_from_elems(ms, &tp.right, &phis)
}

/// Point of `M_θ` associated with a morphism `A → B` (the case `C = F`).
pub fn associated_point(ms: &MapSpace, f: &AlgebraMorphism) -> Result<Vec<Scalar>> {
    let field = ms.a.field();
    let mut pt = vec![field.zero(); ms.arity()];
    for (i, im) in f.images().iter().enumerate() {
        for (v, c) in im.terms() {
            let k = ms.zvar(i, v).ok_or_else(|| {
                Error::TruncationTooSmall(format!("image of {} leaves the truncation", ms.a.vars()[i]))
            })?;
            pt[k] = c.clone();
        }
    }
    Ok(pt)
}

/// Morphism `A → B` induced by a point of `M_θ`: `a ↦ Σ_v pt(z_{a,v}) v`.
pub fn morphism_of_point(ms: &MapSpace, pt: &[Scalar]) -> Result<AlgebraMorphism> {
    let images = (0..ms.a.arity())
        .map(|i| {
            Polynomial::from_terms(
                ms.b.ring(),
                ms.theta.deltas()[i].iter().map(|v| (v.clone(), pt[ms.zvar(i, v).expect("own variable")].clone())),
            )
        })
        .collect();
    AlgebraMorphism::check(&ms.a, &ms.b, images)
}

#[derive(Debug, Clone, Serialize)]
pub struct PointsCrosscheck {
    pub homs: usize,
    pub points: usize,
    /// (generator images, point coordinates) pairs.
    pub matching: Vec<(Vec<String>, Vec<String>)>,
}

/// Verifies `Hom(A, B)_{≤d} ↔ Pnt(M_θd)` over a prime field.
pub fn points_crosscheck(ms: &MapSpace, d: u32, exec: Exec) -> Result<PointsCrosscheck> {
    let homs = enumerate_hom_with(&ms.a, &ms.b, d, exec)?;
    let points = point_coordinates_with(&ms.alg, exec)?;
    let index: HashMap<Vec<Scalar>, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut hit = vec![false; points.len()];
    let mut matching = Vec::with_capacity(homs.len());
    for h in &homs {
        let pt = associated_point(ms, h)?;
        let k = *index
            .get(&pt)
            .ok_or_else(|| Error::property("points bijection", format!("morphism {:?} has no point", h.image_strings())))?;
        if hit[k] {
            return Err(Error::property("points bijection", "two morphisms share a point"));
        }
        hit[k] = true;
        if !morphism_of_point(ms, &pt)?.equals(h) {
            return Err(Error::property("points bijection", "point does not recover its morphism"));
        }
        matching.push((h.image_strings(), pt.iter().map(|s| s.to_string()).collect()));
    }
    if homs.len() != points.len() {
        return Err(Error::property("points bijection", format!("{} morphisms vs {} points", homs.len(), points.len())));
    }
    Ok(PointsCrosscheck { homs: homs.len(), points: points.len(), matching })
}

/// `M(f, g): M_θ(A, B) → M_θ'(A', B')` for `f: A → A'` and `g: B' → B`.
pub fn functor_action(f: &AlgebraMorphism, g: &AlgebraMorphism, ms: &MapSpace, ms2: &MapSpace) -> Result<AlgebraMorphism> {
    let same = |x: &Algebra, y: &Algebra| PolyRing::same(x.ring(), y.ring());
    if !same(f.source(), &ms.a) || !same(f.target(), &ms2.a) || !same(g.source(), &ms2.b) || !same(g.target(), &ms.b) {
        return Err(Error::RingMismatch("functor action needs f: A → A' and g: B' → B".into()));
    }
    let ctx2 = ms2.ctx()?;
    let ups = ms2.upsilon()?;
    let ctx = TensorCtx::new(&ms.b, &ms2.alg)?;
    let cache: std::cell::RefCell<HashMap<Monomial, Polynomial>> = Default::default();
    let mut phis = Vec::with_capacity(ms.a.arity());
    for im in f.images() {
        let t = eval_tensor(im, &ups, &ctx2);
        let mapped = t.map_left(&ctx, |v| {
            if let Some(p) = cache.borrow().get(v) {
                return Ok(p.clone());
            }
            let p = g.apply(&Polynomial::monomial(g.source().ring(), v.clone(), g.source().field().one()))?;
            cache.borrow_mut().insert(v.clone(), p.clone());
            Ok(p)
        })?;
        phis.push(mapped);
    }
    associated_from_elems(ms, &ms2.alg, &phis)
}

/// `Φ: M(A, C) → M(B, C) ⊗ M(A, B)` with `(id ⊗ Φ)Υ_AC = (Υ_BC ⊗ id)Υ_AB`.
pub fn comultiplication(ac: &MapSpace, bc: &MapSpace, ab: &MapSpace) -> Result<(TensorProduct, AlgebraMorphism)> {
    let same = |x: &Algebra, y: &Algebra| PolyRing::same(x.ring(), y.ring());
    if !same(&ac.a, &ab.a) || !same(&ab.b, &bc.a) || !same(&ac.b, &bc.b) {
        return Err(Error::RingMismatch("comultiplication needs M(A,C), M(B,C), M(A,B)".into()));
    }
    let tp = tensor_product(&bc.alg, &ab.alg)?;
    let ctx = TensorCtx::new(&ac.b, &tp.alg)?;
    let ring = tp.alg.ring().clone();
    let nbc = bc.arity();
    let left_map: Vec<usize> = (0..nbc).collect();
    let ups_bc = bc.upsilon()?;
    let ctx_bc = ups_bc.first().map(|u| u.ctx().clone()).map(Ok).unwrap_or_else(|| bc.ctx())?;
    let mut phis = Vec::with_capacity(ac.a.arity());
    for i in 0..ab.a.arity() {
        let mut acc = TensorElem::zero(&ctx);
        for v in &ab.theta.deltas()[i] {
            let vpoly = Polynomial::monomial(ab.b.ring(), v.clone(), ab.b.field().one());
            let up_v = eval_tensor(&vpoly, &ups_bc, &ctx_bc);
            let lifted = up_v.map_coeffs(&ctx, |q| q.embed(&ring, &left_map));
            let z = Polynomial::var(&ring, nbc + ab.zvar(i, v).expect("own variable"));
            acc = acc.add(&lifted.mul(&TensorElem::from_c(&ctx, &z)));
        }
        phis.push(acc);
    }
    let phi = associated_from_elems(ac, &tp.alg, &phis)?;
    Ok((tp, phi))
}

/// `f ⊗ g` between tensor presentations.
pub fn tensor_morphism(f: &AlgebraMorphism, g: &AlgebraMorphism, src: &TensorProduct, dst: &TensorProduct) -> Result<AlgebraMorphism> {
    let ring = dst.alg.ring();
    let nl = dst.left_arity();
    let lm: Vec<usize> = (0..nl).collect();
    let rm: Vec<usize> = (nl..ring.arity()).collect();
    let mut images: Vec<Polynomial> = f.images().iter().map(|p| p.embed(ring, &lm)).collect();
    images.extend(g.images().iter().map(|p| p.embed(ring, &rm)));
    AlgebraMorphism::check(&src.alg, &dst.alg, images)
}

/// Six map spaces over `A, B, C, D` needed for coassociativity.
pub struct CoassocInputs<'a> {
    pub ad: &'a MapSpace,
    pub bd: &'a MapSpace,
    pub cd: &'a MapSpace,
    pub ab: &'a MapSpace,
    pub ac: &'a MapSpace,
    pub bc: &'a MapSpace,
}

/// Checks `(Φ_BCD ⊗ id)Φ_ABD = (id ⊗ Φ_ABC)Φ_ACD` on generators of `M(A, D)`.
pub fn coassociativity_check(m: &CoassocInputs) -> Result<()> {
    let (t_abd, phi_abd) = comultiplication(m.ad, m.bd, m.ab)?;
    let (t_bcd, phi_bcd) = comultiplication(m.bd, m.cd, m.bc)?;
    let (t_acd, phi_acd) = comultiplication(m.ad, m.cd, m.ac)?;
    let (t_abc, phi_abc) = comultiplication(m.ac, m.bc, m.ab)?;
    let left_dst = tensor_product(&t_bcd.alg, &m.ab.alg)?;
    let lhs = compose(&tensor_morphism(&phi_bcd, &AlgebraMorphism::identity(&m.ab.alg), &t_abd, &left_dst)?, &phi_abd)?;
    let right_dst = tensor_product(&m.cd.alg, &t_abc.alg)?;
    let rhs = compose(&tensor_morphism(&AlgebraMorphism::identity(&m.cd.alg), &phi_abc, &t_acd, &right_dst)?, &phi_acd)?;
    // both targets list the variables of M(C,D), M(B,C), M(A,B) in that order
    let target = &left_dst.alg;
    for (k, (l, r)) in lhs.images().iter().zip(rhs.images()).enumerate() {
        if !target.equal(l, &r.with_ring(target.ring()))? {
            return Err(Error::property("coassociativity", format!("generator {}", m.ad.names()[k])));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;
    use crate::mapspace::presentation::uniform_mapspace;
    use crate::poly::Field;

    fn alg(f: Field, vars: &[&str], rels: &[&str]) -> Algebra {
        AlgebraPresentation::parse(f, vars, rels).unwrap()
    }

    #[test]
    fn point_of_an_automorphism() {
        let f3 = Field::Prime(3);
        let a = alg(f3, &["t"], &["t^2 - 1"]);
        let b = alg(f3, &["x"], &["x^2 - 1"]);
        let ms = uniform_mapspace(&a, &b, 1).unwrap();
        let phi = AlgebraMorphism::parse(&a, &b, &["x"]).unwrap();
        let pt = associated_point(&ms, &phi).unwrap();
        assert_eq!(pt, vec![Scalar::Fp(0, 3), Scalar::Fp(1, 3)]);
        for j in ms.j() {
            assert!(j.eval(&pt).is_zero());
        }
    }

    #[test]
    fn upsilon_is_associated_with_identity() {
        let a = alg(Field::Rational, &["t"], &["t^2 - 1"]);
        let b = alg(Field::Rational, &["x"], &["x^2 - 1"]);
        let ms = uniform_mapspace(&a, &b, 1).unwrap();
        let ups = ms.upsilon().unwrap();
        let psi = associated_from_elems(&ms, &ms.alg, &ups).unwrap();
        assert!(psi.equals(&AlgebraMorphism::identity(&ms.alg)));
    }

    #[test]
    fn crosschecks() {
        let f3 = Field::Prime(3);
        let ms = uniform_mapspace(&alg(f3, &["t"], &["t^2 - 1"]), &alg(f3, &["x"], &["x^2 - 1"]), 1).unwrap();
        let r = points_crosscheck(&ms, 1, Exec::Sequential).unwrap();
        assert_eq!((r.homs, r.points), (4, 4));
        let f2 = Field::Prime(2);
        let ms = uniform_mapspace(&alg(f2, &["t"], &["t^2 - t"]), &AlgebraPresentation::ground(f2), 0).unwrap();
        assert_eq!(points_crosscheck(&ms, 0, Exec::Parallel).unwrap().points, 2);
        let ms = uniform_mapspace(&alg(f2, &["t"], &[]), &alg(f2, &["x"], &[]), 1).unwrap();
        assert_eq!(points_crosscheck(&ms, 1, Exec::Parallel).unwrap().homs, 4);
    }

    #[test]
    fn functor_action_identity_and_evaluation() {
        let a = alg(Field::Rational, &["t"], &["t^2 - 1"]);
        let b = alg(Field::Rational, &["x"], &[]);
        let ms = uniform_mapspace(&a, &b, 2).unwrap();
        let id = functor_action(&AlgebraMorphism::identity(&a), &AlgebraMorphism::identity(&b), &ms, &ms).unwrap();
        assert!(id.equals(&AlgebraMorphism::identity(&ms.alg)));
        // g: F[x] → F, x ↦ 0 gives M(A, F) → M(A, F[x]) sending z to z_{t,1}
        let f = AlgebraPresentation::ground(Field::Rational);
        let ms0 = uniform_mapspace(&a, &f, 0).unwrap();
        let g = AlgebraMorphism::parse(&b, &f, &["0"]).unwrap();
        let act = functor_action(&AlgebraMorphism::identity(&a), &g, &ms0, &ms).unwrap();
        assert_eq!(act.image_strings(), vec!["z__t__e0"]);
    }

    #[test]
    fn functor_composition_law() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &["t^2 - t"]);
        let b = alg(q, &["x"], &[]);
        let b1 = alg(q, &["y"], &[]);
        let b2 = alg(q, &["w"], &[]);
        let g1 = AlgebraMorphism::parse(&b1, &b, &["x^2"]).unwrap();
        let g2 = AlgebraMorphism::parse(&b2, &b1, &["1 - y"]).unwrap();
        let id = AlgebraMorphism::identity(&a);
        let m = uniform_mapspace(&a, &b, 2).unwrap();
        let m1 = uniform_mapspace(&a, &b1, 1).unwrap();
        let m2 = uniform_mapspace(&a, &b2, 1).unwrap();
        let first = functor_action(&id, &g1, &m, &m1).unwrap();
        let second = functor_action(&id, &g2, &m1, &m2).unwrap();
        let both = functor_action(&id, &compose(&g1, &g2).unwrap(), &m, &m2).unwrap();
        assert!(compose(&second, &first).unwrap().equals(&both));
    }

    #[test]
    fn comultiplication_of_idempotents() {
        let q = Field::Rational;
        let e = alg(q, &["t"], &["t^2 - t"]);
        let m0 = uniform_mapspace(&e, &e, 0).unwrap();
        let (tp, phi) = comultiplication(&m0, &m0, &m0).unwrap();
        assert_eq!(tp.alg.arity(), 2);
        assert_eq!(phi.image_strings(), vec![tp.alg.vars()[1].clone()]);
        let m1 = uniform_mapspace(&e, &e, 1).unwrap();
        let (tp, phi) = comultiplication(&m1, &m1, &m1).unwrap();
        let v = tp.alg.vars();
        // z_1 ↦ 1⊗z_1 + z_1⊗z_t, z_t ↦ z_t⊗z_t
        let want0 = tp.alg.parse_elem(&format!("{} + {}*{}", v[2], v[0], v[3])).unwrap();
        let want1 = tp.alg.parse_elem(&format!("{}*{}", v[1], v[3])).unwrap();
        assert!(tp.alg.equal(&phi.images()[0], &want0).unwrap());
        assert!(tp.alg.equal(&phi.images()[1], &want1).unwrap());
        let ins = CoassocInputs { ad: &m1, bd: &m1, cd: &m1, ab: &m1, ac: &m1, bc: &m1 };
        coassociativity_check(&ins).unwrap();
    }

    #[test]
    fn comultiplication_through_the_ground_field() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &["t^2 - 1"]);
        let f = AlgebraPresentation::ground(q);
        let c = alg(q, &["x"], &["x^2 - 1"]);
        let ac = uniform_mapspace(&a, &c, 1).unwrap();
        let fc = uniform_mapspace(&f, &c, 1).unwrap();
        assert_eq!(fc.arity(), 0);
        let af = uniform_mapspace(&a, &f, 0).unwrap();
        let (_, phi) = comultiplication(&ac, &fc, &af).unwrap();
        assert_eq!(phi.image_strings(), vec!["z__t__e_2", "0"]);
    }

    #[test]
    fn coassociativity_mixed() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &["t^2 - 1"]);
        let b = alg(q, &["u"], &["u^2"]);
        let c = alg(q, &["x"], &["x^3 - x"]);
        let d = alg(q, &["y"], &["y^2 - y"]);
        let full = |s: &Algebra, t: &Algebra| {
            crate::mapspace::mapspace_presentation(s, t, &crate::mapspace::Truncation::full(s, t).unwrap()).unwrap()
        };
        let (ad, bd, cd, ab, ac, bc) = (full(&a, &d), full(&b, &d), full(&c, &d), full(&a, &b), full(&a, &c), full(&b, &c));
        coassociativity_check(&CoassocInputs { ad: &ad, bd: &bd, cd: &cd, ab: &ab, ac: &ac, bc: &bc }).unwrap();
    }

    #[test]
    fn comultiplication_composes_points() {
        let f3 = Field::Prime(3);
        let a = alg(f3, &["t"], &["t^2 - 1"]);
        let b = alg(f3, &["x"], &["x^2 - 1"]);
        let c = alg(f3, &["y"], &["y^2 - y"]);
        let ac = uniform_mapspace(&a, &c, 1).unwrap();
        let bc = uniform_mapspace(&b, &c, 1).unwrap();
        let ab = uniform_mapspace(&a, &b, 1).unwrap();
        let (tp, phi) = comultiplication(&ac, &bc, &ab).unwrap();
        for f in enumerate_hom_with(&a, &b, 1, Exec::Sequential).unwrap() {
            for g in enumerate_hom_with(&b, &c, 1, Exec::Sequential).unwrap() {
                let mut pt = associated_point(&bc, &g).unwrap();
                pt.extend(associated_point(&ab, &f).unwrap());
                let via: Vec<Scalar> = phi.images().iter().map(|p| p.eval(&pt)).collect();
                assert_eq!(via, associated_point(&ac, &compose(&g, &f).unwrap()).unwrap());
                let _ = &tp;
            }
        }
    }

    #[test]
    fn truncation_too_small_is_reported() {
        let a = alg(Field::Rational, &["t"], &[]);
        let b = alg(Field::Rational, &["x"], &[]);
        let ms = uniform_mapspace(&a, &b, 1).unwrap();
        let ms2 = uniform_mapspace(&a, &b, 1).unwrap();
        let g = AlgebraMorphism::parse(&b, &b, &["x^2"]).unwrap();
        let err = functor_action(&AlgebraMorphism::identity(&a), &g, &ms, &ms2).unwrap_err();
        assert!(matches!(err, Error::TruncationTooSmall(_)));
    }
}
