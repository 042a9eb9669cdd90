use crate::error::{Error, Result};
use crate::poly::{fresh_name, GroebnerBasis, MonomialOrder, PolyRing, Polynomial};

use super::morphism::AlgebraMorphism;
use super::presentation::{Algebra, AlgebraPresentation};

/// `A ⊗ B` with variables renamed `u_1`, `v_2` and the canonical inclusions.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub alg: Algebra,
    pub left: Algebra,
    pub right: Algebra,
    pub inj1: AlgebraMorphism,
    pub inj2: AlgebraMorphism,
}

impl TensorProduct {
    pub fn left_arity(&self) -> usize {
        self.left.arity()
    }

    /// Index of the right factor's `i`-th variable in the tensor ring.
    pub fn right_var(&self, i: usize) -> usize {
        self.left.arity() + i
    }
}

pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<TensorProduct> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    let mut vars: Vec<String> = a.vars().iter().map(|v| format!("{v}_1")).collect();
    vars.extend(b.vars().iter().map(|v| format!("{v}_2")));
    let ring = PolyRing::with_guards(a.field(), vars, MonomialOrder::DegRevLex, a.ring().guards())?;
    let (na, nb) = (a.arity(), b.arity());
    let left_map: Vec<usize> = (0..na).collect();
    let right_map: Vec<usize> = (na..na + nb).collect();
    let mut rels: Vec<Polynomial> = a.relations().iter().map(|r| r.embed(&ring, &left_map)).collect();
    rels.extend(b.relations().iter().map(|r| r.embed(&ring, &right_map)));
    // Bases in disjoint variables stay reduced Gröbner bases of the sum.
    let (ga, gb) = (a.gb()?, b.gb()?);
    let alg = if ga.is_unit_ideal() || gb.is_unit_ideal() {
        AlgebraPresentation::new(ring.clone(), rels)?
    } else {
        let mut polys: Vec<Polynomial> = ga.polys().iter().map(|p| p.embed(&ring, &left_map)).collect();
        polys.extend(gb.polys().iter().map(|p| p.embed(&ring, &right_map)));
        polys.sort_by(|p, q| MonomialOrder::DegRevLex.cmp(p.leading_monomial().unwrap(), q.leading_monomial().unwrap()));
        AlgebraPresentation::with_basis(ring.clone(), rels, GroebnerBasis::from_reduced_unchecked(&ring, polys))?
    };
    let inj1 = AlgebraMorphism::trusted(a, &alg, (0..na).map(|i| alg.var(i)).collect())?;
    let inj2 = AlgebraMorphism::trusted(b, &alg, (0..nb).map(|i| alg.var(na + i)).collect())?;
    Ok(TensorProduct { alg, left: a.clone(), right: b.clone(), inj1, inj2 })
}

/// `A ⊕ B` presented with an idempotent `e` marking the first summand.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub alg: Algebra,
    pub left: Algebra,
    pub right: Algebra,
    /// Index of the idempotent variable.
    pub e: usize,
    pub p1: AlgebraMorphism,
    pub p2: AlgebraMorphism,
}

pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<DirectSum> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    let mut vars: Vec<String> = a.vars().iter().map(|v| format!("{v}_1")).collect();
    vars.extend(b.vars().iter().map(|v| format!("{v}_2")));
    let e_name = fresh_name("e", &vars);
    vars.push(e_name);
    let ring = PolyRing::with_guards(a.field(), vars, MonomialOrder::DegRevLex, a.ring().guards())?;
    let (na, nb) = (a.arity(), b.arity());
    let ei = na + nb;
    let e = Polynomial::var(&ring, ei);
    let one = Polynomial::one(&ring);
    let not_e = one.sub(&e);
    let mut rels = vec![e.mul(&e).sub(&e)];
    for i in 0..na {
        let u = Polynomial::var(&ring, i);
        rels.push(u.sub(&u.mul(&e)));
    }
    for j in 0..nb {
        rels.push(Polynomial::var(&ring, na + j).mul(&e));
    }
    let left_map: Vec<usize> = (0..na).collect();
    let right_map: Vec<usize> = (na..na + nb).collect();
    for r in a.relations() {
        let r = r.embed(&ring, &left_map);
        let c = Polynomial::constant(&ring, r.constant_term());
        rels.push(r.sub(&c).add(&c.mul(&e)));
    }
    for r in b.relations() {
        let r = r.embed(&ring, &right_map);
        let c = Polynomial::constant(&ring, r.constant_term());
        rels.push(r.sub(&c).add(&c.mul(&not_e)));
    }
    let alg = AlgebraPresentation::new(ring, rels)?;
    let mut im1: Vec<Polynomial> = (0..na).map(|i| a.var(i)).collect();
    im1.extend((0..nb).map(|_| a.zero()));
    im1.push(a.one());
    let mut im2: Vec<Polynomial> = (0..na).map(|_| b.zero()).collect();
    im2.extend((0..nb).map(|j| b.var(j)));
    im2.push(b.zero());
    let p1 = AlgebraMorphism::check(&alg, a, im1)?;
    let p2 = AlgebraMorphism::check(&alg, b, im2)?;
    Ok(DirectSum { alg, left: a.clone(), right: b.clone(), e: ei, p1, p2 })
}

/// `A[x]` with the embedding, both evaluations and the flip `x ↦ 1 − x`.
#[derive(Clone, Debug)]
pub struct PolyExtension {
    pub alg: Algebra,
    pub base: Algebra,
    /// Index of the new variable (always the last one).
    pub x: usize,
    pub embed: AlgebraMorphism,
    pub p0: AlgebraMorphism,
    pub p1: AlgebraMorphism,
    pub flip: AlgebraMorphism,
}

pub fn polynomial_extension(a: &Algebra) -> Result<PolyExtension> {
    let mut vars = a.vars().to_vec();
    let x_name = fresh_name("x", &vars);
    vars.push(x_name);
    let ring = PolyRing::with_guards(a.field(), vars, MonomialOrder::DegRevLex, a.ring().guards())?;
    let n = a.arity();
    let map: Vec<usize> = (0..n).collect();
    let rels: Vec<Polynomial> = a.relations().iter().map(|r| r.embed(&ring, &map)).collect();
    let base_gb = a.gb()?;
    let polys: Vec<Polynomial> = base_gb.polys().iter().map(|p| p.embed(&ring, &map)).collect();
    let alg = AlgebraPresentation::with_basis(ring.clone(), rels, GroebnerBasis::from_reduced_unchecked(&ring, polys))?;
    let embed = AlgebraMorphism::trusted(a, &alg, (0..n).map(|i| alg.var(i)).collect())?;
    let eval = |c: i64| -> Result<AlgebraMorphism> {
        let mut ims: Vec<Polynomial> = (0..n).map(|i| a.var(i)).collect();
        ims.push(Polynomial::from_i64(a.ring(), c));
        AlgebraMorphism::trusted(&alg, a, ims)
    };
    let p0 = eval(0)?;
    let p1 = eval(1)?;
    let mut fl: Vec<Polynomial> = (0..n).map(|i| alg.var(i)).collect();
    fl.push(alg.one().sub(&alg.var(n)));
    let flip = AlgebraMorphism::trusted(&alg, &alg, fl)?;
    Ok(PolyExtension { alg, base: a.clone(), x: n, embed, p0, p1, flip })
}
