//! Elements of `B ⊗ C` written as `Σ v ⊗ c_v` over standard monomials `v`
//! of `B`, with coefficients reduced in `C`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{Algebra, TensorProduct};
use crate::error::Result;
use crate::poly::{AlgebraElem, GroebnerBasis, Monomial, MonomialOrder, Polynomial, Scalar};

type Expansion = Arc<Vec<(Monomial, Scalar)>>;

pub struct TensorCtx {
    b: Algebra,
    c: Algebra,
    bgb: Arc<GroebnerBasis>,
    cgb: Arc<GroebnerBasis>,
    products: Mutex<HashMap<(Monomial, Monomial), Expansion>>,
}

impl TensorCtx {
    pub fn new(b: &Algebra, c: &Algebra) -> Result<Arc<TensorCtx>> {
        Ok(Arc::new(TensorCtx {
            b: b.clone(),
            c: c.clone(),
            bgb: b.gb()?.clone(),
            cgb: c.gb()?.clone(),
            products: Mutex::new(HashMap::new()),
        }))
    }

    pub fn left(&self) -> &Algebra {
        &self.b
    }

    pub fn right(&self) -> &Algebra {
        &self.c
    }

    /// Normal form of `v·w` in `B`, memoised.
    fn product(&self, v: &Monomial, w: &Monomial) -> Expansion {
        let key = if MonomialOrder::DegRevLex.cmp(v, w).is_le() { (v.clone(), w.clone()) } else { (w.clone(), v.clone()) };
        if let Some(e) = self.products.lock().expect("cache lock").get(&key) {
            return e.clone();
        }
        let m = Polynomial::monomial(self.b.ring(), key.0.mul(&key.1), self.b.field().one());
        let e: Expansion = Arc::new(self.bgb.reduce(&m).into_terms());
        self.products.lock().expect("cache lock").insert(key, e.clone());
        e
    }
}

#[derive(Clone)]
pub struct TensorElem {
    ctx: Arc<TensorCtx>,
    terms: HashMap<Monomial, Polynomial>,
}

impl PartialEq for TensorElem {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl std::fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_string_pretty())
    }
}

impl TensorElem {
    pub fn zero(ctx: &Arc<TensorCtx>) -> Self {
        TensorElem { ctx: ctx.clone(), terms: HashMap::new() }
    }

    pub fn one(ctx: &Arc<TensorCtx>) -> Self {
        Self::from_c(ctx, &ctx.c.one())
    }

    /// `1 ⊗ q`.
    pub fn from_c(ctx: &Arc<TensorCtx>, q: &Polynomial) -> Self {
        Self::basic(ctx, Monomial::one(ctx.b.arity()), q)
    }

    /// `v ⊗ q` for a standard monomial `v`.
    pub fn basic(ctx: &Arc<TensorCtx>, v: Monomial, q: &Polynomial) -> Self {
        let q = ctx.cgb.reduce(q);
        let mut terms = HashMap::new();
        if !q.is_zero() {
            terms.insert(v, q);
        }
        TensorElem { ctx: ctx.clone(), terms }
    }

    /// `p ⊗ 1` for any polynomial of `B`.
    pub fn from_b(ctx: &Arc<TensorCtx>, p: &Polynomial) -> Self {
        let nf = ctx.bgb.reduce(p);
        let mut terms = HashMap::new();
        for (m, c) in nf.terms() {
            terms.insert(m.clone(), Polynomial::constant(ctx.c.ring(), c.clone()));
        }
        TensorElem { ctx: ctx.clone(), terms }
    }

    /// Splits a polynomial of the presentation `B ⊗ C` (left variables
    /// first).
    pub fn from_tensor_poly(ctx: &Arc<TensorCtx>, tp: &TensorProduct, p: &Polynomial) -> Self {
        let nb = tp.left_arity();
        let n = tp.alg.arity();
        let mut acc = Self::zero(ctx);
        let mut grouped: HashMap<Monomial, Vec<(Monomial, Scalar)>> = HashMap::new();
        for (m, c) in p.terms() {
            grouped.entry(m.slice(0..nb)).or_default().push((m.slice(nb..n), c.clone()));
        }
        let mut keys: Vec<&Monomial> = grouped.keys().collect();
        keys.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(a, b));
        for v in keys {
            let q = Polynomial::from_terms(ctx.c.ring(), grouped[v].iter().cloned());
            let bpart = Polynomial::monomial(ctx.b.ring(), v.clone(), ctx.b.field().one());
            acc = acc.add(&Self::from_b(ctx, &bpart).mul(&Self::from_c(ctx, &q)));
        }
        acc
    }

    pub fn ctx(&self) -> &Arc<TensorCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, v: &Monomial) -> Polynomial {
        self.terms.get(v).cloned().unwrap_or_else(|| self.ctx.c.zero())
    }

    /// Standard monomials with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<Monomial> {
        let mut s: Vec<Monomial> = self.terms.keys().cloned().collect();
        s.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(a, b));
        s
    }

    pub fn terms_sorted(&self) -> Vec<(Monomial, Polynomial)> {
        self.support().into_iter().map(|v| {
            let c = self.terms[&v].clone();
            (v, c)
        }).collect()
    }

    /// Re-expresses the coefficients in another context sharing `B`.
    pub fn map_coeffs(&self, ctx: &Arc<TensorCtx>, f: impl Fn(&Polynomial) -> Polynomial) -> TensorElem {
        let mut terms = HashMap::new();
        for (v, q) in &self.terms {
            let q2 = ctx.cgb.reduce(&f(q));
            if !q2.is_zero() {
                terms.insert(v.clone(), q2);
            }
        }
        TensorElem { ctx: ctx.clone(), terms }
    }

    /// Applies a map on the left factor: `Σ v ⊗ q ↦ Σ g(v)·(1 ⊗ q)` in `ctx`,
    /// where `g(v)` is a polynomial of the new left algebra.
    pub fn map_left(&self, ctx: &Arc<TensorCtx>, g: impl Fn(&Monomial) -> Result<Polynomial>) -> Result<TensorElem> {
        let mut acc = TensorElem::zero(ctx);
        for (v, q) in self.terms_sorted() {
            let gv = TensorElem::from_b(ctx, &g(&v)?);
            acc = acc.add(&gv.mul(&TensorElem::from_c(ctx, &q)));
        }
        Ok(acc)
    }

    /// Polynomial in the presentation `B ⊗ C`.
    pub fn to_tensor_poly(&self, tp: &TensorProduct) -> Polynomial {
        let ring = tp.alg.ring();
        let nb = tp.left_arity();
        let lm: Vec<usize> = (0..nb).collect();
        let rm: Vec<usize> = (nb..ring.arity()).collect();
        let mut acc = Polynomial::zero(ring);
        for (v, q) in self.terms_sorted() {
            let vb = Polynomial::monomial(self.ctx.b.ring(), v, self.ctx.b.field().one()).embed(ring, &lm);
            acc = acc.add(&vb.mul(&q.embed(ring, &rm)));
        }
        acc
    }

    pub fn to_string_pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let vars = self.ctx.b.vars();
        self.terms_sorted()
            .into_iter()
            .rev()
            .map(|(v, q)| format!("{} (x) ({})", crate::poly::polynomial::format_monomial(&v, vars), q))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl AlgebraElem for TensorElem {
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (v, q) in &o.terms {
            let s = match terms.get(v) {
                Some(p) => p.add(q),
                None => q.clone(),
            };
            if s.is_zero() {
                terms.remove(v);
            } else {
                terms.insert(v.clone(), s);
            }
        }
        TensorElem { ctx: self.ctx.clone(), terms }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut acc: HashMap<Monomial, Polynomial> = HashMap::new();
        for (v, p) in &self.terms {
            for (w, q) in &o.terms {
                let pq = p.mul(q);
                for (u, c) in self.ctx.product(v, w).iter() {
                    let t = pq.scale(c);
                    match acc.get_mut(u) {
                        Some(x) => *x = x.add(&t),
                        None => {
                            acc.insert(u.clone(), t);
                        }
                    }
                }
            }
        }
        let mut terms = HashMap::with_capacity(acc.len());
        for (u, q) in acc {
            let r = self.ctx.cgb.reduce(&q);
            if !r.is_zero() {
                terms.insert(u, r);
            }
        }
        TensorElem { ctx: self.ctx.clone(), terms }
    }

    fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TensorElem::zero(&self.ctx);
        }
        TensorElem { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(v, q)| (v.clone(), q.scale(c))).collect() }
    }
}

/// Evaluates a polynomial at tensor-valued images.
pub fn eval_tensor(p: &Polynomial, images: &[TensorElem], ctx: &Arc<TensorCtx>) -> TensorElem {
    crate::poly::evaluate(p, images, &TensorElem::one(ctx), &TensorElem::zero(ctx))
}
