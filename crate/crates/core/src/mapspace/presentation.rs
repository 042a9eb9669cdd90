use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMorphism, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::poly::{AlgebraElem, Monomial, MonomialOrder, PolyRing, Polynomial};

use super::tensor::{eval_tensor, TensorCtx, TensorElem};

/// Per-generator finite sets of standard monomials of `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncation {
    deltas: Vec<Vec<Monomial>>,
    /// Set when every δ is "all standard monomials of degree ≤ d".
    uniform_degree: Option<u32>,
}

impl Truncation {
    /// δ_a = standard monomials of `B` of degree ≤ `d`, for every generator.
    pub fn uniform(a: &AlgebraPresentation, b: &AlgebraPresentation, d: u32) -> Result<Truncation> {
        let s = b.standard_monomials(d)?;
        Ok(Truncation { deltas: vec![s; a.arity()], uniform_degree: Some(d) })
    }

    /// δ_a = the full basis of a finite-dimensional `B`.
    pub fn full(a: &AlgebraPresentation, b: &AlgebraPresentation) -> Result<Truncation> {
        let d = b
            .gb()?
            .max_standard_degree()
            .ok_or_else(|| Error::invalid("full truncation needs a finite-dimensional target"))?;
        Self::uniform(a, b, d)
    }

    pub(crate) fn per_generator(deltas: Vec<Vec<Monomial>>) -> Truncation {
        Truncation { deltas, uniform_degree: None }
    }

    pub fn deltas(&self) -> &[Vec<Monomial>] {
        &self.deltas
    }

    pub fn uniform_degree(&self) -> Option<u32> {
        self.uniform_degree
    }

    /// Componentwise inclusion `self ⊆ o`.
    pub fn is_contained_in(&self, o: &Truncation) -> bool {
        self.deltas.len() == o.deltas.len()
            && self.deltas.iter().zip(&o.deltas).all(|(s, t)| s.iter().all(|m| t.contains(m)))
    }
}

/// A truncation level `M_θ(A, B)` of the morphism-space pro-algebra.
#[derive(Clone, Debug)]
pub struct MapSpace {
    pub a: Algebra,
    pub b: Algebra,
    pub theta: Truncation,
    /// `(generator, monomial)` for each z-variable, in variable order.
    pub zvars: Vec<(usize, Monomial)>,
    offsets: Vec<usize>,
    /// The presentation `F[z]/J`.
    pub alg: Algebra,
}

pub fn zvar_name(gen: &str, v: &Monomial) -> String {
    format!("z__{gen}__{}", v.compact())
}

impl MapSpace {
    pub fn arity(&self) -> usize {
        self.zvars.len()
    }

    /// Index of `z_{a,v}`, if `v ∈ δ_a`.
    pub fn zvar(&self, a: usize, v: &Monomial) -> Option<usize> {
        self.theta.deltas[a].iter().position(|m| m == v).map(|k| self.offsets[a] + k)
    }

    pub fn names(&self) -> &[String] {
        self.alg.vars()
    }

    /// Generators of J (empty when A has no relations).
    pub fn j(&self) -> &[Polynomial] {
        self.alg.relations()
    }

    pub fn ctx(&self) -> Result<Arc<TensorCtx>> {
        TensorCtx::new(&self.b, &self.alg)
    }

    /// `Υθ(a) = Σ_v v ⊗ z_{a,v}` for every generator `a`.
    pub fn upsilon(&self) -> Result<Vec<TensorElem>> {
        let ctx = self.ctx()?;
        Ok(self.upsilon_in(&ctx))
    }

    fn upsilon_in(&self, ctx: &Arc<TensorCtx>) -> Vec<TensorElem> {
        (0..self.a.arity())
            .map(|i| {
                let mut acc = TensorElem::zero(ctx);
                for v in &self.theta.deltas[i] {
                    let z = Polynomial::var(ctx.right().ring(), self.zvar(i, v).expect("own variable"));
                    acc = acc.add(&TensorElem::basic(ctx, v.clone(), &z));
                }
                acc
            })
            .collect()
    }

    /// `Υθ(p)` for an element of `A`, reduced modulo `I_B` and `J`.
    pub fn upsilon_apply(&self, p: &Polynomial) -> Result<TensorElem> {
        PolyRing::check_same(p.ring(), self.a.ring())?;
        let ctx = self.ctx()?;
        let ims = self.upsilon_in(&ctx);
        Ok(eval_tensor(p, &ims, &ctx))
    }

    /// Sidecar rows: (variable name, generator name, monomial text).
    pub fn index_table(&self) -> Vec<(String, String, String)> {
        self.zvars
            .iter()
            .zip(self.alg.vars())
            .map(|((g, v), name)| {
                (
                    name.clone(),
                    self.a.vars()[*g].clone(),
                    crate::poly::polynomial::format_monomial(v, self.b.vars()),
                )
            })
            .collect()
    }
}

/// Builds `M_θ(A, B) = F[z_{a,v}]/J` where `J` is generated by the
/// `B`-coefficients of the relations of `A` evaluated at `Υθ`.
pub fn mapspace_presentation(a: &Algebra, b: &Algebra, theta: &Truncation) -> Result<MapSpace> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    if theta.deltas.len() != a.arity() {
        return Err(Error::invalid("truncation must list one monomial set per generator"));
    }
    let bgb = b.gb()?;
    let mut zvars = Vec::new();
    let mut names = Vec::new();
    let mut offsets = Vec::with_capacity(a.arity());
    for (i, delta) in theta.deltas.iter().enumerate() {
        offsets.push(zvars.len());
        for (k, v) in delta.iter().enumerate() {
            if v.arity() != b.arity() || !bgb.is_standard(v) {
                return Err(Error::invalid(format!(
                    "truncation monomial {} is not a standard monomial of the target",
                    crate::poly::polynomial::format_monomial(v, b.vars())
                )));
            }
            if delta[..k].contains(v) {
                return Err(Error::invalid("repeated monomial in truncation"));
            }
            zvars.push((i, v.clone()));
            names.push(zvar_name(&a.vars()[i], v));
        }
    }
    let zring = PolyRing::with_guards(a.field(), names, MonomialOrder::DegRevLex, a.ring().guards())?;
    let free = AlgebraPresentation::new(zring.clone(), Vec::new())?;
    let ctx = TensorCtx::new(b, &free)?;
    let proto = MapSpace { a: a.clone(), b: b.clone(), theta: theta.clone(), zvars, offsets, alg: free };
    let ims = proto.upsilon_in(&ctx);
    let mut j = Vec::new();
    for r in a.relations() {
        let img = eval_tensor(r, &ims, &ctx);
        for (_, q) in img.terms_sorted() {
            if !j.contains(&q) {
                j.push(q);
            }
        }
    }
    let alg = AlgebraPresentation::new(zring, j)?;
    Ok(MapSpace { alg, ..proto })
}

pub fn uniform_mapspace(a: &Algebra, b: &Algebra, d: u32) -> Result<MapSpace> {
    mapspace_presentation(a, b, &Truncation::uniform(a, b, d)?)
}

/// `M_θ' → M_θ` for `θ ⊆ θ'`: keeps shared variables and kills the rest.
pub fn structural_morphism(small: &MapSpace, big: &MapSpace) -> Result<AlgebraMorphism> {
    if !PolyRing::same(small.a.ring(), big.a.ring()) || !PolyRing::same(small.b.ring(), big.b.ring()) {
        return Err(Error::invalid("structural morphisms need the same pair (A, B)"));
    }
    if !small.theta.is_contained_in(&big.theta) {
        return Err(Error::invalid("the smaller truncation is not contained in the larger one"));
    }
    let ring = small.alg.ring();
    let images = big
        .zvars
        .iter()
        .map(|(g, v)| match small.zvar(*g, v) {
            Some(k) => Polynomial::var(ring, k),
            None => Polynomial::zero(ring),
        })
        .collect();
    AlgebraMorphism::check(&big.alg, &small.alg, images)
}

/// Uniform levels `d0..=d1` with the structural maps between neighbours
/// (`maps[k]: level k+1 → level k`).
pub struct TruncationTower {
    pub levels: Vec<MapSpace>,
    pub maps: Vec<AlgebraMorphism>,
    pub start: u32,
}

pub fn truncation_tower(a: &Algebra, b: &Algebra, d0: u32, d1: u32) -> Result<TruncationTower> {
    let levels = (d0..=d1).map(|d| uniform_mapspace(a, b, d)).collect::<Result<Vec<_>>>()?;
    let maps = levels.windows(2).map(|w| structural_morphism(&w[0], &w[1])).collect::<Result<Vec<_>>>()?;
    Ok(TruncationTower { levels, maps, start: d0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::compose;
    use crate::poly::Field;

    fn q(vars: &[&str], rels: &[&str]) -> Algebra {
        AlgebraPresentation::parse(Field::Rational, vars, rels).unwrap()
    }

    #[test]
    fn free_source_gives_free_mapspace() {
        let m = uniform_mapspace(&q(&["t"], &[]), &q(&["x"], &[]), 1).unwrap();
        assert_eq!(m.arity(), 2);
        assert!(m.j().is_empty());
    }

    #[test]
    fn idempotent_into_field() {
        let m = uniform_mapspace(&q(&["t"], &["t^2 - t"]), &AlgebraPresentation::ground(Field::Rational), 0).unwrap();
        assert_eq!(m.names(), &["z__t__e".to_string()]);
        let j: Vec<String> = m.j().iter().map(|p| p.to_string()).collect();
        assert_eq!(j, vec!["z__t__e^2 - z__t__e"]);
    }

    #[test]
    fn square_roots_of_one() {
        let a = q(&["t"], &["t^2 - 1"]);
        let b = q(&["x"], &["x^2 - 1"]);
        let m = uniform_mapspace(&a, &b, 1).unwrap();
        let j: Vec<String> = m.j().iter().map(|p| p.to_string()).collect();
        assert_eq!(j, vec!["z__t__e0^2 + z__t__e1^2 - 1", "2*z__t__e0*z__t__e1"]);
        let up = m.upsilon_apply(&a.parse_elem("t").unwrap()).unwrap();
        assert_eq!(up.coefficient(&Monomial::from_exps(vec![1])).to_string(), "z__t__e1");
        assert_eq!(up.coefficient(&Monomial::from_exps(vec![0])).to_string(), "z__t__e0");
        let sq = m.upsilon_apply(&a.parse_elem("t^2").unwrap()).unwrap();
        assert_eq!(sq, m.upsilon_apply(&a.one()).unwrap());
    }

    #[test]
    fn tower_structural_maps_compose() {
        let a = q(&["t"], &["t^2 - 1"]);
        let b = q(&["x"], &[]);
        let tower = truncation_tower(&a, &b, 1, 3).unwrap();
        let direct = structural_morphism(&tower.levels[0], &tower.levels[2]).unwrap();
        let via = compose(&tower.maps[0], &tower.maps[1]).unwrap();
        assert!(direct.equals(&via));
        let id = structural_morphism(&tower.levels[1], &tower.levels[1]).unwrap();
        assert!(id.equals(&AlgebraMorphism::identity(&tower.levels[1].alg)));
    }
}
