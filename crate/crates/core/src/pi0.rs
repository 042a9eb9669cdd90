//! The path-component subalgebra `𝔓(A)` by the de Rham, equalizer and
//! idempotent routes, and the presentation of `π₀`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{direct_sum, tensor_product, Algebra, AlgebraMorphism, AlgebraPresentation};
use crate::derham::{derham_h0, ser_polys};
use crate::error::{Error, Result};
use crate::mapspace::{uniform_mapspace, TensorCtx, TensorElem};
use crate::par::Exec;
use crate::poly::coords::{kernel_elements, rehome, sorted};
use crate::poly::{
    elimination_ideal, field_solutions, fresh_name, in_span, same_span, AlgebraElem, Field, MonomialOrder, PolyRing,
    Polynomial,
};

fn free_line(f: Field) -> Result<Algebra> {
    AlgebraPresentation::free(f, &["x"])
}

/// `(x ↦ 1) − (x ↦ 0)` applied to `Υθ(a)` at level `d`, reduced modulo `J`.
fn endpoint_difference(a: &Algebra, p: &Polynomial, d: u32) -> Result<Polynomial> {
    let ms = uniform_mapspace(a, &free_line(a.field())?, d)?;
    let t = ms.upsilon_apply(p)?;
    let mut diff = ms.alg.zero();
    for (v, c) in t.terms_sorted() {
        if !v.is_one() {
            diff = diff.add(&c);
        }
    }
    ms.alg.nf(&diff)
}

#[derive(Clone, Debug, PartialEq)]
pub enum EqualizerVerdict {
    /// Passed every level `1..=depth`.
    Pass { depth: u32 },
    Fail { level: u32, residual: Polynomial },
}

impl EqualizerVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, EqualizerVerdict::Pass { .. })
    }
}

/// Tests `𝔭₀(a) = 𝔭₁(a)` on the tower levels `1..=depth` of `M(A, F[x])`.
/// Level 0 holds for every element.
pub fn equalizer_membership(a: &Algebra, p: &Polynomial, depth: u32) -> Result<EqualizerVerdict> {
    PolyRing::check_same(p.ring(), a.ring())?;
    for d in 1..=depth {
        let r = endpoint_difference(a, p, d)?;
        if !r.is_zero() {
            return Ok(EqualizerVerdict::Fail { level: d, residual: r });
        }
    }
    Ok(EqualizerVerdict::Pass { depth })
}

/// Elements of degree ≤ `deg` passing the equalizer test, level by level.
#[derive(Clone, Debug, Serialize)]
pub struct EqualizerSubspace {
    pub degree: u32,
    pub tower: u32,
    /// Dimension of the passing subspace at each level `1..=tower` alone.
    pub level_dims: Vec<usize>,
    /// Elements passing every level.
    #[serde(serialize_with = "ser_polys")]
    pub basis: Vec<Polynomial>,
}

pub fn equalizer_subspace(a: &Algebra, deg: u32, tower: u32) -> Result<EqualizerSubspace> {
    let std = a.standard_monomials(deg)?;
    let monos: Vec<Polynomial> =
        std.iter().map(|m| Polynomial::monomial(a.ring(), m.clone(), a.field().one())).collect();
    let mut level_dims = Vec::new();
    let mut all: Vec<Vec<Polynomial>> = vec![Vec::new(); std.len()];
    for d in 1..=tower {
        let ms = uniform_mapspace(a, &free_line(a.field())?, d)?;
        let images: Vec<Vec<Polynomial>> = monos
            .iter()
            .map(|m| {
                let t = ms.upsilon_apply(m)?;
                let mut diff = ms.alg.zero();
                for (v, c) in t.terms_sorted() {
                    if !v.is_one() {
                        diff = diff.add(&c);
                    }
                }
                Ok(vec![ms.alg.nf(&diff)?])
            })
            .collect::<Result<_>>()?;
        level_dims.push(kernel_elements(a.ring(), &std, &images).len());
        for (acc, im) in all.iter_mut().zip(images) {
            acc.extend(im);
        }
    }
    // slots from different levels live in different rings; re-home them by name
    let basis = if tower == 0 {
        kernel_elements(a.ring(), &std, &vec![Vec::new(); std.len()])
    } else {
        let rehomed = rehome(&all)?;
        kernel_elements(a.ring(), &std, &rehomed)
    };
    Ok(EqualizerSubspace { degree: deg, tower, level_dims, basis })
}

/// Solutions of `a^k = a` with `a` supported on the standard monomials of
/// degree ≤ `deg`.
#[derive(Clone, Debug, Serialize)]
pub struct PowerSolutions {
    pub k: u32,
    pub degree: u32,
    #[serde(serialize_with = "ser_polys")]
    pub elements: Vec<Polynomial>,
    /// Every solution within the degree bound is listed.
    pub complete: bool,
}

fn power_solutions(a: &Algebra, k: u32, deg: u32) -> Result<PowerSolutions> {
    let std = a.standard_monomials(deg)?;
    let names: Vec<String> = (0..std.len()).map(|i| format!("c{i}")).collect();
    let cring = PolyRing::with_guards(a.field(), names, MonomialOrder::DegRevLex, a.ring().guards())?;
    let c = AlgebraPresentation::new(cring.clone(), Vec::new())?;
    let ctx = TensorCtx::new(a, &c)?;
    let mut e = TensorElem::zero(&ctx);
    for (j, m) in std.iter().enumerate() {
        e = e.add(&TensorElem::basic(&ctx, m.clone(), &Polynomial::var(&cring, j)));
    }
    let mut pw = TensorElem::one(&ctx);
    for _ in 0..k {
        pw = pw.mul(&e);
    }
    let eqs: Vec<Polynomial> =
        pw.add(&e.scale(&a.field().from_i64(-1))).terms_sorted().into_iter().map(|(_, q)| q).collect();
    let (points, complete) = match a.field() {
        Field::Prime(_) => {
            let sys = AlgebraPresentation::new(cring.clone(), eqs)?;
            (crate::algebra::point_coordinates_with(&sys, Exec::best())?, true)
        }
        Field::Rational => {
            let s = field_solutions(&eqs, &cring, usize::MAX)?;
            (s.points, s.complete)
        }
    };
    let elements: Vec<Polynomial> = points
        .iter()
        .map(|pt| Polynomial::from_terms(a.ring(), std.iter().cloned().zip(pt.iter().cloned())))
        .collect();
    let mut elements = sorted(a.ring(), elements);
    elements.dedup();
    for x in &elements {
        if !a.equal(&x.pow(k), x)? {
            return Err(Error::property("solution of a^k = a", format!("{x}")));
        }
    }
    Ok(PowerSolutions { k, degree: deg, elements, complete })
}

pub fn idempotent_search(a: &Algebra, deg: u32) -> Result<PowerSolutions> {
    power_solutions(a, 2, deg)
}

/// Solutions of `a^k = a`, the generators of `𝕀_k𝔓(A)`.
pub fn iskp_subalgebra(a: &Algebra, k: u32, deg: u32) -> Result<PowerSolutions> {
    if k < 2 {
        return Err(Error::Hypothesis("k must be at least 2".into()));
    }
    let ch = a.field().characteristic();
    if ch != 0 && (k as u64 - 1) % ch == 0 {
        return Err(Error::Hypothesis(format!("characteristic {ch} divides k - 1 = {}", k - 1)));
    }
    power_solutions(a, k, deg)
}

/// Nonzero idempotents not splitting into two orthogonal nonzero ones
/// among `idem`.
pub fn primitive_idempotents(a: &Algebra, idem: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for e in idem.iter().filter(|e| !e.is_zero()) {
        let mut primitive = true;
        for f in idem.iter().filter(|f| !f.is_zero() && *f != e) {
            if a.equal(&e.mul(f), f)? {
                primitive = false;
                break;
            }
        }
        if primitive {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// `𝔽[y]/K ≅ 𝔓(A)` with the inclusion `y_i ↦ b_i`.
#[derive(Clone, Debug)]
pub struct Pi0Presentation {
    pub alg: Algebra,
    pub inclusion: AlgebraMorphism,
    pub basis: Vec<Polynomial>,
    pub stabilized: bool,
    /// Number of primitive idempotents when `𝔓(A)` is finite-dimensional
    /// and its idempotents are certified complete.
    pub components: Option<usize>,
    pub idempotents: Vec<Polynomial>,
}

pub fn pi0_presentation(a: &Algebra, deg: u32) -> Result<Pi0Presentation> {
    if !a.field().is_rational() {
        return Err(Error::UnsupportedField("the presentation of π₀ needs characteristic 0".into()));
    }
    let h0 = derham_h0(a, deg)?;
    let gens: Vec<Polynomial> = h0.basis.iter().filter(|b| !b.is_constant()).cloned().collect();
    let n = a.arity();
    let mut names = a.vars().to_vec();
    for i in 0..gens.len() {
        let nm = fresh_name(&format!("y{}", i + 1), &names);
        names.push(nm);
    }
    let big = PolyRing::with_guards(a.field(), names, MonomialOrder::DegRevLex, a.ring().guards())?;
    let embed: Vec<usize> = (0..n).collect();
    let mut polys: Vec<Polynomial> = a.relations().iter().map(|r| r.embed(&big, &embed)).collect();
    for (i, b) in gens.iter().enumerate() {
        polys.push(Polynomial::var(&big, n + i).sub(&b.embed(&big, &embed)));
    }
    let keep: Vec<usize> = (n..n + gens.len()).collect();
    let (sub, kernel) = elimination_ideal(&big, &polys, &keep)?;
    let p = AlgebraPresentation::new(sub, kernel)?;
    let inclusion = AlgebraMorphism::check(&p, a, gens.clone())?;
    let (components, idempotents) = match p.basis()? {
        Some(basis) => {
            let top = basis.iter().map(|m| m.degree()).max().unwrap_or(0);
            let idem = idempotent_search(&p, top)?;
            if idem.complete {
                let prim = primitive_idempotents(&p, &idem.elements)?;
                let images = idem.elements.iter().map(|e| inclusion.apply(e)).collect::<Result<Vec<_>>>()?;
                (Some(prim.len()), images)
            } else {
                (None, Vec::new())
            }
        }
        None => (None, Vec::new()),
    };
    Ok(Pi0Presentation { alg: p, inclusion, basis: h0.basis, stabilized: h0.stabilized, components, idempotents })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Derham,
    Equalizer,
    Idempotent,
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        match s {
            "derham" => Ok(Route::Derham),
            "equalizer" => Ok(Route::Equalizer),
            "idempotent" => Ok(Route::Idempotent),
            _ => Err(Error::invalid(format!("unknown route `{s}`"))),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Derham => "derham",
            Route::Equalizer => "equalizer",
            Route::Idempotent => "idempotent",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Pi0Result {
    pub route: Route,
    pub degree: u32,
    pub tower: u32,
    /// Basis of the computed subalgebra (generators for the idempotent route).
    #[serde(serialize_with = "ser_polys")]
    pub basis: Vec<Polynomial>,
    #[serde(serialize_with = "ser_polys")]
    pub idempotents: Vec<Polynomial>,
    pub components: Option<usize>,
    /// Over prime fields the outputs are only candidates for `𝔓`.
    pub candidate: bool,
    pub note: Option<String>,
}

/// Runs the requested routes; every reported element is re-checked with the
/// equalizer test up to `tower`.
pub fn pi0_routes(a: &Algebra, routes: &[Route], deg: u32, tower: u32) -> Result<Vec<Pi0Result>> {
    let candidate = !a.field().is_rational();
    let finite = a.basis()?.map(|b| b.iter().map(|m| m.degree()).max().unwrap_or(0));
    let mut out = Vec::new();
    for &route in routes {
        let mut r = Pi0Result {
            route,
            degree: deg,
            tower,
            basis: Vec::new(),
            idempotents: Vec::new(),
            components: None,
            candidate,
            note: None,
        };
        match route {
            Route::Derham => {
                if candidate {
                    r.note = Some("skipped: the de Rham route needs characteristic 0".into());
                    out.push(r);
                    continue;
                }
                let p = pi0_presentation(a, deg)?;
                r.note = Some(format!("stabilized: {}", p.stabilized));
                r.basis = p.basis;
                r.idempotents = p.idempotents;
                r.components = p.components;
            }
            Route::Equalizer => {
                let s = equalizer_subspace(a, deg, tower)?;
                r.basis = s.basis;
            }
            Route::Idempotent => {
                let s = idempotent_search(a, deg)?;
                if s.complete && finite.is_some_and(|top| top <= deg) {
                    r.components = Some(primitive_idempotents(a, &s.elements)?.len());
                }
                r.basis = s.elements.clone();
                r.idempotents = s.elements;
                if !s.complete {
                    r.note = Some("possibly incomplete".into());
                }
            }
        }
        for b in &r.basis {
            if let EqualizerVerdict::Fail { level, residual } = equalizer_membership(a, b, tower)? {
                return Err(Error::property(
                    "reported elements pass the equalizer test",
                    format!("{route} element {b} fails at level {level} with residual {residual}"),
                ));
            }
        }
        out.push(r);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctorCheck {
    DirectSum,
    Tensor,
    UnitalEquality,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorReport {
    pub check: FunctorCheck,
    pub degree: u32,
    pub left_dim: usize,
    pub right_dim: usize,
    pub equal: bool,
}

/// Compares `𝔓` of a construction with the construction on `𝔓`, by de Rham
/// kernels of degree ≤ `deg`. The tensor comparison is reported, never
/// asserted.
pub fn functor_property_checks(which: FunctorCheck, a: &Algebra, b: Option<&Algebra>, deg: u32) -> Result<FunctorReport> {
    let dim = |x: &Algebra| derham_h0(x, deg).map(|k| k.dim());
    let need_b = || b.ok_or_else(|| Error::invalid("this check needs a second algebra"));
    let (left_dim, right_dim) = match which {
        FunctorCheck::DirectSum => {
            let b = need_b()?;
            (dim(&direct_sum(a, b)?.alg)?, dim(a)? + dim(b)?)
        }
        FunctorCheck::Tensor => {
            let b = need_b()?;
            (dim(&tensor_product(a, b)?.alg)?, dim(a)? * dim(b)?)
        }
        FunctorCheck::UnitalEquality => {
            // 𝔓 of the unitalization, cut down to the summand A
            let ground = AlgebraPresentation::ground(a.field());
            let s = direct_sum(a, &ground)?;
            let h = derham_h0(&s.alg, deg)?;
            let e = s.alg.var(s.e);
            let not_e = s.alg.one().sub(&e);
            let coords: Vec<Vec<Polynomial>> = h
                .basis
                .iter()
                .map(|p| Ok(vec![s.alg.nf(&p.mul(&not_e))?]))
                .collect::<Result<_>>()?;
            // kernel in the coordinates of the computed basis
            let mut inside = Vec::new();
            let basis_monos: Vec<crate::poly::Monomial> = (0..h.basis.len())
                .map(|i| crate::poly::Monomial::var(h.basis.len().max(1), i))
                .collect();
            let coeff_ring = PolyRing::new(
                a.field(),
                (0..h.basis.len().max(1)).map(|i| format!("t{i}")).collect(),
                MonomialOrder::DegRevLex,
            )?;
            for v in kernel_elements(&coeff_ring, &basis_monos, &coords) {
                let mut el = s.alg.zero();
                for (m, c) in v.terms() {
                    let i = (0..m.arity()).find(|&i| m.exp(i) == 1).expect("linear");
                    el = el.add(&h.basis[i].scale(c));
                }
                inside.push(s.p1.apply(&el)?);
            }
            let own = derham_h0(a, deg)?.basis;
            if !same_span(&sorted(a.ring(), inside.clone()), &own) {
                return Err(Error::property(
                    "unital and non-unital path components agree",
                    format!("{} vs {} basis elements", inside.len(), own.len()),
                ));
            }
            (inside.len(), own.len())
        }
    };
    let equal = left_dim == right_dim;
    if !equal && which != FunctorCheck::Tensor {
        return Err(Error::property(
            format!("{which:?} preserved"),
            format!("dimension {left_dim} vs {right_dim} at degree {deg}"),
        ));
    }
    Ok(FunctorReport { check: which, degree: deg, left_dim, right_dim, equal })
}

/// Every idempotent lies in the span of the de Rham kernel.
pub fn idempotents_in_kernel(a: &Algebra, deg: u32) -> Result<bool> {
    let k = derham_h0(a, deg)?;
    let idem = idempotent_search(a, deg)?;
    Ok(in_span(&k.basis, &idem.elements))
}

/// `f` and `g` agree on every basis element of the de Rham kernel.
pub fn restrictions_agree(f: &AlgebraMorphism, g: &AlgebraMorphism, deg: u32) -> Result<bool> {
    let k = derham_h0(f.source(), deg)?;
    for b in &k.basis {
        if !f.target().equal(&f.apply(b)?, &g.apply(b)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Symbolic check that `a ↦ [[a, a·x], [0, 0]]` is a multiplicative map
/// sending nonzero elements to nonconstant matrices.
pub fn pnc_zero_witness() -> crate::matrix::LemmaReport {
    crate::matrix::pnc_zero_witness()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(f: Field, vars: &[&str], rels: &[&str]) -> Algebra {
        AlgebraPresentation::parse(f, vars, rels).unwrap()
    }

    #[test]
    fn equalizer_examples() {
        let q = Field::Rational;
        let e = alg(q, &["e"], &["e^2 - e"]);
        let ee = e.parse_elem("e").unwrap();
        assert_eq!(equalizer_membership(&e, &ee, 1).unwrap(), EqualizerVerdict::Pass { depth: 1 });
        let t = alg(q, &["t"], &[]);
        match equalizer_membership(&t, &t.parse_elem("t").unwrap(), 1).unwrap() {
            EqualizerVerdict::Fail { level, residual } => {
                assert_eq!(level, 1);
                assert_eq!(residual.to_string(), "z__t__e1");
            }
            v => panic!("{v:?}"),
        }
        assert!(equalizer_membership(&t, &t.one(), 3).unwrap().passed());
        let s = equalizer_subspace(&e, 1, 2).unwrap();
        assert_eq!(s.level_dims, vec![2, 2]);
        assert_eq!(s.basis.len(), 2);
        let s = equalizer_subspace(&t, 3, 2).unwrap();
        assert_eq!(s.basis.len(), 1);
    }

    #[test]
    fn idempotents() {
        let q = Field::Rational;
        let three = alg(q, &["x"], &["x^3 - x"]);
        let s = idempotent_search(&three, 2).unwrap();
        assert_eq!(s.elements.len(), 8);
        assert!(s.complete);
        let half = three.parse_elem("1/2*x^2 + 1/2*x").unwrap();
        assert!(s.elements.contains(&half));
        assert_eq!(primitive_idempotents(&three, &s.elements).unwrap().len(), 3);
        let line = alg(q, &["x"], &[]);
        let s = idempotent_search(&line, 3).unwrap();
        assert_eq!(s.elements.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["0", "1"]);
        let f2 = alg(Field::Prime(2), &["e"], &["e^2 - e"]);
        let s = idempotent_search(&f2, 1).unwrap();
        let mut got: Vec<String> = s.elements.iter().map(|p| p.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["0", "1", "e", "e + 1"]);
    }

    #[test]
    fn power_subalgebras() {
        let q = Field::Rational;
        let three = alg(q, &["x"], &["x^3 - x"]);
        let s = iskp_subalgebra(&three, 3, 2).unwrap();
        assert!(s.elements.contains(&three.parse_elem("x").unwrap()));
        let line = alg(q, &["x"], &[]);
        let s = iskp_subalgebra(&line, 3, 2).unwrap();
        assert_eq!(s.elements.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["0", "-1", "1"]);
        let f2 = alg(Field::Prime(2), &["e"], &["e^2 - e"]);
        assert!(matches!(iskp_subalgebra(&f2, 3, 1), Err(Error::Hypothesis(_))));
        let idem = idempotent_search(&three, 2).unwrap();
        let k2 = iskp_subalgebra(&three, 2, 2).unwrap();
        assert_eq!(idem.elements, k2.elements);
    }

    #[test]
    fn presentations() {
        let q = Field::Rational;
        let three = alg(q, &["x"], &["x^3 - x"]);
        let p = pi0_presentation(&three, 2).unwrap();
        assert_eq!(p.components, Some(3));
        assert_eq!(p.alg.dimension().unwrap(), Some(3));
        let e = alg(q, &["e"], &["e^2 - e"]);
        assert_eq!(pi0_presentation(&e, 2).unwrap().components, Some(2));
        let circle = alg(q, &["x", "y"], &["x^2 + y^2 - 1"]);
        let p = pi0_presentation(&circle, 4).unwrap();
        assert_eq!(p.alg.arity(), 0);
        assert_eq!(p.components, Some(1));
        let f3 = alg(Field::Prime(3), &["x"], &[]);
        assert!(matches!(pi0_presentation(&f3, 2), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn routes_agree() {
        let q = Field::Rational;
        let three = alg(q, &["x"], &["x^3 - x"]);
        let rs = pi0_routes(&three, &[Route::Derham, Route::Equalizer, Route::Idempotent], 2, 2).unwrap();
        assert!(same_span(&rs[0].basis, &rs[1].basis));
        assert_eq!(rs[0].components, Some(3));
        assert_eq!(rs[2].components, Some(3));
        assert!(idempotents_in_kernel(&three, 2).unwrap());
        let f2 = alg(Field::Prime(2), &["e"], &["e^2 - e"]);
        let rs = pi0_routes(&f2, &[Route::Derham, Route::Equalizer], 1, 2).unwrap();
        assert!(rs[0].basis.is_empty() && rs[0].candidate);
        assert_eq!(rs[1].basis.len(), 2);
    }

    #[test]
    fn functor_checks() {
        let q = Field::Rational;
        let e = alg(q, &["e"], &["e^2 - e"]);
        let ground = AlgebraPresentation::ground(q);
        let line = alg(q, &["x"], &[]);
        let r = functor_property_checks(FunctorCheck::DirectSum, &e, Some(&ground), 2).unwrap();
        assert_eq!((r.left_dim, r.right_dim), (3, 3));
        let r = functor_property_checks(FunctorCheck::Tensor, &line, Some(&e), 3).unwrap();
        assert_eq!((r.left_dim, r.right_dim), (2, 2));
        let r = functor_property_checks(FunctorCheck::Tensor, &e, Some(&ground), 2).unwrap();
        assert!(r.equal);
        let r = functor_property_checks(FunctorCheck::UnitalEquality, &e, None, 2).unwrap();
        assert_eq!((r.left_dim, r.right_dim), (2, 2));
        let r = functor_property_checks(FunctorCheck::UnitalEquality, &line, None, 3).unwrap();
        assert_eq!((r.left_dim, r.right_dim), (1, 1));
    }

    #[test]
    fn homotopic_maps_agree_on_kernel() {
        let q = Field::Rational;
        let e = alg(q, &["e"], &["e^2 - e"]);
        let b = alg(q, &["u"], &["u^2"]);
        let f = AlgebraMorphism::parse(&e, &b, &["1"]).unwrap();
        assert!(restrictions_agree(&f, &f, 2).unwrap());
        let g = AlgebraMorphism::parse(&e, &b, &["0"]).unwrap();
        assert!(!restrictions_agree(&f, &g, 2).unwrap());
    }
}
