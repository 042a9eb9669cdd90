//! Kähler differentials in degrees 0..=2, degree-zero de Rham cohomology
//! and the formal-integral cochain homotopy on `A[x]`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{coordinates_of, from_coordinates, Algebra, PolyExtension};
use crate::error::{Error, Result};
use crate::poly::coords::CoordIndex;
use crate::poly::linalg::{self, Echelon, Vector};
use crate::poly::{Monomial, PolyRing, Polynomial, Scalar};

/// `Ω¹(A)`: the free module on `dx_i` modulo the Jacobian rows of the relations.
#[derive(Clone, Debug)]
pub struct KaehlerPresentation {
    pub alg: Algebra,
    /// `rows[k][i] = ∂r_k/∂x_i`.
    pub rows: Vec<Vec<Polynomial>>,
}

pub fn kaehler(a: &Algebra) -> KaehlerPresentation {
    let n = a.arity();
    let rows = a.relations().iter().map(|r| (0..n).map(|i| r.derivative(i)).collect()).collect();
    KaehlerPresentation { alg: a.clone(), rows }
}

/// Index of `dx_i ∧ dx_j` (`i < j`) among the pairs in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn slots(n: usize, degree: u8) -> usize {
    match degree {
        0 => 1,
        1 => n,
        _ => n * n.saturating_sub(1) / 2,
    }
}

/// A form of degree 0, 1 or 2; coefficients are kept in normal form.
#[derive(Clone, Debug)]
pub struct DifferentialForm {
    alg: Algebra,
    degree: u8,
    coeffs: Vec<Polynomial>,
}

impl DifferentialForm {
    pub fn new(alg: &Algebra, degree: u8, coeffs: Vec<Polynomial>) -> Result<Self> {
        if degree > 2 {
            return Err(Error::invalid("forms of degree above 2 are not supported"));
        }
        if coeffs.len() != slots(alg.arity(), degree) {
            return Err(Error::invalid(format!("a {degree}-form needs {} coefficients", slots(alg.arity(), degree))));
        }
        let coeffs = coeffs
            .iter()
            .map(|c| {
                PolyRing::check_same(c.ring(), alg.ring())?;
                alg.nf(c)
            })
            .collect::<Result<_>>()?;
        Ok(DifferentialForm { alg: alg.clone(), degree, coeffs })
    }

    pub fn zero(alg: &Algebra, degree: u8) -> Self {
        DifferentialForm { alg: alg.clone(), degree, coeffs: vec![alg.zero(); slots(alg.arity(), degree)] }
    }

    pub fn dx(alg: &Algebra, i: usize) -> Self {
        let mut w = Self::zero(alg, 1);
        w.coeffs[i] = alg.one();
        w
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// Coefficient of `dx_i ∧ dx_j`, antisymmetric in `(i, j)`.
    pub fn coeff2(&self, i: usize, j: usize) -> Polynomial {
        let n = self.alg.arity();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[pair_index(n, i, j)].clone(),
            std::cmp::Ordering::Greater => self.coeffs[pair_index(n, j, i)].neg(),
            std::cmp::Ordering::Equal => self.alg.zero(),
        }
    }

    fn check_compatible(&self, o: &DifferentialForm) -> Result<()> {
        PolyRing::check_same(self.alg.ring(), o.alg.ring())?;
        if self.degree != o.degree {
            return Err(Error::invalid(format!("degree {} vs {}", self.degree, o.degree)));
        }
        Ok(())
    }

    pub fn add(&self, o: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_compatible(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        DifferentialForm::new(&self.alg, self.degree, coeffs)
    }

    pub fn sub(&self, o: &DifferentialForm) -> Result<DifferentialForm> {
        self.add(&o.scale(&self.alg.field().from_i64(-1))?)
    }

    pub fn scale(&self, c: &Scalar) -> Result<DifferentialForm> {
        DifferentialForm::new(&self.alg, self.degree, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Multiplication by a function.
    pub fn times(&self, p: &Polynomial) -> Result<DifferentialForm> {
        DifferentialForm::new(&self.alg, self.degree, self.coeffs.iter().map(|a| a.mul(p)).collect())
    }

    /// `ω ∧ η` for two 1-forms.
    pub fn wedge(&self, o: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_compatible(o)?;
        if self.degree != 1 {
            return Err(Error::invalid("wedge is implemented for 1-forms"));
        }
        let n = self.alg.arity();
        let coeffs = pairs(n)
            .into_iter()
            .map(|(i, j)| self.coeffs[i].mul(&o.coeffs[j]).sub(&self.coeffs[j].mul(&o.coeffs[i])))
            .collect();
        DifferentialForm::new(&self.alg, 2, coeffs)
    }

    /// Coefficients are literally zero (not just zero in `Ω`).
    pub fn is_trivially_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.alg.vars();
        let names: Vec<String> = match self.degree {
            0 => vec![String::new()],
            1 => vars.iter().map(|v| format!("d{v}")).collect(),
            _ => pairs(vars.len()).into_iter().map(|(i, j)| format!("d{}^d{}", vars[i], vars[j])).collect(),
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(&names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| if n.is_empty() { c.to_string() } else { format!("({c})*{n}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn universal_derivation(a: &Algebra, p: &Polynomial) -> Result<DifferentialForm> {
    PolyRing::check_same(p.ring(), a.ring())?;
    DifferentialForm::new(a, 1, (0..a.arity()).map(|i| p.derivative(i)).collect())
}

/// `d` on degree 0 and 1 forms.
pub fn exterior_derivative(w: &DifferentialForm) -> Result<DifferentialForm> {
    match w.degree {
        0 => universal_derivation(&w.alg, &w.coeffs[0]),
        1 => {
            let n = w.alg.arity();
            let coeffs = pairs(n)
                .into_iter()
                .map(|(i, j)| w.coeffs[j].derivative(i).sub(&w.coeffs[i].derivative(j)))
                .collect();
            DifferentialForm::new(&w.alg, 2, coeffs)
        }
        _ => Ok(DifferentialForm::zero(&w.alg, 2)),
    }
}

/// Generators of the relation submodule in degree `degree` before
/// multiplication by monomials.
fn relation_generators(k: &KaehlerPresentation, degree: u8) -> Result<Vec<DifferentialForm>> {
    let a = &k.alg;
    let rows: Vec<DifferentialForm> =
        k.rows.iter().map(|r| DifferentialForm::new(a, 1, r.clone())).collect::<Result<_>>()?;
    match degree {
        0 => Ok(Vec::new()),
        1 => Ok(rows),
        _ => {
            let mut out = Vec::new();
            for r in &rows {
                for j in 0..a.arity() {
                    out.push(r.wedge(&DifferentialForm::dx(a, j))?);
                }
            }
            Ok(out)
        }
    }
}

fn guard_size(alg: &Algebra, size: usize) -> Result<()> {
    let limit = alg.ring().guards().max_basis;
    if size > limit {
        return Err(Error::ResourceLimit { what: "linear system size", limit: limit as u64 });
    }
    Ok(())
}

/// `m·g` for every standard monomial `m` with `deg m ≤ slack` and generator `g`.
fn spanning_multiples(k: &KaehlerPresentation, degree: u8, slack: u32) -> Result<Vec<DifferentialForm>> {
    let gens = relation_generators(k, degree)?;
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let ms = k.alg.standard_monomials(slack)?;
    guard_size(&k.alg, ms.len() * gens.len())?;
    let mut out = Vec::with_capacity(ms.len() * gens.len());
    for m in &ms {
        let mp = Polynomial::monomial(k.alg.ring(), m.clone(), k.alg.field().one());
        for g in &gens {
            out.push(g.times(&mp)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ZeroTest {
    pub is_zero: bool,
    /// Reduced representative when the form is not certified zero.
    pub residual: Option<DifferentialForm>,
}

/// Decides whether `w` lies in the span of monomial multiples (degree ≤ `slack`)
/// of the relation generators.
pub fn form_is_zero(w: &DifferentialForm, slack: u32) -> Result<ZeroTest> {
    if w.degree == 0 || w.is_trivially_zero() {
        let z = w.is_trivially_zero();
        return Ok(ZeroTest { is_zero: z, residual: (!z).then(|| w.clone()) });
    }
    let k = kaehler(&w.alg);
    let gens = spanning_multiples(&k, w.degree, slack)?;
    let mut idx = CoordIndex::default();
    idx.register(&w.coeffs);
    for g in &gens {
        idx.register(&g.coeffs);
    }
    let field = w.alg.field();
    let mut ech = Echelon::new(field, idx.len());
    for g in &gens {
        ech.insert(&idx.dense(&g.coeffs, field));
    }
    let r = ech.reduce(&idx.dense(&w.coeffs, field));
    if r.iter().all(|x| x.is_zero()) {
        Ok(ZeroTest { is_zero: true, residual: None })
    } else {
        Ok(ZeroTest { is_zero: false, residual: Some(DifferentialForm { alg: w.alg.clone(), degree: w.degree, coeffs: idx.split(&r, w.alg.ring(), slots(w.alg.arity(), w.degree)) }) })
    }
}

/// `{a : deg a ≤ D, da = 0}` computed by linear algebra.
#[derive(Clone, Debug, Serialize)]
pub struct TruncatedKernel {
    pub degree: u32,
    /// Normal forms in reduced echelon shape over the standard monomials.
    #[serde(serialize_with = "crate::derham::ser_polys")]
    pub basis: Vec<Polynomial>,
    /// Dimension unchanged from `D − 1` to `D` (a heuristic, not a proof).
    pub stabilized: bool,
    /// False over prime fields, where the kernel is not `π₀`.
    pub pi0_interpretation: bool,
}

pub(crate) fn ser_polys<S: serde::Serializer>(ps: &[Polynomial], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.to_string()))
}

impl TruncatedKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn kernel_at(a: &Algebra, d: u32) -> Result<Vec<Polynomial>> {
    let std = a.standard_monomials(d)?;
    let k = kaehler(a);
    let gens = spanning_multiples(&k, 1, d + 2)?;
    let diffs: Vec<DifferentialForm> = std
        .iter()
        .map(|m| universal_derivation(a, &Polynomial::monomial(a.ring(), m.clone(), a.field().one())))
        .collect::<Result<_>>()?;
    let mut idx = CoordIndex::default();
    for w in diffs.iter().chain(&gens) {
        idx.register(&w.coeffs);
    }
    let field = a.field();
    let cols = std.len() + gens.len();
    guard_size(a, cols.max(idx.len()))?;
    let columns: Vec<Vector> = diffs.iter().chain(&gens).map(|w| idx.dense(&w.coeffs, field)).collect();
    let matrix: Vec<Vector> =
        (0..idx.len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let mut alphas: Vec<Vector> = if matrix.is_empty() {
        (0..std.len())
            .map(|i| (0..std.len()).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect()
    } else {
        linalg::kernel(&matrix, cols, field).into_iter().map(|v| v[..std.len()].to_vec()).collect()
    };
    let rank = linalg::rref(&mut alphas, field).len();
    alphas.truncate(rank);
    let mut out: Vec<Polynomial> = alphas.iter().map(|v| from_coordinates(a.ring(), &std, v)).collect();
    let order = a.ring().order();
    out.sort_by(|p, q| match (p.leading_monomial(), q.leading_monomial()) {
        (Some(x), Some(y)) => order.cmp(x, y),
        _ => p.is_zero().cmp(&q.is_zero()),
    });
    Ok(out)
}

pub fn derham_h0(a: &Algebra, d: u32) -> Result<TruncatedKernel> {
    let basis = kernel_at(a, d)?;
    let stabilized = d > 0 && kernel_at(a, d - 1)?.len() == basis.len();
    // closure under products that stay inside the degree window
    let std = a.standard_monomials(d)?;
    let mut span = Echelon::new(a.field(), std.len());
    for b in &basis {
        span.insert(&coordinates_of(b, &std)?);
    }
    for (i, b) in basis.iter().enumerate() {
        for c in &basis[i..] {
            let prod = a.nf(&b.mul(c))?;
            if prod.total_degree().unwrap_or(0) <= d && !span.contains(&coordinates_of(&prod, &std)?) {
                return Err(Error::property("kernel closed under products", format!("({b})*({c}) = {prod}")));
            }
        }
    }
    Ok(TruncatedKernel { degree: d, basis, stabilized, pi0_interpretation: a.field().is_rational() })
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct IntegrationReport {
    pub functions_checked: usize,
    pub one_forms_checked: usize,
}

fn integrate_coeff(p: &Polynomial, x: usize, base: &Algebra) -> Result<Polynomial> {
    let f = base.field();
    let n = base.arity();
    let mut acc = base.zero();
    for (m, c) in p.terms() {
        let k = m.exp(x) as i64;
        let denom = f.from_i64(k + 1);
        if denom.is_zero() {
            return Err(Error::UnsupportedField(format!("{f} cannot divide by {}", k + 1)));
        }
        let rest = Monomial::from_exps(m.exps()[..n].to_vec());
        acc = acc.add(&Polynomial::monomial(base.ring(), rest, c.div(&denom)));
    }
    base.nf(&acc)
}

fn restrict(p: &Polynomial, base: &Algebra, c: i64) -> Result<Polynomial> {
    let n = base.arity();
    let mut ims: Vec<Polynomial> = (0..n).map(|i| base.var(i)).collect();
    ims.push(Polynomial::from_i64(base.ring(), c));
    base.nf(&p.substitute(&ims, base.ring()))
}

/// `φ¹`: integrate the `dx` coefficient over `[0, 1]`.
pub fn phi1(ext: &PolyExtension, w: &DifferentialForm) -> Result<Polynomial> {
    integrate_coeff(&w.coeffs[ext.x], ext.x, &ext.base)
}

/// `φ²(dx ∧ x^k ω) = ω/(k+1)`, zero on forms without `dx`.
pub fn phi2(ext: &PolyExtension, w: &DifferentialForm) -> Result<DifferentialForm> {
    let n = ext.base.arity();
    let coeffs = (0..n)
        .map(|i| integrate_coeff(&w.coeff2(ext.x, i), ext.x, &ext.base))
        .collect::<Result<Vec<_>>>()?;
    DifferentialForm::new(&ext.base, 1, coeffs)
}

/// `p₁ − p₀` on a 1-form of `A[x]`: `dx` restricts to zero.
fn endpoint_difference(ext: &PolyExtension, w: &DifferentialForm) -> Result<DifferentialForm> {
    let n = ext.base.arity();
    let coeffs = (0..n)
        .map(|i| Ok(restrict(&w.coeffs[i], &ext.base, 1)?.sub(&restrict(&w.coeffs[i], &ext.base, 0)?)))
        .collect::<Result<Vec<_>>>()?;
    DifferentialForm::new(&ext.base, 1, coeffs)
}

/// Checks `(p₁ − p₀)a = φ¹(da)` and `(p₁ − p₀)ω = φ²(dω) + dφ¹(ω)`.
pub fn integration_homotopy_check(
    ext: &PolyExtension,
    functions: &[Polynomial],
    one_forms: &[DifferentialForm],
    slack: u32,
) -> Result<IntegrationReport> {
    let mut report = IntegrationReport::default();
    for a in functions {
        let lhs = restrict(a, &ext.base, 1)?.sub(&restrict(a, &ext.base, 0)?);
        let rhs = phi1(ext, &universal_derivation(&ext.alg, a)?)?;
        if !ext.base.equal(&lhs, &rhs)? {
            return Err(Error::property("(p1 - p0)a = phi1(da)", format!("a = {a}: {lhs} vs {rhs}")));
        }
        report.functions_checked += 1;
    }
    for w in one_forms {
        PolyRing::check_same(w.alg.ring(), ext.alg.ring())?;
        if w.degree != 1 {
            return Err(Error::invalid("integration samples must be 1-forms"));
        }
        let lhs = endpoint_difference(ext, w)?;
        let rhs = phi2(ext, &exterior_derivative(w)?)?.add(&universal_derivation(&ext.base, &phi1(ext, w)?)?)?;
        let diff = lhs.sub(&rhs)?;
        let t = form_is_zero(&diff, slack)?;
        if !t.is_zero {
            return Err(Error::property(
                "(p1 - p0)w = phi2(dw) + d phi1(w)",
                format!("w = {w}: residual {}", t.residual.expect("residual")),
            ));
        }
        report.one_forms_checked += 1;
    }
    Ok(report)
}

/// Monomial samples `m·x^k` and `m·x^k·dz` for every coordinate `z` of `A[x]`.
pub fn integration_samples(ext: &PolyExtension, bdeg: u32, xdeg: u32) -> Result<(Vec<Polynomial>, Vec<DifferentialForm>)> {
    let base_std = ext.base.standard_monomials(bdeg)?;
    let mut fns = Vec::new();
    let mut forms = Vec::new();
    for m in &base_std {
        for k in 0..=xdeg {
            let mono = m.concat(&Monomial::from_exps(vec![k]));
            let p = Polynomial::monomial(ext.alg.ring(), mono, ext.alg.field().one());
            for i in 0..ext.alg.arity() {
                forms.push(DifferentialForm::dx(&ext.alg, i).times(&p)?);
            }
            fns.push(p);
        }
    }
    Ok((fns, forms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{polynomial_extension, AlgebraPresentation};
    use crate::poly::Field;

    fn alg(vars: &[&str], rels: &[&str]) -> Algebra {
        AlgebraPresentation::parse(Field::Rational, vars, rels).unwrap()
    }

    fn el(a: &Algebra, s: &str) -> Polynomial {
        a.parse_elem(s).unwrap()
    }

    #[test]
    fn derivation_examples() {
        let a = alg(&["x"], &[]);
        assert_eq!(universal_derivation(&a, &el(&a, "x^2")).unwrap().to_string(), "(2*x)*dx");
        assert!(universal_derivation(&a, &a.one()).unwrap().is_trivially_zero());
        let e = alg(&["e"], &["e^2 - e"]);
        let de = universal_derivation(&e, &el(&e, "e")).unwrap();
        assert_eq!(de.to_string(), "(1)*de");
        assert_eq!(kaehler(&e).rows[0][0].to_string(), "2*e - 1");
        assert!(form_is_zero(&de, 2).unwrap().is_zero);
        let t = form_is_zero(&DifferentialForm::dx(&a, 0), 4).unwrap();
        assert!(!t.is_zero && t.residual.is_some());
        let c = alg(&["x"], &["x^3 - x"]);
        let row = DifferentialForm::new(&c, 1, vec![el(&c, "3*x^2 - 1")]).unwrap();
        assert!(form_is_zero(&row, 0).unwrap().is_zero);
    }

    #[test]
    fn exterior_examples() {
        let a = alg(&["x", "y"], &[]);
        let ydx = DifferentialForm::new(&a, 1, vec![el(&a, "y"), a.zero()]).unwrap();
        assert_eq!(exterior_derivative(&ydx).unwrap().to_string(), "(-1)*dx^dy");
        let dd = exterior_derivative(&universal_derivation(&a, &el(&a, "x^2*y")).unwrap()).unwrap();
        assert!(dd.is_trivially_zero());
        let xdx = DifferentialForm::new(&a, 1, vec![el(&a, "x"), a.zero()]).unwrap();
        assert!(exterior_derivative(&xdx).unwrap().is_trivially_zero());
        assert_eq!(pair_index(4, 0, 1), 0);
        assert_eq!(pair_index(4, 2, 3), 5);
    }

    #[test]
    fn dd_vanishes_in_quotients() {
        let a = alg(&["x", "y"], &["x^2 + y^2 - 1"]);
        for s in ["x*y", "x^3 - y", "y^4*x"] {
            let dd = exterior_derivative(&universal_derivation(&a, &el(&a, s)).unwrap()).unwrap();
            assert!(form_is_zero(&dd, 3).unwrap().is_zero, "{s}");
        }
    }

    #[test]
    fn h0_examples() {
        let line = derham_h0(&alg(&["x"], &[]), 4).unwrap();
        assert_eq!(line.basis, vec![Polynomial::one(line.basis[0].ring())]);
        assert!(line.stabilized);
        let three = derham_h0(&alg(&["x"], &["x^3 - x"]), 2).unwrap();
        assert_eq!(three.dim(), 3);
        let node = derham_h0(&alg(&["x", "y"], &["x*y"]), 4).unwrap();
        assert_eq!(node.dim(), 1);
        let e = derham_h0(&alg(&["e"], &["e^2 - e"]), 1).unwrap();
        assert_eq!(e.dim(), 2);
        let fp = derham_h0(&AlgebraPresentation::parse(Field::Prime(3), &["x"], &[]).unwrap(), 3).unwrap();
        // x^3 has zero derivative in characteristic 3
        assert_eq!(fp.dim(), 2);
        assert!(!fp.pi0_interpretation);
    }

    #[test]
    fn integration_identities() {
        let ext = polynomial_extension(&alg(&["y"], &[])).unwrap();
        let a = el(&ext.alg, "y*x^2 + x");
        let da = universal_derivation(&ext.alg, &a).unwrap();
        assert_eq!(phi1(&ext, &da).unwrap().to_string(), "y + 1");
        let (fns, forms) = integration_samples(&ext, 3, 6).unwrap();
        let r = integration_homotopy_check(&ext, &fns, &forms, 2).unwrap();
        assert_eq!(r.functions_checked, 28);
        assert_eq!(r.one_forms_checked, 56);
        let c = polynomial_extension(&alg(&["x"], &["x^3 - x"])).unwrap();
        let (fns, forms) = integration_samples(&c, 2, 3).unwrap();
        integration_homotopy_check(&c, &fns, &forms, 3).unwrap();
    }

    #[test]
    fn integration_needs_invertible_denominators() {
        let f3 = AlgebraPresentation::parse(Field::Prime(3), &["y"], &[]).unwrap();
        let ext = polynomial_extension(&f3).unwrap();
        let w = DifferentialForm::dx(&ext.alg, ext.x).times(&el(&ext.alg, "x^2")).unwrap();
        assert!(matches!(integration_homotopy_check(&ext, &[], &[w], 1), Err(Error::UnsupportedField(_))));
        let ok = el(&ext.alg, "x");
        integration_homotopy_check(&ext, &[ok], &[], 1).unwrap();
    }
}
