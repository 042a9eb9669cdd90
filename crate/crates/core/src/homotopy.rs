//! Elementary and chain homotopies `A → B[x]`: verification, bounded
//! search, constancy certificates and the `p0`/`p1` invariance harness.

use serde::Serialize;

use crate::algebra::{compose, polynomial_extension, Algebra, AlgebraMorphism, PolyExtension};
use crate::error::{Error, Result};
use crate::mapspace::{mapspace_presentation, morphism_of_point, MapSpace, Truncation};
use crate::par::{self, Exec};
use crate::poly::{field_solutions, Field, Monomial, PolyRing, Polynomial, Scalar};

/// `H: A → B[x]` with `p0 H = f` and `p1 H = g`.
#[derive(Clone, Debug)]
pub struct ElementaryHomotopy {
    pub f: AlgebraMorphism,
    pub g: AlgebraMorphism,
    pub h: AlgebraMorphism,
}

impl ElementaryHomotopy {
    /// The reversed certificate `flip ∘ H` from `g` to `f`.
    pub fn reversed(&self) -> Result<ElementaryHomotopy> {
        let t = self.h.target();
        let n = t.arity() - 1;
        let mut ims: Vec<Polynomial> = (0..n).map(|i| t.var(i)).collect();
        ims.push(t.one().sub(&t.var(n)));
        let flip = AlgebraMorphism::check(t, t, ims)?;
        homotopy_verify(&self.g, &self.f, &compose(&flip, &self.h)?)
    }
}

/// `x ↦ c` on a presentation of `B[x]` whose last variable is `x`.
pub fn endpoint_map(bx: &Algebra, b: &Algebra, c: i64) -> Result<AlgebraMorphism> {
    let n = b.arity();
    if bx.arity() != n + 1 || bx.vars()[..n] != *b.vars() || bx.field() != b.field() {
        return Err(Error::RingMismatch(format!(
            "homotopy target [{}] is not [{}] plus one variable",
            bx.vars().join(","),
            b.vars().join(",")
        )));
    }
    let mut ims: Vec<Polynomial> = (0..n).map(|i| b.var(i)).collect();
    ims.push(Polynomial::from_i64(b.ring(), c));
    AlgebraMorphism::check(bx, b, ims)
}

pub fn homotopy_verify(f: &AlgebraMorphism, g: &AlgebraMorphism, h: &AlgebraMorphism) -> Result<ElementaryHomotopy> {
    if !f.same_algebras(g) {
        return Err(Error::RingMismatch("f and g must share source and target".into()));
    }
    if !PolyRing::same(h.source().ring(), f.source().ring()) {
        return Err(Error::RingMismatch("H must start at the common source".into()));
    }
    // re-validates H against its own presentation
    let h = AlgebraMorphism::check(h.source(), h.target(), h.images().to_vec())?;
    for (k, want) in [(0u8, f), (1u8, g)] {
        let got = compose(&endpoint_map(h.target(), f.target(), k as i64)?, &h)?;
        if !got.equals(want) {
            let detail = format!("p{k}∘H = [{}], expected [{}]", got.image_strings().join(", "), want.image_strings().join(", "));
            return Err(Error::EndpointMismatch { endpoint: k, detail });
        }
    }
    Ok(ElementaryHomotopy { f: f.clone(), g: g.clone(), h })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Degree in the homotopy variable.
    pub xdeg: u32,
    /// Degree of the `B`-coefficients.
    pub bdeg: u32,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(ElementaryHomotopy),
    /// No homotopy exists within the bounds.
    NoneWithinBounds,
    /// The method could not decide (ℚ systems without an exact solution path).
    Undecided(String),
}

impl SearchOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::NoneWithinBounds => "none-within-bounds",
            SearchOutcome::Undecided(_) => "undecided",
        }
    }
}

struct Setup {
    ext: PolyExtension,
    ms: MapSpace,
    /// `(generator, B-monomial index)` blocks of z-variables `x^0..x^xdeg`.
    blocks: Vec<Vec<usize>>,
    starts: Vec<Scalar>,
    ends: Vec<Scalar>,
}

fn setup(f: &AlgebraMorphism, g: &AlgebraMorphism, bounds: SearchBounds) -> Result<Option<Setup>> {
    let b = f.target();
    let ext = polynomial_extension(b)?;
    let std = b.standard_monomials(bounds.bdeg)?;
    let xpow = |k: u32| Monomial::from_exps(vec![k]);
    let delta: Vec<Monomial> =
        std.iter().flat_map(|v| (0..=bounds.xdeg).map(move |k| v.concat(&xpow(k)))).collect();
    let a = f.source();
    let ms = mapspace_presentation(a, &ext.alg, &Truncation::per_generator(vec![delta; a.arity()]))?;
    let mut blocks = Vec::new();
    let mut starts = Vec::new();
    let mut ends = Vec::new();
    for i in 0..a.arity() {
        for (im, out) in [(&f.images()[i], &mut starts), (&g.images()[i], &mut ends)] {
            if im.terms().iter().any(|(m, _)| !std.contains(m)) {
                return Ok(None);
            }
            out.extend(std.iter().map(|v| im.coefficient(v)));
        }
        for v in &std {
            blocks.push((0..=bounds.xdeg).map(|k| ms.zvar(i, &v.concat(&xpow(k))).expect("own variable")).collect());
        }
    }
    Ok(Some(Setup { ext, ms, blocks, starts, ends }))
}

pub fn homotopy_search(f: &AlgebraMorphism, g: &AlgebraMorphism, bounds: SearchBounds) -> Result<SearchOutcome> {
    homotopy_search_with(f, g, bounds, Exec::best())
}

pub fn homotopy_search_with(
    f: &AlgebraMorphism,
    g: &AlgebraMorphism,
    bounds: SearchBounds,
    exec: Exec,
) -> Result<SearchOutcome> {
    if !f.same_algebras(g) {
        return Err(Error::RingMismatch("f and g must share source and target".into()));
    }
    let Some(s) = setup(f, g, bounds)? else {
        return Ok(SearchOutcome::NoneWithinBounds);
    };
    let point = match f.source().field() {
        Field::Prime(p) => search_prime(&s, p, bounds.xdeg, exec)?,
        Field::Rational => match search_rational(&s)? {
            Ok(pt) => pt,
            Err(reason) => return Ok(SearchOutcome::Undecided(reason)),
        },
    };
    match point {
        None => Ok(SearchOutcome::NoneWithinBounds),
        Some(pt) => {
            let h = morphism_of_point(&s.ms, &pt)?;
            let h = AlgebraMorphism::check(f.source(), &s.ext.alg, h.images().to_vec())?;
            Ok(SearchOutcome::Found(homotopy_verify(f, g, &h)?))
        }
    }
}

fn search_prime(s: &Setup, p: u64, xdeg: u32, exec: Exec) -> Result<Option<Vec<Scalar>>> {
    let field = Field::Prime(p);
    if xdeg == 0 {
        if s.starts != s.ends {
            return Ok(None);
        }
        let mut pt = vec![field.zero(); s.ms.arity()];
        for (blk, c) in s.blocks.iter().zip(&s.starts) {
            pt[blk[0]] = c.clone();
        }
        return Ok(s.ms.j().iter().all(|r| r.eval(&pt).is_zero()).then_some(pt));
    }
    let free_per = (xdeg - 1) as usize;
    let nfree = free_per * s.blocks.len();
    let total = crate::algebra::points::candidate_count(p, nfree, s.ms.alg.ring().guards().max_enumeration)?;
    let j = s.ms.j();
    Ok(par::find_first_range(exec, total, |k| {
        let ds = crate::algebra::points::digits(k, p, nfree);
        let mut pt = vec![field.zero(); s.ms.arity()];
        for (bi, blk) in s.blocks.iter().enumerate() {
            let start = &s.starts[bi];
            pt[blk[0]] = start.clone();
            let mut rest = s.ends[bi].sub(start);
            for (t, &z) in blk[1..xdeg as usize].iter().enumerate() {
                let c = Scalar::Fp(ds[bi * free_per + t], p);
                rest = rest.sub(&c);
                pt[z] = c;
            }
            pt[blk[xdeg as usize]] = rest;
        }
        j.iter().all(|r| r.eval(&pt).is_zero()).then_some(pt)
    }))
}

/// `Ok(Some)` found, `Ok(None)` certified empty, `Err(reason)` undecided.
fn search_rational(s: &Setup) -> Result<std::result::Result<Option<Vec<Scalar>>, String>> {
    let ring = s.ms.alg.ring();
    let mut system: Vec<Polynomial> = s.ms.j().to_vec();
    for (bi, blk) in s.blocks.iter().enumerate() {
        let z0 = Polynomial::var(ring, blk[0]);
        system.push(z0.sub(&Polynomial::constant(ring, s.starts[bi].clone())));
        let sum = blk.iter().fold(Polynomial::zero(ring), |acc, &z| acc.add(&Polynomial::var(ring, z)));
        system.push(sum.sub(&Polynomial::constant(ring, s.ends[bi].clone())));
    }
    let sol = field_solutions(&system, ring, 1)?;
    if let Some(pt) = sol.points.into_iter().next() {
        return Ok(Ok(Some(pt)));
    }
    if sol.inconsistent || sol.complete {
        return Ok(Ok(None));
    }
    Ok(Err("no rational point found by exact back-substitution; the system is not decided".into()))
}

/// `f = h_0 ≈ h_1 ≈ … ≈ h_n = g`.
#[derive(Clone, Debug)]
pub struct HomotopyChain {
    pub points: Vec<AlgebraMorphism>,
    pub links: Vec<AlgebraMorphism>,
}

pub fn chain_verify(chain: &HomotopyChain) -> Result<Vec<ElementaryHomotopy>> {
    if chain.points.is_empty() || chain.links.len() + 1 != chain.points.len() {
        return Err(Error::invalid("a chain needs n links between n+1 morphisms"));
    }
    chain
        .links
        .iter()
        .enumerate()
        .map(|(k, h)| {
            homotopy_verify(&chain.points[k], &chain.points[k + 1], h)
                .map_err(|e| Error::ChainLink { link: k, detail: e.to_string() })
        })
        .collect()
}

/// Two searches glued at a proposed midpoint.
pub fn chain_through(
    f: &AlgebraMorphism,
    mid: &AlgebraMorphism,
    g: &AlgebraMorphism,
    bounds: SearchBounds,
) -> Result<Option<HomotopyChain>> {
    let mut links = Vec::new();
    for (a, b) in [(f, mid), (mid, g)] {
        match homotopy_search(a, b, bounds)? {
            SearchOutcome::Found(h) => links.push(h.h),
            _ => return Ok(None),
        }
    }
    let chain = HomotopyChain { points: vec![f.clone(), mid.clone(), g.clone()], links };
    chain_verify(&chain)?;
    Ok(Some(chain))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstancyMode {
    /// `p^k = p` with `char ∤ k − 1`.
    Power(u32),
    /// `q(p) = 0` for `q` with coefficients lowest first; the caller asserts
    /// that `C` has no nonzero nilpotents.
    Integral(Vec<Scalar>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Constancy {
    Constant(Polynomial),
    /// Highest nonzero power of `x` and its coefficient.
    NonConstant { power: u32, coefficient: Polynomial },
}

/// Applies the constancy lemma to `p ∈ C[x]` (`x` the last variable of `cx`).
pub fn constancy_check(cx: &Algebra, p: &Polynomial, mode: &ConstancyMode) -> Result<Constancy> {
    PolyRing::check_same(p.ring(), cx.ring())?;
    if cx.arity() == 0 {
        return Err(Error::invalid("C[x] needs the variable x"));
    }
    let p = cx.nf(p)?;
    match mode {
        ConstancyMode::Power(k) => {
            if *k < 2 {
                return Err(Error::Hypothesis("power mode needs k ≥ 2".into()));
            }
            let ch = cx.field().characteristic();
            if ch != 0 && (*k as u64 - 1) % ch == 0 {
                return Err(Error::Hypothesis(format!("characteristic {ch} divides k - 1 = {}", k - 1)));
            }
            if !cx.equal(&p.pow(*k), &p)? {
                return Err(Error::Hypothesis(format!("p^{k} ≠ p")));
            }
        }
        ConstancyMode::Integral(q) => {
            if q.iter().all(|c| c.is_zero()) {
                return Err(Error::Hypothesis("the vanishing polynomial must be nonzero".into()));
            }
            let mut acc = cx.zero();
            for c in q.iter().rev() {
                acc = acc.mul(&p).add(&Polynomial::constant(cx.ring(), c.clone()));
            }
            if !cx.nf(&acc)?.is_zero() {
                return Err(Error::Hypothesis("p is not a root of the given polynomial".into()));
            }
        }
    }
    let xi = cx.arity() - 1;
    let top = p.degree_in(xi);
    let coefficient_of = |k: u32| {
        Polynomial::from_terms(
            cx.ring(),
            p.terms().iter().filter(|(m, _)| m.exp(xi) == k).map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e[xi] = 0;
                (Monomial::from_exps(e), c.clone())
            }),
        )
    };
    if top == 0 {
        Ok(Constancy::Constant(p))
    } else {
        Ok(Constancy::NonConstant { power: top, coefficient: coefficient_of(top) })
    }
}

/// The invariant computed on `A[x]` by the invariance harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hook {
    Pi0,
    DerhamH0,
    SingH0,
}

impl std::str::FromStr for Hook {
    type Err = Error;

    fn from_str(s: &str) -> Result<Hook> {
        match s {
            "pi0" => Ok(Hook::Pi0),
            "derham" | "derham_h0" => Ok(Hook::DerhamH0),
            "sing" | "sing_h0" => Ok(Hook::SingH0),
            _ => Err(Error::invalid(format!("unknown invariant '{s}' (pi0, derham_h0, sing_h0)"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub hook: Hook,
    pub degree: u32,
    /// Spanning set of the invariant of `A[x]`.
    pub spanning_set: Vec<String>,
    /// Common value of `p0` and `p1` on each spanning element.
    pub images: Vec<String>,
}

/// Computes the chosen invariant of `A[x]` in degrees ≤ `degree` and checks
/// that `p0` and `p1` agree on each element of its spanning set.
pub fn p0p1_invariance_harness(a: &Algebra, hook: Hook, degree: u32, tower: u32) -> Result<InvarianceReport> {
    let ext = polynomial_extension(a)?;
    let span = match hook {
        Hook::Pi0 => crate::pi0::equalizer_subspace(&ext.alg, degree, tower)?.basis,
        Hook::DerhamH0 => crate::derham::derham_h0(&ext.alg, degree)?.basis,
        Hook::SingH0 => crate::simplicial::sing_h0(&ext.alg, tower, degree)?.basis,
    };
    let mut images = Vec::with_capacity(span.len());
    for b in &span {
        let (l, r) = (ext.p0.apply(b)?, ext.p1.apply(b)?);
        if !a.equal(&l, &r)? {
            return Err(Error::property("p0 and p1 agree on the invariant", format!("{b}: {l} vs {r}")));
        }
        images.push(l.to_string());
    }
    Ok(InvarianceReport { hook, degree, spanning_set: span.iter().map(|p| p.to_string()).collect(), images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;

    fn alg(f: Field, vars: &[&str], rels: &[&str]) -> Algebra {
        AlgebraPresentation::parse(f, vars, rels).unwrap()
    }

    fn bx(b: &Algebra) -> Algebra {
        polynomial_extension(b).unwrap().alg
    }

    #[test]
    fn verify_line_homotopy() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &[]);
        let b = alg(q, &["u"], &[]);
        let f = AlgebraMorphism::parse(&a, &b, &["0"]).unwrap();
        let g = AlgebraMorphism::parse(&a, &b, &["u"]).unwrap();
        let h = AlgebraMorphism::parse(&a, &bx(&b), &["u*x"]).unwrap();
        let eh = homotopy_verify(&f, &g, &h).unwrap();
        let back = eh.reversed().unwrap();
        assert_eq!(back.h.image_strings(), vec!["-u*x + u"]);
        let g2 = AlgebraMorphism::parse(&a, &b, &["2*u"]).unwrap();
        assert!(matches!(homotopy_verify(&f, &g2, &h), Err(Error::EndpointMismatch { endpoint: 1, .. })));
        let c = AlgebraMorphism::parse(&a, &bx(&b), &["0"]).unwrap();
        homotopy_verify(&f, &f, &c).unwrap();
    }

    #[test]
    fn search_free_source() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &[]);
        let b = alg(q, &["u"], &[]);
        let f = AlgebraMorphism::parse(&a, &b, &["0"]).unwrap();
        let g = AlgebraMorphism::parse(&a, &b, &["u"]).unwrap();
        match homotopy_search(&f, &g, SearchBounds { xdeg: 1, bdeg: 1 }).unwrap() {
            SearchOutcome::Found(h) => assert_eq!(h.h.image_strings(), vec!["u*x"]),
            other => panic!("{}", other.tag()),
        }
        assert!(matches!(
            homotopy_search(&f, &g, SearchBounds { xdeg: 0, bdeg: 1 }).unwrap(),
            SearchOutcome::NoneWithinBounds
        ));
        assert!(matches!(homotopy_search(&f, &f, SearchBounds { xdeg: 0, bdeg: 0 }).unwrap(), SearchOutcome::Found(_)));
    }

    #[test]
    fn idempotent_endpoints_are_not_homotopic() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &["t^2 - t"]);
        let b = AlgebraPresentation::ground(q);
        let f = AlgebraMorphism::parse(&a, &b, &["0"]).unwrap();
        let g = AlgebraMorphism::parse(&a, &b, &["1"]).unwrap();
        for xdeg in 0..=3 {
            let r = homotopy_search(&f, &g, SearchBounds { xdeg, bdeg: 2 }).unwrap();
            assert!(matches!(r, SearchOutcome::NoneWithinBounds), "xdeg {xdeg}: {}", r.tag());
        }
    }

    #[test]
    fn prime_field_search_and_symmetry() {
        let f3 = Field::Prime(3);
        let a = alg(f3, &["t"], &["t^2 - t"]);
        let b = alg(f3, &["u"], &["u^2"]);
        // t ↦ 0 and t ↦ 0 through u·x nilpotent paths; t ↦ u is not idempotent
        let f = AlgebraMorphism::parse(&a, &b, &["0"]).unwrap();
        let r = homotopy_search_with(&f, &f, SearchBounds { xdeg: 2, bdeg: 1 }, Exec::Sequential).unwrap();
        assert!(matches!(r, SearchOutcome::Found(_)));
        let free = alg(f3, &["t"], &[]);
        let f = AlgebraMorphism::parse(&free, &b, &["1"]).unwrap();
        let g = AlgebraMorphism::parse(&free, &b, &["u"]).unwrap();
        let SearchOutcome::Found(h) = homotopy_search_with(&f, &g, SearchBounds { xdeg: 2, bdeg: 1 }, Exec::Parallel).unwrap() else {
            panic!("expected a homotopy")
        };
        let SearchOutcome::Found(_) = homotopy_search(&g, &f, SearchBounds { xdeg: 2, bdeg: 1 }).unwrap() else {
            panic!("symmetric search failed")
        };
        h.reversed().unwrap();
        let one = AlgebraMorphism::parse(&a, &b, &["1"]).unwrap();
        let zero = AlgebraMorphism::parse(&a, &b, &["0"]).unwrap();
        assert!(matches!(
            homotopy_search(&zero, &one, SearchBounds { xdeg: 3, bdeg: 1 }).unwrap(),
            SearchOutcome::NoneWithinBounds
        ));
    }

    #[test]
    fn chains() {
        let q = Field::Rational;
        let a = alg(q, &["t"], &[]);
        let b = alg(q, &["u"], &[]);
        let f = AlgebraMorphism::parse(&a, &b, &["0"]).unwrap();
        let m = AlgebraMorphism::parse(&a, &b, &["u"]).unwrap();
        let g = AlgebraMorphism::parse(&a, &b, &["u^2"]).unwrap();
        let c = chain_through(&f, &m, &g, SearchBounds { xdeg: 1, bdeg: 2 }).unwrap().unwrap();
        assert_eq!(chain_verify(&c).unwrap().len(), 2);
        let single = HomotopyChain { points: vec![f.clone()], links: vec![] };
        assert!(chain_verify(&single).unwrap().is_empty());
        let broken = HomotopyChain { points: vec![f.clone(), g.clone(), m.clone()], links: c.links.clone() };
        assert!(matches!(chain_verify(&broken), Err(Error::ChainLink { link: 0, .. })));
    }

    #[test]
    fn constancy_modes() {
        let q = Field::Rational;
        let c = alg(q, &["e"], &["e^2 - e"]);
        let cx = bx(&c);
        let e = cx.parse_elem("e").unwrap();
        assert_eq!(constancy_check(&cx, &e, &ConstancyMode::Power(2)).unwrap(), Constancy::Constant(e.clone()));
        let free = bx(&AlgebraPresentation::ground(q));
        let x = free.parse_elem("x").unwrap();
        assert!(matches!(constancy_check(&free, &x, &ConstancyMode::Power(2)), Err(Error::Hypothesis(_))));
        let f2 = Field::Prime(2);
        let c2 = bx(&alg(f2, &["e"], &["e^2 - e"]));
        let e2 = c2.parse_elem("e").unwrap();
        assert!(matches!(constancy_check(&c2, &e2, &ConstancyMode::Power(3)), Err(Error::Hypothesis(_))));
        assert!(constancy_check(&c2, &e2, &ConstancyMode::Power(2)).is_ok());
        let minus = ConstancyMode::Integral(vec![q.zero(), q.from_i64(-1), q.one()]);
        assert!(matches!(constancy_check(&cx, &e, &minus).unwrap(), Constancy::Constant(_)));
        // dual numbers have nilpotents: u·x is a root of t^2 yet not constant
        let d = bx(&alg(q, &["u"], &["u^2"]));
        let ux = d.parse_elem("u*x").unwrap();
        let sq = ConstancyMode::Integral(vec![q.zero(), q.zero(), q.one()]);
        assert_eq!(
            constancy_check(&d, &ux, &sq).unwrap(),
            Constancy::NonConstant { power: 1, coefficient: d.parse_elem("u").unwrap() }
        );
    }

    #[test]
    fn invariance_harness() {
        let q = Field::Rational;
        let e = alg(q, &["e"], &["e^2 - e"]);
        let rep = p0p1_invariance_harness(&e, Hook::Pi0, 2, 2).unwrap();
        assert_eq!(rep.spanning_set.len(), 2);
        let ground = crate::algebra::AlgebraPresentation::ground(q);
        for hook in [Hook::Pi0, Hook::DerhamH0, Hook::SingH0] {
            assert_eq!(p0p1_invariance_harness(&ground, hook, 2, 1).unwrap().spanning_set, vec!["1"]);
        }
        let c = alg(q, &["x"], &["x^3 - x"]);
        assert_eq!(p0p1_invariance_harness(&c, Hook::DerhamH0, 3, 1).unwrap().spanning_set.len(), 3);
        assert!("cech".parse::<Hook>().is_err());
    }
}
