//! The standard simplicial algebra `F[Δ]`, the cosimplicial algebra
//! `M(A, F[Δ])` on truncations, Moore complexes, degree-zero singular
//! cohomology, cup products and prism maps.

use serde::Serialize;

use crate::algebra::{
    compose, coordinates_of, polynomial_extension, Algebra, AlgebraMorphism, AlgebraPresentation, PolyExtension,
};
use crate::derham::ser_polys;
use crate::error::{Error, Result};
use crate::mapspace::{functor_action, uniform_mapspace, MapSpace};
use crate::poly::coords::{kernel_elements, rehome};
use crate::poly::linalg::{self, Vector};
use crate::poly::{Field, Monomial, Polynomial};

/// `F[Δ_n]` as the free ring on `x1..xn`, with `x0 = 1 − Σ x_i`.
#[derive(Clone, Debug)]
pub struct DeltaLevel {
    pub n: usize,
    pub alg: Algebra,
}

impl DeltaLevel {
    /// The class of `x_i`, `0 ≤ i ≤ n`.
    pub fn coordinate(&self, i: usize) -> Polynomial {
        if i == 0 {
            (0..self.n).fold(self.alg.one(), |acc, k| acc.sub(&self.alg.var(k)))
        } else {
            self.alg.var(i - 1)
        }
    }
}

pub fn delta_algebra(field: Field, n: usize) -> Result<DeltaLevel> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    Ok(DeltaLevel { n, alg: AlgebraPresentation::free(field, &refs)? })
}

/// A monotone map `[n] → [m]`, stored as its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ordinal {
    pub values: Vec<usize>,
    pub target: usize,
}

impl Ordinal {
    pub fn new(values: Vec<usize>, target: usize) -> Result<Ordinal> {
        if values.is_empty() {
            return Err(Error::invalid("an ordinal map needs a nonempty source"));
        }
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > target) {
            return Err(Error::invalid(format!("{values:?} is not a monotone map into [{target}]")));
        }
        Ok(Ordinal { values, target })
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn identity(n: usize) -> Ordinal {
        Ordinal { values: (0..=n).collect(), target: n }
    }

    /// `δ^i: [n−1] → [n]`, skipping `i`.
    pub fn coface(n: usize, i: usize) -> Ordinal {
        Ordinal { values: (0..n).map(|j| if j < i { j } else { j + 1 }).collect(), target: n }
    }

    /// `σ^i: [n+1] → [n]`, hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Ordinal {
        Ordinal { values: (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect(), target: n }
    }

    /// `self ∘ o`.
    pub fn after(&self, o: &Ordinal) -> Ordinal {
        debug_assert_eq!(o.target, self.source());
        Ordinal { values: o.values.iter().map(|&j| self.values[j]).collect(), target: self.target }
    }
}

/// `α*: F[Δ_m] → F[Δ_n]`, `x_i ↦ Σ_{j ∈ α⁻¹(i)} x_j`.
pub fn simplicial_map(field: Field, alpha: &Ordinal) -> Result<AlgebraMorphism> {
    let src = delta_algebra(field, alpha.target)?;
    let dst = delta_algebra(field, alpha.source())?;
    let images = (1..=alpha.target)
        .map(|i| {
            alpha
                .values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == i)
                .fold(dst.alg.zero(), |acc, (j, _)| acc.add(&dst.coordinate(j)))
        })
        .collect();
    AlgebraMorphism::check(&src.alg, &dst.alg, images)
}

/// One instance of each cosimplicial identity family up to `top`, as pairs
/// of composites `(β₁∘α₁, β₂∘α₂)`.
fn identity_instances(top: usize) -> Vec<(&'static str, [Ordinal; 4])> {
    let mut out = Vec::new();
    for n in 1..=top {
        // δ^j δ^i = δ^i δ^{j−1}, i < j, maps [n−1] → [n+1]
        if n < top {
            for j in 0..=n + 1 {
                for i in 0..j {
                    out.push((
                        "coface-coface",
                        [Ordinal::coface(n + 1, j), Ordinal::coface(n, i), Ordinal::coface(n + 1, i), Ordinal::coface(n, j - 1)],
                    ));
                }
            }
        }
    }
    for n in 0..top {
        // σ^j σ^i = σ^i σ^{j+1}, i ≤ j, maps [n+2] → [n]
        if n + 2 <= top {
            for j in 0..=n {
                for i in 0..=j {
                    out.push((
                        "codegeneracy-codegeneracy",
                        [
                            Ordinal::codegeneracy(n, j),
                            Ordinal::codegeneracy(n + 1, i),
                            Ordinal::codegeneracy(n, i),
                            Ordinal::codegeneracy(n + 1, j + 1),
                        ],
                    ));
                }
            }
        }
        // σ^j δ^i on [n] → [n+1] → [n]
        if n + 1 <= top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = [Ordinal::codegeneracy(n, j), Ordinal::coface(n + 1, i)];
                    if i == j || i == j + 1 {
                        out.push(("codegeneracy-coface-identity", [lhs[0].clone(), lhs[1].clone(), Ordinal::identity(n), Ordinal::identity(n)]));
                    } else if n >= 1 && i < j {
                        out.push((
                            "codegeneracy-coface-below",
                            [lhs[0].clone(), lhs[1].clone(), Ordinal::coface(n, i), Ordinal::codegeneracy(n - 1, j - 1)],
                        ));
                    } else if n >= 1 {
                        out.push((
                            "codegeneracy-coface-above",
                            [lhs[0].clone(), lhs[1].clone(), Ordinal::coface(n, i - 1), Ordinal::codegeneracy(n - 1, j)],
                        ));
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: usize,
    pub families: Vec<String>,
}

/// Checks the cosimplicial identities for the maps `α ↦ α*` on `F[Δ_n]`,
/// `n ≤ top`, together with functoriality of the composites.
pub fn check_simplicial_identities(field: Field, top: usize) -> Result<IdentityReport> {
    let mut rep = IdentityReport::default();
    for (family, [b1, a1, b2, a2]) in identity_instances(top) {
        let l = b1.after(&a1);
        let r = b2.after(&a2);
        if l != r {
            return Err(Error::property(family, format!("{:?} vs {:?}", l.values, r.values)));
        }
        let lm = compose(&simplicial_map(field, &a1)?, &simplicial_map(field, &b1)?)?;
        let rm = compose(&simplicial_map(field, &a2)?, &simplicial_map(field, &b2)?)?;
        if !lm.equals(&rm) || !lm.equals(&simplicial_map(field, &l)?) {
            return Err(Error::property(family, format!("{:?}", l.values)));
        }
        rep.checked += 1;
        if !rep.families.iter().any(|f| f == family) {
            rep.families.push(family.to_string());
        }
    }
    Ok(rep)
}

/// The truncated cosimplicial algebra `n ↦ M_d(A, F[Δ_n])`, `n ≤ top`.
pub struct CosimplicialAlgebra {
    pub a: Algebra,
    pub tower: u32,
    levels: Vec<MapSpace>,
}

impl CosimplicialAlgebra {
    pub fn new(a: &Algebra, tower: u32, top: usize) -> Result<CosimplicialAlgebra> {
        let levels = (0..=top)
            .map(|n| uniform_mapspace(a, &delta_algebra(a.field(), n)?.alg, tower))
            .collect::<Result<_>>()?;
        Ok(CosimplicialAlgebra { a: a.clone(), tower, levels })
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &MapSpace {
        &self.levels[n]
    }

    /// `M(id, α*): M(A, F[Δ_n]) → M(A, F[Δ_m])` for `α: [n] → [m]`.
    pub fn induced(&self, alpha: &Ordinal) -> Result<AlgebraMorphism> {
        let (n, m) = (alpha.source(), alpha.target);
        if n > self.top() || m > self.top() {
            return Err(Error::invalid(format!("level above the computed top {}", self.top())));
        }
        let id = AlgebraMorphism::identity(&self.a);
        functor_action(&id, &simplicial_map(self.a.field(), alpha)?, &self.levels[n], &self.levels[m])
    }

    pub fn coface(&self, n: usize, i: usize) -> Result<AlgebraMorphism> {
        self.induced(&Ordinal::coface(n, i))
    }

    pub fn codegeneracy(&self, n: usize, i: usize) -> Result<AlgebraMorphism> {
        self.induced(&Ordinal::codegeneracy(n, i))
    }

    /// `A ≅ M(A, F[Δ_0])`, `a_i ↦ z_{a_i,1}`.
    pub fn level_zero(&self, p: &Polynomial) -> Result<Polynomial> {
        let ms = &self.levels[0];
        let one = Monomial::one(0);
        let map: Vec<usize> = (0..self.a.arity()).map(|i| ms.zvar(i, &one).expect("own variable")).collect();
        ms.alg.nf(&p.embed(ms.alg.ring(), &map))
    }

    /// `Σ (−1)^i d^i c` for `c` at level `n`.
    pub fn differential(&self, n: usize, c: &Polynomial) -> Result<Polynomial> {
        let mut acc = self.levels[n + 1].alg.zero();
        for i in 0..=n + 1 {
            let t = self.coface(n + 1, i)?.apply(c)?;
            acc = if i % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    /// Front face of `c` (level `n`) times back face of `c2` (level `m`).
    pub fn cup(&self, n: usize, c: &Polynomial, m: usize, c2: &Polynomial) -> Result<Polynomial> {
        let front = Ordinal { values: (0..=n).collect(), target: n + m };
        let back = Ordinal { values: (n..=n + m).collect(), target: n + m };
        let l = self.induced(&front)?.apply(c)?;
        let r = self.induced(&back)?.apply(c2)?;
        self.levels[n + m].alg.nf(&l.mul(&r))
    }

    /// The cosimplicial identities as equalities of induced morphisms.
    pub fn check_identities(&self) -> Result<IdentityReport> {
        let mut rep = IdentityReport::default();
        for (family, [b1, a1, b2, a2]) in identity_instances(self.top()) {
            let lm = compose(&self.induced(&b1)?, &self.induced(&a1)?)?;
            let rm = compose(&self.induced(&b2)?, &self.induced(&a2)?)?;
            if !lm.equals(&rm) {
                return Err(Error::property(family, format!("{:?} ∘ {:?}", b1.values, a1.values)));
            }
            rep.checked += 1;
            if !rep.families.iter().any(|f| f == family) {
                rep.families.push(family.to_string());
            }
        }
        Ok(rep)
    }
}

/// Matrix (rows = target coordinates) of `phi` between degree slices.
fn slice_matrix(phi: &AlgebraMorphism, src: &[Monomial], dst: &[Monomial]) -> Result<Vec<Vector>> {
    let ring = phi.source().ring();
    let field = ring.field();
    let cols: Vec<Vector> = src
        .iter()
        .map(|m| coordinates_of(&phi.apply(&Polynomial::monomial(ring, m.clone(), field.one()))?, dst))
        .collect::<Result<_>>()?;
    Ok((0..dst.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
}

fn columns_of(basis: &[Vector], dim: usize) -> Vec<Vector> {
    (0..dim).map(|r| basis.iter().map(|v| v[r].clone()).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MooreComplex {
    pub tower: u32,
    pub degree: u32,
    pub top: usize,
    /// Dimensions of the degree slices `V^n`.
    pub slice_dims: Vec<usize>,
    /// Dimensions of `N^n = ∩ ker s^i`.
    pub normalized_dims: Vec<usize>,
    /// `H^n` of the normalized complex for `n < top`.
    pub cohomology_dims: Vec<usize>,
    /// Number of `δδ = 0` checks performed.
    pub dd_checks: usize,
    pub identities: IdentityReport,
    pub label: &'static str,
}

pub fn moore_complex(a: &Algebra, tower: u32, degree: u32, top: usize) -> Result<MooreComplex> {
    if top == 0 {
        return Err(Error::invalid("the Moore complex needs at least levels 0 and 1"));
    }
    let cos = CosimplicialAlgebra::new(a, tower, top)?;
    let identities = cos.check_identities()?;
    let field = a.field();
    let slices: Vec<Vec<Monomial>> =
        (0..=top).map(|n| cos.level(n).alg.standard_monomials(degree)).collect::<Result<_>>()?;
    let dims: Vec<usize> = slices.iter().map(|s| s.len()).collect();
    // δ_n: V^n → V^{n+1}
    let mut deltas: Vec<Vec<Vector>> = Vec::new();
    for n in 0..top {
        let mut acc = vec![vec![field.zero(); dims[n]]; dims[n + 1]];
        for i in 0..=n + 1 {
            let m = slice_matrix(&cos.coface(n + 1, i)?, &slices[n], &slices[n + 1])?;
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    acc[r][c] = if i % 2 == 0 { acc[r][c].add(x) } else { acc[r][c].sub(x) };
                }
            }
        }
        deltas.push(acc);
    }
    let mut dd_checks = 0;
    for n in 0..top.saturating_sub(1) {
        let dd = linalg::mat_mul(&deltas[n + 1], &deltas[n], dims[n + 1], dims[n], field);
        if dd.iter().flatten().any(|x| !x.is_zero()) {
            return Err(Error::property("Moore differential squares to zero", format!("level {n}")));
        }
        dd_checks += 1;
    }
    // N^n as column vectors in V^n
    let mut normalized: Vec<Vec<Vector>> = Vec::new();
    for n in 0..=top {
        if n == 0 {
            normalized.push((0..dims[0]).map(|i| unit(field, dims[0], i)).collect());
            continue;
        }
        let mut stacked: Vec<Vector> = Vec::new();
        for i in 0..n {
            stacked.extend(slice_matrix(&cos.codegeneracy(n - 1, i)?, &slices[n], &slices[n - 1])?);
        }
        normalized.push(if stacked.is_empty() {
            (0..dims[n]).map(|i| unit(field, dims[n], i)).collect()
        } else {
            linalg::kernel(&stacked, dims[n], field)
        });
    }
    let mut cohomology_dims = Vec::new();
    let mut prev_rank = 0;
    for n in 0..top {
        let basis = &normalized[n];
        let img: Vec<Vector> = basis.iter().map(|v| linalg::mat_vec(&deltas[n], v, field)).collect();
        // δ maps the normalized part into the normalized part
        let mut check = normalized[n + 1].clone();
        let r0 = linalg::rank(&check, field);
        check.extend(img.iter().cloned());
        if linalg::rank(&check, field) != r0 {
            return Err(Error::property("δ preserves the normalized complex", format!("level {n}")));
        }
        let rank = linalg::rank(&columns_of(&img, dims[n + 1]), field);
        cohomology_dims.push(basis.len() - rank - prev_rank);
        prev_rank = rank;
    }
    Ok(MooreComplex {
        tower,
        degree,
        top,
        slice_dims: dims,
        normalized_dims: normalized.iter().map(|b| b.len()).collect(),
        cohomology_dims,
        dd_checks,
        identities,
        label: "truncation report; no pro-limit claim",
    })
}

fn unit(field: Field, n: usize, i: usize) -> Vector {
    (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SingH0 {
    pub tower: u32,
    pub degree: u32,
    /// Equalizer dimension of the two cofaces at each level `1..=tower`.
    pub level_dims: Vec<usize>,
    #[serde(serialize_with = "ser_polys")]
    pub basis: Vec<Polynomial>,
}

/// Equalizer of `d⁰, d¹: A → M_d(A, F[Δ_1])` on elements of degree ≤ `degree`.
pub fn sing_h0(a: &Algebra, tower: u32, degree: u32) -> Result<SingH0> {
    let std = a.standard_monomials(degree)?;
    let mut level_dims = Vec::new();
    let mut all: Vec<Vec<Polynomial>> = vec![Vec::new(); std.len()];
    for d in 1..=tower {
        let cos = CosimplicialAlgebra::new(a, d, 1)?;
        let (d0, d1) = (cos.coface(1, 0)?, cos.coface(1, 1)?);
        let images: Vec<Vec<Polynomial>> = std
            .iter()
            .map(|m| {
                let c = cos.level_zero(&Polynomial::monomial(a.ring(), m.clone(), a.field().one()))?;
                Ok(vec![d0.apply(&c)?.sub(&d1.apply(&c)?)])
            })
            .collect::<Result<_>>()?;
        level_dims.push(kernel_elements(a.ring(), &std, &images).len());
        for (acc, im) in all.iter_mut().zip(images) {
            acc.extend(im);
        }
    }
    let basis = kernel_elements(a.ring(), &std, &rehome(&all)?);
    Ok(SingH0 { tower, degree, level_dims, basis })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SingH1 {
    pub tower: u32,
    pub degree: u32,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub h1: usize,
    pub label: &'static str,
}

pub fn sing_h1_truncated(a: &Algebra, tower: u32, degree: u32) -> Result<SingH1> {
    let m = moore_complex(a, tower, degree, 2)?;
    let h1 = m.cohomology_dims[1];
    let coboundaries = m.normalized_dims[0] - m.cohomology_dims[0];
    Ok(SingH1 { tower, degree, cocycles: h1 + coboundaries, coboundaries, h1, label: "truncation report; no pro-limit claim" })
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct CupReport {
    pub unit_checks: usize,
    pub commutativity_checks: usize,
    pub leibniz_checks: usize,
}

/// Unit, degree-zero commutativity and Leibniz on the given level-0 samples
/// (as elements of `A`), with the level-1 differentials of the samples as
/// additional first arguments.
pub fn cup_product_checks(a: &Algebra, tower: u32, samples: &[Polynomial]) -> Result<CupReport> {
    let cos = CosimplicialAlgebra::new(a, tower, 2)?;
    let mut rep = CupReport::default();
    let cs: Vec<Polynomial> = samples.iter().map(|p| cos.level_zero(p)).collect::<Result<_>>()?;
    let one0 = cos.level(0).alg.one();
    for c in &cs {
        let dc = cos.differential(0, c)?;
        for (n, x) in [(0usize, c), (1, &dc)] {
            if cos.cup(0, &one0, n, x)? != *x || cos.cup(n, x, 0, &one0)? != *x {
                return Err(Error::property("cup unit", format!("{x}")));
            }
            rep.unit_checks += 1;
        }
    }
    for c in &cs {
        for c2 in &cs {
            let lhs = cos.cup(0, c, 0, c2)?;
            if lhs != cos.cup(0, c2, 0, c)? || !cos.level(0).alg.equal(&lhs, &c.mul(c2))? {
                return Err(Error::property("degree-zero cup product", format!("{c}, {c2}")));
            }
            rep.commutativity_checks += 1;
            // δ(c ⌣ c') = δc ⌣ c' + c ⌣ δc'
            let l = cos.differential(0, &lhs)?;
            let r = cos.cup(1, &cos.differential(0, c)?, 0, c2)?.add(&cos.cup(0, c, 1, &cos.differential(0, c2)?)?);
            if !cos.level(1).alg.equal(&l, &r)? {
                return Err(Error::property("Leibniz rule (degrees 0, 0)", format!("{c}, {c2}")));
            }
            // degree (1, 0): δ(x ⌣ c') = δx ⌣ c' − x ⌣ δc'
            let x = cos.differential(0, c)?;
            let l = cos.differential(1, &cos.cup(1, &x, 0, c2)?)?;
            let r = cos.cup(2, &cos.differential(1, &x)?, 0, c2)?.sub(&cos.cup(1, &x, 1, &cos.differential(0, c2)?)?);
            if !cos.level(2).alg.equal(&l, &r)? {
                return Err(Error::property("Leibniz rule (degrees 1, 0)", format!("{c}, {c2}")));
            }
            rep.leibniz_checks += 2;
        }
    }
    Ok(rep)
}

/// `φ_i^n: F[Δ_n][x] → F[Δ_{n+1}]`.
pub fn prism_map(field: Field, n: usize, i: usize) -> Result<(PolyExtension, AlgebraMorphism)> {
    if i > n {
        return Err(Error::invalid(format!("prism index {i} exceeds {n}")));
    }
    let src = polynomial_extension(&delta_algebra(field, n)?.alg)?;
    let dst = delta_algebra(field, n + 1)?;
    let image_of = |j: usize| match j.cmp(&i) {
        std::cmp::Ordering::Less => dst.coordinate(j),
        std::cmp::Ordering::Equal => dst.coordinate(i).add(&dst.coordinate(i + 1)),
        std::cmp::Ordering::Greater => dst.coordinate(j + 1),
    };
    let mut images: Vec<Polynomial> = (1..=n).map(image_of).collect();
    images.push((i + 1..=n + 1).fold(dst.alg.zero(), |acc, k| acc.add(&dst.coordinate(k))));
    // 1 − Σ x_j must map to 1 − Σ x_j
    let total = (0..=n).fold(dst.alg.zero(), |acc, j| acc.add(&image_of(j)));
    if !total.is_one() {
        return Err(Error::property("prism map preserves the simplex relation", total.to_string()));
    }
    let phi = AlgebraMorphism::check(&src.alg, &dst.alg, images)?;
    Ok((src, phi))
}

/// The prism identities relating `φ_i^n` to faces, degeneracies and the
/// endpoint evaluations, for all `n ≤ top`.
pub fn check_prism_identities(field: Field, top: usize) -> Result<usize> {
    let mut checked = 0;
    for n in 0..=top {
        let maps: Vec<(PolyExtension, AlgebraMorphism)> = (0..=n).map(|i| prism_map(field, n, i)).collect::<Result<_>>()?;
        let ext = &maps[0].0;
        let face = |i: usize| simplicial_map(field, &Ordinal::coface(n + 1, i));
        let check = |name: &str, l: &AlgebraMorphism, r: &AlgebraMorphism| {
            if l.equals(r) {
                Ok(())
            } else {
                Err(Error::property(name.to_string(), format!("n = {n}")))
            }
        };
        check("first face of the prism", &compose(&face(0)?, &maps[0].1)?, &ext.p1)?;
        check("last face of the prism", &compose(&face(n + 1)?, &maps[n].1)?, &ext.p0)?;
        checked += 2;
        for i in 1..=n {
            check("inner prism faces", &compose(&face(i)?, &maps[i].1)?, &compose(&face(i)?, &maps[i - 1].1)?)?;
            checked += 1;
        }
        for (i, (e, phi)) in maps.iter().enumerate() {
            let sigma = simplicial_map(field, &Ordinal::codegeneracy(n, i))?;
            check("prism restricted to the base", &compose(phi, &e.embed)?, &sigma)?;
            checked += 1;
        }
    }
    Ok(checked)
}
