use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::poly::{Field, Polynomial, Scalar};

use super::morphism::AlgebraMorphism;
use super::presentation::{from_coordinates, substitute_reduced, Algebra, AlgebraPresentation};

fn prime_of(f: Field) -> Result<u64> {
    match f {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(Error::UnsupportedField("points over Q are not enumerable".into())),
    }
}

/// `p^n`, failing when it exceeds the enumeration guard.
pub(crate) fn candidate_count(p: u64, n: usize, limit: u64) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.checked_mul(p).filter(|t| *t <= limit).ok_or(Error::ResourceLimit { what: "enumeration size", limit })?;
    }
    Ok(total)
}

/// Base-`p` digits of `k`, most significant first.
pub(crate) fn digits(mut k: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = k % p;
        k /= p;
    }
    out
}

/// All points `A → F_p`, ordered lexicographically by coordinates.
pub fn enumerate_points(a: &Algebra) -> Result<Vec<AlgebraMorphism>> {
    enumerate_points_with(a, Exec::best())
}

pub fn enumerate_points_with(a: &Algebra, exec: Exec) -> Result<Vec<AlgebraMorphism>> {
    let coords = point_coordinates_with(a, exec)?;
    let ground = AlgebraPresentation::ground(a.field());
    coords
        .into_iter()
        .map(|c| {
            let ims = c.into_iter().map(|s| Polynomial::constant(ground.ring(), s)).collect();
            AlgebraMorphism::trusted(a, &ground, ims)
        })
        .collect()
}

/// Coordinates of every point, without wrapping them as morphisms.
pub fn point_coordinates_with(a: &Algebra, exec: Exec) -> Result<Vec<Vec<Scalar>>> {
    let p = prime_of(a.field())?;
    let n = a.arity();
    let total = candidate_count(p, n, a.ring().guards().max_enumeration)?;
    let rels = a.relations();
    Ok(par::filter_map_range(exec, total, |k| {
        let pt: Vec<Scalar> = digits(k, p, n).into_iter().map(|d| Scalar::Fp(d, p)).collect();
        rels.iter().all(|r| r.eval(&pt).is_zero()).then_some(pt)
    }))
}

/// All morphisms `A → B` whose generator images lie in the span of the
/// standard monomials of `B` of degree ≤ `d`.
pub fn enumerate_hom(a: &Algebra, b: &Algebra, d: u32) -> Result<Vec<AlgebraMorphism>> {
    enumerate_hom_with(a, b, d, Exec::best())
}

pub fn enumerate_hom_with(a: &Algebra, b: &Algebra, d: u32, exec: Exec) -> Result<Vec<AlgebraMorphism>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    let p = prime_of(b.field())?;
    let basis = b.standard_monomials(d)?;
    let s = basis.len();
    let n = a.arity();
    let total = candidate_count(p, n * s, b.ring().guards().max_enumeration)?;
    b.gb()?;
    let found = par::filter_map_range(exec, total, |k| {
        let ds = digits(k, p, n * s);
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                let v: Vec<Scalar> = ds[i * s..(i + 1) * s].iter().map(|&x| Scalar::Fp(x, p)).collect();
                from_coordinates(b.ring(), &basis, &v)
            })
            .collect();
        let ok = a.relations().iter().all(|r| substitute_reduced(r, &images, b).map(|x| x.is_zero()).unwrap_or(false));
        ok.then_some(images)
    });
    found.into_iter().map(|ims| AlgebraMorphism::trusted(a, b, ims)).collect()
}
