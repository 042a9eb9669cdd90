use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

use super::presentation::{substitute_reduced, Algebra};

/// A unital morphism given by the images of the source generators. Images
/// are stored as normal forms in the target.
#[derive(Clone)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    images: Vec<Polynomial>,
}

impl fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.source.vars().iter().zip(&self.images).map(|(v, p)| format!("{v} -> {p}")).collect();
        write!(f, "AlgebraMorphism[{}]", parts.join(", "))
    }
}

impl AlgebraMorphism {
    /// Validates a candidate: every source relation must map into the
    /// target ideal.
    pub fn check(source: &Algebra, target: &Algebra, images: Vec<Polynomial>) -> Result<AlgebraMorphism> {
        if images.len() != source.arity() {
            return Err(Error::invalid(format!(
                "{} images given for {} source generators",
                images.len(),
                source.arity()
            )));
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", source.field(), target.field())));
        }
        let mut normal = Vec::with_capacity(images.len());
        for im in &images {
            PolyRing::check_same(im.ring(), target.ring())?;
            normal.push(target.nf(im)?);
        }
        for r in source.relations() {
            let image = substitute_reduced(r, &normal, target)?;
            if !image.is_zero() {
                return Err(Error::RelationViolation { relation: r.to_string(), image: image.to_string() });
            }
        }
        Ok(AlgebraMorphism { source: source.clone(), target: target.clone(), images: normal })
    }

    pub fn parse(source: &Algebra, target: &Algebra, images: &[&str]) -> Result<AlgebraMorphism> {
        let ims = images.iter().map(|s| target.parse_elem(s)).collect::<Result<Vec<_>>>()?;
        Self::check(source, target, ims)
    }

    /// Skips the relation check; for maps whose validity is guaranteed by
    /// construction and re-verified by callers' tests.
    pub(crate) fn trusted(source: &Algebra, target: &Algebra, images: Vec<Polynomial>) -> Result<AlgebraMorphism> {
        let normal = images.iter().map(|p| target.nf(p)).collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMorphism { source: source.clone(), target: target.clone(), images: normal })
    }

    pub fn identity(a: &Algebra) -> AlgebraMorphism {
        let images = (0..a.arity()).map(|i| a.var(i)).collect::<Vec<_>>();
        Self::trusted(a, a, images).expect("identity on a valid presentation")
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Image of an arbitrary source polynomial, as a target normal form.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        PolyRing::check_same(p.ring(), self.source.ring())?;
        substitute_reduced(p, &self.images, &self.target)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        compose(self, f)
    }

    /// Same source and target rings and equal images.
    pub fn equals(&self, o: &AlgebraMorphism) -> bool {
        PolyRing::same(self.source.ring(), o.source.ring())
            && PolyRing::same(self.target.ring(), o.target.ring())
            && self.images == o.images
    }

    /// Images as strings in the canonical print form.
    pub fn image_strings(&self) -> Vec<String> {
        self.images.iter().map(|p| p.to_string()).collect()
    }

    pub fn same_algebras(&self, o: &AlgebraMorphism) -> bool {
        (Arc::ptr_eq(&self.source, &o.source) || PolyRing::same(self.source.ring(), o.source.ring()))
            && (Arc::ptr_eq(&self.target, &o.target) || PolyRing::same(self.target.ring(), o.target.ring()))
    }
}

/// `g ∘ f`.
pub fn compose(g: &AlgebraMorphism, f: &AlgebraMorphism) -> Result<AlgebraMorphism> {
    if !PolyRing::same(f.target.ring(), g.source.ring()) {
        return Err(Error::RingMismatch("target of the first map is not the source of the second".into()));
    }
    let images = f.images.iter().map(|p| substitute_reduced(p, &g.images, &g.target)).collect::<Result<Vec<_>>>()?;
    Ok(AlgebraMorphism { source: f.source.clone(), target: g.target.clone(), images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;
    use crate::poly::Field;

    #[test]
    fn idempotent_points() {
        let a = AlgebraPresentation::parse(Field::Rational, &["t"], &["t^2 - t"]).unwrap();
        let q = AlgebraPresentation::ground(Field::Rational);
        assert!(AlgebraMorphism::parse(&a, &q, &["1"]).is_ok());
        let err = AlgebraMorphism::parse(&a, &q, &["2"]).unwrap_err();
        assert!(matches!(err, Error::RelationViolation { .. }));
    }

    #[test]
    fn square_roots_of_one() {
        let a = AlgebraPresentation::parse(Field::Rational, &["t"], &["t^2 - 1"]).unwrap();
        let b = AlgebraPresentation::parse(Field::Rational, &["x"], &["x^2 - 1"]).unwrap();
        assert!(AlgebraMorphism::parse(&a, &b, &["x"]).is_ok());
    }

    #[test]
    fn composition() {
        let s = AlgebraPresentation::free(Field::Rational, &["s"]).unwrap();
        let t = AlgebraPresentation::free(Field::Rational, &["t"]).unwrap();
        let x = AlgebraPresentation::free(Field::Rational, &["x"]).unwrap();
        let f = AlgebraMorphism::parse(&s, &t, &["t^2"]).unwrap();
        let g = AlgebraMorphism::parse(&t, &x, &["x"]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.image_strings(), vec!["x^2"]);
        assert!(compose(&AlgebraMorphism::identity(&x), &g).unwrap().equals(&g));
        assert!(compose(&f, &g).is_err());
    }
}
