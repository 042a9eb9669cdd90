//! JSON file formats for presentations and morphisms.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, FieldSpec, Guards, MonomialOrder, PolyRing};

use super::morphism::AlgebraMorphism;
use super::presentation::{Algebra, AlgebraPresentation};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl AlgebraFile {
    pub fn to_algebra(&self, guards: Guards) -> Result<Algebra> {
        let field = self.field.to_field()?;
        let ring = PolyRing::with_guards(field, self.vars.clone(), MonomialOrder::DegRevLex, guards)?;
        let rels = self.relations.iter().map(|r| parse_poly(r, &ring)).collect::<Result<Vec<_>>>()?;
        AlgebraPresentation::new(ring, rels)
    }

    pub fn from_algebra(a: &AlgebraPresentation) -> AlgebraFile {
        AlgebraFile {
            field: FieldSpec::from_field(a.field()),
            vars: a.vars().to_vec(),
            relations: a.relations().iter().map(|r| r.to_string()).collect(),
        }
    }
}

/// Either a path (relative to the referring file) or an inline presentation.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AlgebraSource {
    Path(String),
    Inline(AlgebraFile),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: AlgebraSource,
    pub target: AlgebraSource,
    pub images: Vec<String>,
}

impl MorphismFile {
    pub fn from_morphism(m: &AlgebraMorphism) -> MorphismFile {
        MorphismFile {
            source: AlgebraSource::Inline(AlgebraFile::from_algebra(m.source())),
            target: AlgebraSource::Inline(AlgebraFile::from_algebra(m.target())),
            images: m.image_strings(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn algebra_from_json(text: &str, guards: Guards) -> Result<Algebra> {
    let f: AlgebraFile = serde_json::from_str(text)?;
    f.to_algebra(guards)
}

pub fn load_algebra(path: &Path, guards: Guards) -> Result<Algebra> {
    algebra_from_json(&read(path)?, guards)
}

fn resolve(src: &AlgebraSource, base: &Path, guards: Guards) -> Result<Algebra> {
    match src {
        AlgebraSource::Inline(f) => f.to_algebra(guards),
        AlgebraSource::Path(p) => {
            let p = PathBuf::from(p);
            let full = if p.is_absolute() { p } else { base.join(p) };
            load_algebra(&full, guards)
        }
    }
}

/// Loads and validates a morphism file.
pub fn load_morphism(path: &Path, guards: Guards) -> Result<AlgebraMorphism> {
    let f: MorphismFile = serde_json::from_str(&read(path)?)?;
    let base = path.parent().unwrap_or(Path::new("."));
    morphism_from_file(&f, base, guards)
}

pub fn morphism_from_file(f: &MorphismFile, base: &Path, guards: Guards) -> Result<AlgebraMorphism> {
    let source = resolve(&f.source, base, guards)?;
    let target = resolve(&f.target, base, guards)?;
    let images = f.images.iter().map(|s| parse_poly(s, target.ring())).collect::<Result<Vec<_>>>()?;
    AlgebraMorphism::check(&source, &target, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_prime_field() {
        let text = r#"{"field":{"p":3},"vars":["t"],"relations":["t^2 - 1"]}"#;
        let a = algebra_from_json(text, Guards::default()).unwrap();
        assert_eq!(a.field(), crate::poly::Field::Prime(3));
        let back = serde_json::to_string(&AlgebraFile::from_algebra(&a)).unwrap();
        assert_eq!(back, r#"{"field":{"p":3},"vars":["t"],"relations":["t^2 + 2"]}"#);
        assert!(algebra_from_json(r#"{"field":"R","vars":[]}"#, Guards::default()).is_err());
        assert!(algebra_from_json("{not json", Guards::default()).is_err());
    }

    #[test]
    fn morphism_with_relative_paths() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("a.json"), r#"{"field":"Q","vars":["t"],"relations":["t^2 - t"]}"#).unwrap();
        let m = r#"{"source":"a.json","target":{"field":"Q","vars":[]},"images":["1"]}"#;
        std::fs::write(dir.path().join("m.json"), m).unwrap();
        let f = load_morphism(&dir.path().join("m.json"), Guards::default()).unwrap();
        assert_eq!(f.image_strings(), vec!["1"]);
        let bad = r#"{"source":"a.json","target":{"field":"Q","vars":[]},"images":["2"]}"#;
        std::fs::write(dir.path().join("bad.json"), bad).unwrap();
        assert!(matches!(
            load_morphism(&dir.path().join("bad.json"), Guards::default()),
            Err(Error::RelationViolation { .. })
        ));
    }
}
