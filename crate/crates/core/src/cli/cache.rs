//! On-disk Gröbner basis cache keyed by a digest of the presentation.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, AlgebraPresentation};
use crate::error::Result;
use crate::poly::{parse_poly, FieldSpec, GroebnerBasis, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// The entry was unreadable and has been rewritten.
    Recomputed,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: u32,
    key: String,
    basis: Vec<String>,
    checksum: String,
}

#[derive(Serialize)]
struct KeyMaterial<'a> {
    field: FieldSpec,
    vars: &'a [String],
    relations: Vec<String>,
    order: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of (field, variables, relations, monomial order).
pub fn cache_key(a: &AlgebraPresentation) -> String {
    let km = KeyMaterial {
        field: FieldSpec::from_field(a.field()),
        vars: a.vars(),
        relations: a.relations().iter().map(|r| r.to_string()).collect(),
        order: format!("{:?}", a.ring().order()),
    };
    sha256_hex(&serde_json::to_vec(&km).expect("serializable"))
}

fn checksum(basis: &[String]) -> String {
    sha256_hex(basis.join("\n").as_bytes())
}

#[derive(Debug, Clone)]
pub struct GbCache {
    dir: Option<PathBuf>,
}

impl GbCache {
    pub fn disabled() -> GbCache {
        GbCache { dir: None }
    }

    /// Caching in `dir`; disabled when the directory cannot be created.
    pub fn at(dir: &Path) -> GbCache {
        match fs::create_dir_all(dir) {
            Ok(()) => GbCache { dir: Some(dir.to_path_buf()) },
            Err(_) => GbCache::disabled(),
        }
    }

    /// `AFFPI0_CACHE` when set, otherwise disabled.
    pub fn from_env() -> GbCache {
        match std::env::var_os("AFFPI0_CACHE") {
            Some(d) if !d.is_empty() => GbCache::at(Path::new(&d)),
            _ => GbCache::disabled(),
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn read(&self, path: &Path, key: &str, a: &Algebra) -> Option<Vec<Polynomial>> {
        let text = fs::read_to_string(path).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        if e.schema != 1 || e.key != key || e.checksum != checksum(&e.basis) {
            return None;
        }
        e.basis.iter().map(|s| parse_poly(s, a.ring()).ok()).collect()
    }

    /// The same algebra with its basis served from, or written to, the cache.
    pub fn attach(&self, a: &Algebra) -> Result<(Algebra, CacheStatus)> {
        let Some(dir) = &self.dir else {
            return Ok((a.clone(), CacheStatus::Disabled));
        };
        let key = cache_key(a);
        let path = dir.join(format!("{key}.json"));
        let existed = path.exists();
        if let Some(polys) = self.read(&path, &key, a) {
            let gb = GroebnerBasis::from_reduced_unchecked(a.ring(), polys);
            let cached = AlgebraPresentation::with_basis(a.ring().clone(), a.relations().to_vec(), gb)?;
            return Ok((cached, CacheStatus::Hit));
        }
        let basis: Vec<String> = a.gb()?.polys().iter().map(|p| p.to_string()).collect();
        let entry = Entry { schema: 1, key, checksum: checksum(&basis), basis };
        // a failed write only loses the cache entry
        let _ = fs::write(&path, serde_json::to_string_pretty(&entry).expect("serializable"));
        Ok((a.clone(), if existed { CacheStatus::Recomputed } else { CacheStatus::Miss }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Field;

    fn circle() -> Algebra {
        AlgebraPresentation::parse(Field::Rational, &["x", "y"], &["x^2 + y^2 - 1", "x*y"]).unwrap()
    }

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GbCache::at(dir.path());
        let a = circle();
        let (_, s) = cache.attach(&a).unwrap();
        assert_eq!(s, CacheStatus::Miss);
        let path = dir.path().join(format!("{}.json", cache_key(&a)));
        let first = fs::read(&path).unwrap();
        let (b, s) = cache.attach(&circle()).unwrap();
        assert_eq!(s, CacheStatus::Hit);
        assert_eq!(b.gb().unwrap().polys(), a.gb().unwrap().polys());
        fs::write(&path, b"{ corrupt").unwrap();
        let (c, s) = cache.attach(&circle()).unwrap();
        assert_eq!(s, CacheStatus::Recomputed);
        assert_eq!(c.gb().unwrap().polys(), a.gb().unwrap().polys());
        assert_eq!(fs::read(&path).unwrap(), first);
    }

    #[test]
    fn tampered_basis_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GbCache::at(dir.path());
        let a = circle();
        cache.attach(&a).unwrap();
        let path = dir.path().join(format!("{}.json", cache_key(&a)));
        let text = fs::read_to_string(&path).unwrap().replace("x*y", "x*y + 1");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.attach(&a).unwrap().1, CacheStatus::Recomputed);
    }

    #[test]
    fn keys_separate_presentations() {
        let a = circle();
        let b = AlgebraPresentation::parse(Field::Rational, &["x", "y"], &["x^2 + y^2 - 1"]).unwrap();
        let c = AlgebraPresentation::parse(Field::Prime(5), &["x", "y"], &["x^2 + y^2 - 1", "x*y"]).unwrap();
        assert_ne!(cache_key(&a), cache_key(&b));
        assert_ne!(cache_key(&a), cache_key(&c));
        assert_eq!(cache_key(&a), cache_key(&circle()));
        assert_eq!(GbCache::disabled().attach(&a).unwrap().1, CacheStatus::Disabled);
    }
}
