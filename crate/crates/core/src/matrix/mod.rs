//! Symbolic matrices over noncommuting letters and the matrix homotopy
//! lemmas built from the rotation matrix `ℛ`.

mod lemmas;
pub mod ncpoly;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use lemmas::{
    block_lemma_checks, commutative_spot_check, conjugation_homotopy_check, gamma_and_stability_checks, lemma_suite,
    permutation_homotopy, pnc_zero_witness, rotation_matrix_checks, LemmaGroup, PermutationChain, PermutationLink,
};
pub use ncpoly::{Letter, NcPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<NcPoly>,
}

impl SymMatrix {
    pub fn zero(n: usize) -> SymMatrix {
        SymMatrix { n, entries: vec![NcPoly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> SymMatrix {
        let mut m = SymMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, NcPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<NcPoly>>) -> Result<SymMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("symbolic matrix must be square"));
        }
        Ok(SymMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    /// `k × k` matrix of letters `{prefix}{r}{c}`, 1-based.
    pub fn generic(prefix: &str, k: usize) -> SymMatrix {
        let mut m = SymMatrix::zero(k);
        for r in 0..k {
            for c in 0..k {
                m.set(r, c, NcPoly::sym(&format!("{prefix}{}{}", r + 1, c + 1)));
            }
        }
        m
    }

    pub fn diag(blocks: &[&SymMatrix]) -> SymMatrix {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = SymMatrix::zero(n);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.n {
                for c in 0..b.n {
                    m.set(off + r, off + c, b.get(r, c).clone());
                }
            }
            off += b.n;
        }
        m
    }

    /// `diag(M, 0)` of size `n`.
    pub fn pad(&self, n: usize) -> SymMatrix {
        assert!(n >= self.n, "padding below the current size");
        SymMatrix::diag(&[self, &SymMatrix::zero(n - self.n)])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &NcPoly {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: NcPoly) {
        self.entries[r * self.n + c] = v;
    }

    fn zip(&self, o: &SymMatrix, f: impl Fn(&NcPoly, &NcPoly) -> NcPoly) -> SymMatrix {
        assert_eq!(self.n, o.n, "size mismatch");
        SymMatrix { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, o: &SymMatrix) -> SymMatrix {
        self.zip(o, NcPoly::add)
    }

    pub fn sub(&self, o: &SymMatrix) -> SymMatrix {
        self.zip(o, NcPoly::sub)
    }

    pub fn mul(&self, o: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, o.n, "size mismatch");
        let n = self.n;
        let mut out = SymMatrix::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(&NcPoly) -> NcPoly) -> SymMatrix {
        SymMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn eval_x(&self, c: i64) -> SymMatrix {
        self.map(|p| p.eval_x(c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NcPoly::is_zero)
    }

    pub fn x_degree(&self) -> u32 {
        self.entries.iter().map(NcPoly::x_degree).max().unwrap_or(0)
    }

    /// First nonzero entry of `self − o`, or `"0"`.
    pub fn residual(&self, o: &SymMatrix) -> String {
        if self.n != o.n {
            return format!("size {} vs {}", self.n, o.n);
        }
        let d = self.sub(o);
        for r in 0..self.n {
            for c in 0..self.n {
                if !d.get(r, c).is_zero() {
                    return format!("entry ({},{}): {}", r + 1, c + 1, d.get(r, c));
                }
            }
        }
        "0".into()
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.n {
            if r > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// `ℛ = [[1 − x², x³ − 2x], [x, 1 − x²]]`.
pub fn rotation() -> SymMatrix {
    SymMatrix {
        n: 2,
        entries: vec![NcPoly::in_x(&[1, 0, -1]), NcPoly::in_x(&[0, -2, 0, 1]), NcPoly::x(), NcPoly::in_x(&[1, 0, -1])],
    }
}

pub fn rotation_inverse() -> SymMatrix {
    SymMatrix {
        n: 2,
        entries: vec![NcPoly::in_x(&[1, 0, -1]), NcPoly::in_x(&[0, 2, 0, -1]), NcPoly::in_x(&[0, -1]), NcPoly::in_x(&[1, 0, -1])],
    }
}

/// `ℛ` (or `ℛ⁻¹`) acting on each coordinate pair `(s_i, t_i)` of an
/// `n × n` identity.
pub fn plane_rotation(n: usize, s: &[usize], t: &[usize], inverse: bool) -> SymMatrix {
    assert_eq!(s.len(), t.len(), "rotation planes need equal sides");
    let r = if inverse { rotation_inverse() } else { rotation() };
    let mut m = SymMatrix::identity(n);
    for (&i, &j) in s.iter().zip(t) {
        m.set(i, i, r.get(0, 0).clone());
        m.set(i, j, r.get(0, 1).clone());
        m.set(j, i, r.get(1, 0).clone());
        m.set(j, j, r.get(1, 1).clone());
    }
    m
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    /// `"0"` when passed, otherwise the first offending entry.
    pub residual: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: String,
    pub checks: Vec<CheckLine>,
}

impl LemmaReport {
    pub fn new(lemma: &str) -> LemmaReport {
        LemmaReport { lemma: lemma.into(), checks: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, lhs: &SymMatrix, rhs: &SymMatrix) -> bool {
        let residual = lhs.residual(rhs);
        let passed = residual == "0";
        self.checks.push(CheckLine { name: name.into(), passed, residual });
        passed
    }

    pub fn check_poly(&mut self, name: impl Into<String>, lhs: &NcPoly, rhs: &NcPoly) -> bool {
        let d = lhs.sub(rhs);
        let passed = d.is_zero();
        self.checks.push(CheckLine { name: name.into(), passed, residual: d.to_string() });
        passed
    }

    pub fn flag(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckLine { name: name.into(), passed, residual: if passed { "0".into() } else { detail.into() } });
        passed
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn absorb(&mut self, o: LemmaReport) {
        for mut c in o.checks {
            c.name = format!("{}: {}", o.lemma, c.name);
            self.checks.push(c);
        }
    }

    /// Turns the first failed check into an error.
    pub fn into_result(self) -> Result<LemmaReport> {
        match self.checks.iter().find(|c| !c.passed) {
            Some(c) => Err(Error::property(format!("{}: {}", self.lemma, c.name), c.residual.clone())),
            None => Ok(self),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_endpoints() {
        assert_eq!(rotation().eval_x(0), SymMatrix::identity(2));
        assert_eq!(rotation().eval_x(1).to_string(), "[[0, -1], [1, 0]]");
        assert_eq!(rotation().mul(&rotation_inverse()), SymMatrix::identity(2));
    }

    #[test]
    fn plane_rotations_invert() {
        let r = plane_rotation(5, &[0, 3], &[2, 4], false);
        let ri = plane_rotation(5, &[0, 3], &[2, 4], true);
        assert_eq!(r.mul(&ri), SymMatrix::identity(5));
        assert_eq!(r.x_degree(), 3);
    }

    #[test]
    fn blocks_and_residuals() {
        let m = SymMatrix::generic("m", 2);
        let d = SymMatrix::diag(&[&m, &SymMatrix::identity(1)]);
        assert_eq!(d.size(), 3);
        assert_eq!(d.get(2, 2), &NcPoly::one());
        assert_eq!(m.pad(3), SymMatrix::diag(&[&m, &SymMatrix::zero(1)]));
        assert_eq!(m.residual(&m), "0");
        assert_eq!(m.residual(&SymMatrix::zero(2)), "entry (1,1): m11");
        assert!(SymMatrix::from_rows(vec![vec![NcPoly::one()], vec![]]).is_err());
    }
}
