//! Exact dense linear algebra over the ground field.

use super::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

/// Row echelon basis that supports incremental insertion and reduction.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    /// (pivot column, row) with the pivot entry equal to one.
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (k, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    v[k] = v[k].sub(&c.mul(r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        let r: Vector = r.iter().map(|x| x.mul(&inv)).collect();
        // keep rows fully reduced against the new pivot
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for k in 0..row.len() {
                    if !r[k].is_zero() {
                        row[k] = row[k].sub(&c.mul(&r[k]));
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vector], field: Field) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv();
        for k in 0..cols {
            m[r][k] = m[r][k].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    if !m[r][k].is_zero() {
                        let t = f.mul(&m[r][k]);
                        m[i][k] = m[i][k].sub(&t);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let _ = field;
    pivots
}

pub fn rank(m: &[Vector], field: Field) -> usize {
    let mut copy = m.to_vec();
    rref(&mut copy, field).len()
}

/// Basis of `{v : M v = 0}` where `M` has `cols` columns.
pub fn kernel(m: &[Vector], cols: usize, field: Field) -> Vec<Vector> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, field);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = a[r][f].neg();
            }
            v
        })
        .collect()
}

/// Some solution of `M v = b`, if one exists.
pub fn solve(m: &[Vector], b: &[Scalar], cols: usize, field: Field) -> Option<Vector> {
    let mut aug: Vec<Vector> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, field);
    if pivots.contains(&cols) {
        return None;
    }
    let mut v = vec![field.zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        v[p] = aug[r][cols].clone();
    }
    Some(v)
}

pub fn mat_vec(m: &[Vector], v: &[Scalar], field: Field) -> Vector {
    m.iter()
        .map(|row| row.iter().zip(v).fold(field.zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc.add(&a.mul(b)) }))
        .collect()
}

pub fn mat_mul(a: &[Vector], b: &[Vector], inner: usize, cols: usize, field: Field) -> Vec<Vector> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.add(&row[k].mul(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}
