//! Dense exact linear algebra over the base field.

use crate::field::{Field, Scalar};
use crate::par::Execution;

/// Row count from which elimination is split across threads.
#[cfg(feature = "parallel")]
const PARALLEL_ROWS: usize = 128;

/// Dense matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        Matrix { field, nrows, ncols, rows: vec![vec![field.zero(); ncols]; nrows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, ncols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Matrix { field, nrows: rows.len(), ncols, rows }
    }

    pub fn from_columns(field: Field, nrows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.rows[i][j] = v.clone();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.rows.clone();
        Matrix::from_columns(self.field, self.ncols, &cols)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "matrix shapes");
        let mut out = Matrix::zeros(self.field, self.nrows, other.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[i][j] = &out.rows[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(self.field.zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        &acc + &(a * b)
                    }
                })
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Scalar::is_zero))
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_with(Execution::default())
    }

    pub fn rref_with(&mut self, exec: Execution) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(p) = (r..self.nrows).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inv().expect("nonzero pivot");
            for v in self.rows[r].iter_mut().skip(c) {
                *v = &*v * &inv;
            }
            let pivot_row = std::mem::take(&mut self.rows[r]);
            eliminate(&mut self.rows, &pivot_row, c, exec);
            self.rows[r] = pivot_row;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.ncols];
            v[free] = self.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m.rows[r][free];
            }
            out.push(v);
        }
        out
    }
}

/// Clears column `c` in every row using `pivot` (whose entry at `c` is 1).
fn eliminate(rows: &mut [Vec<Scalar>], pivot: &[Scalar], c: usize, exec: Execution) {
    let step = |row: &mut Vec<Scalar>| {
        if row.is_empty() || row[c].is_zero() {
            return;
        }
        let f = row[c].clone();
        for (v, p) in row.iter_mut().zip(pivot).skip(c) {
            if !p.is_zero() {
                *v = &*v - &(&f * p);
            }
        }
    };
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel && rows.len() >= PARALLEL_ROWS {
        use rayon::prelude::*;
        rows.par_iter_mut().for_each(step);
        return;
    }
    let _ = exec;
    rows.iter_mut().for_each(step);
}

/// A subspace of `k^n` kept as a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by(field: Field, ambient: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Self {
        let rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(field, ambient);
        }
        let mut m = Matrix::from_rows(field, ambient, rows);
        let pivots = m.rref();
        m.rows.truncate(pivots.len());
        Subspace { field, ambient, basis: m.rows, pivots }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::spanned_by(field, ambient, Matrix::identity(field, ambient).rows)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Remainder of `v` after clearing the pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, b) in out.iter_mut().zip(row).skip(p) {
                if !b.is_zero() {
                    *o = &*o - &(&f * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut().skip(p) {
            *x = &*x * &inv;
        }
        for row in &mut self.basis {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (o, b) in row.iter_mut().zip(&r).skip(p) {
                if !b.is_zero() {
                    *o = &*o - &(&f * b);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::spanned_by(self.field, self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// `{w in self : L w in target}` for a linear map `L` given as a matrix.
    pub fn preimage_within(&self, map: &Matrix, target: &Subspace) -> Subspace {
        self.preimage_all(std::slice::from_ref(map), target)
    }

    /// `{w in self : L w in target for every L in maps}`.
    pub fn preimage_all(&self, maps: &[Matrix], target: &Subspace) -> Subspace {
        if self.basis.is_empty() {
            return self.clone();
        }
        // coefficients c with sum_k c_k (L b_k) reducing to zero modulo target
        let mut cols: Vec<Vec<Scalar>> = vec![Vec::new(); self.basis.len()];
        for map in maps {
            for (k, b) in self.basis.iter().enumerate() {
                cols[k].extend(target.reduce(&map.apply(b)));
            }
        }
        let nrows = cols[0].len();
        let system = Matrix::from_columns(self.field, nrows, &cols);
        let coeffs = system.nullspace();
        let vectors = coeffs.into_iter().map(|c| {
            let mut v = vec![self.field.zero(); self.ambient];
            for (ck, b) in c.iter().zip(&self.basis) {
                if ck.is_zero() {
                    continue;
                }
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = &*vi + &(ck * bi);
                }
            }
            v
        });
        Self::spanned_by(self.field, self.ambient, vectors)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.preimage_within(&Matrix::identity(self.field, self.ambient), other)
    }

    /// Vectors among `candidates` extending `self` to a basis of the span.
    pub fn complement_from(&self, candidates: &[Vec<Scalar>]) -> Vec<usize> {
        let mut acc = self.clone();
        let mut picked = Vec::new();
        for (i, c) in candidates.iter().enumerate() {
            if acc.insert(c) {
                picked.push(i);
            }
        }
        picked
    }
}
