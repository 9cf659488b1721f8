use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;

/// Matrix over `R` stored by columns; column `j` is the image of the `j`-th
/// basis vector of the source free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    nrows: usize,
    columns: Vec<Vec<Polynomial>>,
}

impl RMatrix {
    pub fn from_columns(nrows: usize, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != nrows) {
            return Err(Error::ShapeMismatch(format!("column of length {} in a matrix with {nrows} rows", c.len())));
        }
        Ok(RMatrix { nrows, columns })
    }

    pub fn from_rows(ring: &QuotientRing, ncols: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch(format!("row of length {} in a matrix with {ncols} columns", r.len())));
        }
        let nrows = rows.len();
        let mut columns = vec![vec![ring.zero(); nrows]; ncols];
        for (i, row) in rows.into_iter().enumerate() {
            for (j, e) in row.into_iter().enumerate() {
                columns[j][i] = e;
            }
        }
        Ok(RMatrix { nrows, columns })
    }

    pub fn zeros(ring: &QuotientRing, nrows: usize, ncols: usize) -> Self {
        RMatrix { nrows, columns: vec![vec![ring.zero(); nrows]; ncols] }
    }

    pub fn identity(ring: &QuotientRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.columns[i][i] = ring.one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[Polynomial] {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.columns[j][i]
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows).map(|i| self.columns.iter().map(|c| c[i].clone()).collect()).collect()
    }

    pub fn transpose(&self, ring: &QuotientRing) -> RMatrix {
        RMatrix::from_rows(ring, self.nrows, self.columns.clone()).expect("consistent shape")
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> RMatrix {
        RMatrix {
            nrows: self.nrows,
            columns: self.columns.iter().map(|c| c.iter().map(&f).collect()).collect(),
        }
    }

    pub fn nf(&self, ring: &QuotientRing) -> RMatrix {
        self.map_entries(|e| ring.nf(e))
    }

    /// Product `self * other`, normal-formed.
    pub fn mul(&self, ring: &QuotientRing, other: &RMatrix) -> Result<RMatrix> {
        if self.ncols() != other.nrows {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows,
                self.ncols(),
                other.nrows,
                other.ncols()
            )));
        }
        let columns = other.columns.iter().map(|c| apply_columns(ring, self.nrows, &self.columns, c)).collect();
        Ok(RMatrix { nrows: self.nrows, columns })
    }

    pub fn apply(&self, ring: &QuotientRing, v: &[Polynomial]) -> Vec<Polynomial> {
        apply_columns(ring, self.nrows, &self.columns, v)
    }

    pub fn is_zero(&self, ring: &QuotientRing) -> bool {
        self.columns.iter().all(|c| c.iter().all(|e| ring.is_zero(e)))
    }

    /// Block sum `[self | other]`.
    pub fn hstack(&self, other: &RMatrix) -> Result<RMatrix> {
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        RMatrix::from_columns(self.nrows, columns)
    }
}

/// `sum_k v_k * cols_k`.
pub(crate) fn apply_columns(ring: &QuotientRing, nrows: usize, cols: &[Vec<Polynomial>], v: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = vec![ring.zero(); nrows];
    for (c, a) in cols.iter().zip(v) {
        if a.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(c) {
            if !e.is_zero() {
                *o = &*o + &(a * e);
            }
        }
    }
    out.iter().map(|e| ring.nf(e)).collect()
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}
