use std::fmt;
use std::ops::Index;

use super::{FpElem, PrimeField};
use crate::error::{Error, Result};

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FpElem>,
}

/// Outcome of [`FpMatrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<FpElem>),
    /// The system is inconsistent.
    NoSolution,
    /// Consistent, with a kernel of the given dimension.
    NonUnique { kernel_dim: usize },
}

/// What a row reduction to reduced echelon form leaves behind.
struct Reduced {
    pivots: Vec<usize>,
    /// Product of the pivots before normalisation, with the row-swap sign.
    det_factor: FpElem,
}

impl FpMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<FpElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| e.value() >= field.modulus()) {
            return Err(Error::InvalidParams(format!(
                "entry {bad} is not reduced mod {}",
                field.modulus()
            )));
        }
        Ok(FpMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![FpElem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        Self::from_fn(field, size, size, |i, j| {
            if i == j {
                FpElem::ONE
            } else {
                FpElem::ZERO
            }
        })
    }

    /// Builds a matrix from a 0-based entry function.
    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FpElem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Reduces integer rows mod p. All rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(row.iter().map(|&v| field.elem(v)));
        }
        Ok(FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<FpElem>]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} in a matrix with {rows} rows",
                c.len()
            )));
        }
        Ok(Self::from_fn(field, rows, columns.len(), |i, j| {
            columns[j][i]
        }))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FpElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FpElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FpElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FpElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Residues as plain integers, row by row.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.value()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { FpElem::ONE } else { FpElem::ZERO })
            })
    }

    pub fn transpose(&self) -> FpMatrix {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: FpElem) -> FpMatrix {
        FpMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| self.field.mul(e, c)).collect(),
        }
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.field.ensure_same(other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let p = f.modulus() as u64;
        let mut out = FpMatrix::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (t, &a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(t)) {
                    *slot = (*slot + a.value() as u64 * b.value() as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.set(i, j, FpElem(v as u32));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FpElem]) -> Result<Vec<FpElem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FpElem::ZERO, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect())
    }

    /// Gauss-Jordan elimination in place, restricted to the first `ncols`
    /// columns for pivot selection. First nonzero entry is the pivot.
    fn reduce(&mut self, ncols: usize) -> Reduced {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut det_factor = FpElem::ONE;
        let mut row = 0;
        for col in 0..ncols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if piv != row {
                self.swap_rows(piv, row);
                det_factor = f.neg(det_factor);
            }
            let pv = self.get(row, col);
            det_factor = f.mul(det_factor, pv);
            let inv = f.inv(pv).expect("pivot is nonzero");
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                for j in col..self.cols {
                    let v = f.mul_add(self.get(r, j), neg, self.get(row, j));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Reduced { pivots, det_factor }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let cols = work.cols;
        work.reduce(cols).pivots.len()
    }

    pub fn det(&self) -> Result<FpElem> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut work = self.clone();
        let red = work.reduce(self.cols);
        Ok(if red.pivots.len() == self.rows {
            red.det_factor
        } else {
            FpElem::ZERO
        })
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let f = self.field;
        let mut aug = FpMatrix::from_fn(f, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                FpElem::ONE
            } else {
                FpElem::ZERO
            }
        });
        if aug.reduce(n).pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(FpMatrix::from_fn(f, n, n, |i, j| aug.get(i, n + j)))
    }

    /// Solves `A x = b`, distinguishing inconsistent from underdetermined.
    pub fn solve(&self, b: &[FpElem]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but right-hand side of length {}",
                self.rows,
                b.len()
            )));
        }
        let n = self.cols;
        let mut aug = FpMatrix::from_fn(self.field, self.rows, n + 1, |i, j| {
            if j < n {
                self.get(i, j)
            } else {
                b[i]
            }
        });
        let pivots = aug.reduce(n).pivots;
        let rank = pivots.len();
        if (rank..self.rows).any(|r| !aug.get(r, n).is_zero()) {
            return Ok(Solution::NoSolution);
        }
        if rank < n {
            return Ok(Solution::NonUnique {
                kernel_dim: n - rank,
            });
        }
        Ok(Solution::Unique((0..n).map(|i| aug.get(i, n)).collect()))
    }
}

impl Index<(usize, usize)> for FpMatrix {
    type Output = FpElem;

    fn index(&self, (i, j): (usize, usize)) -> &FpElem {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.field.modulus().saturating_sub(1).to_string().len();
        for i in 0..self.rows {
            let line: Vec<String> = self
                .row(i)
                .iter()
                .map(|e| format!("{:>width$}", e.value()))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}
