use std::fmt;

use serde::Serialize;

use super::Modulus;
use crate::error::{Error, Result};

/// Dense row-major matrix over `Z/q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZqMatrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl ZqMatrix {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        ZqMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing entries mod `q`.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: Modulus, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&x| modulus.reduce(x)));
        }
        Ok(ZqMatrix {
            modulus,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from already reduced residue rows.
    pub fn from_residue_rows<R: AsRef<[u32]>>(modulus: Modulus, cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().map(|&x| x % modulus.q()));
        }
        ZqMatrix {
            modulus,
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
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
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.modulus.q();
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> ZqMatrix {
        let mut t = ZqMatrix::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &ZqMatrix) -> Result<ZqMatrix> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.q(), other.modulus.q()));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let q = self.modulus.q() as u64;
        let mut out = ZqMatrix::zeros(self.modulus, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % q;
                }
            }
            for (j, v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = *v as u32;
            }
        }
        Ok(out)
    }

    /// `M x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let q = self.modulus.q() as u64;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % q) as u32
            })
            .collect())
    }

    /// `x M` for a row vector `x`.
    pub fn vec_mul(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let mut out = vec![0u32; self.cols];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                axpy(self.modulus, &mut out, c, self.row(i));
            }
        }
        Ok(out)
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &ZqMatrix) -> Result<ZqMatrix> {
        if self.cols != other.cols || self.modulus != other.modulus {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ZqMatrix {
            modulus: self.modulus,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places the columns of `other` to the right of `self`.
    pub fn hstack(&self, other: &ZqMatrix) -> Result<ZqMatrix> {
        if self.rows != other.rows || self.modulus != other.modulus {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(ZqMatrix {
            modulus: self.modulus,
            rows: self.rows,
            cols,
            data,
        })
    }
}

impl fmt::Display for ZqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `y += a x` over `Z/q`.
#[inline]
pub(crate) fn axpy(m: Modulus, y: &mut [u32], a: u32, x: &[u32]) {
    if a == 0 {
        return;
    }
    let q = m.q() as u64;
    let a = a as u64;
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = ((*yi as u64 + a * xi as u64) % q) as u32;
        }
    }
}

#[inline]
pub(crate) fn scale(m: Modulus, x: &mut [u32], a: u32) {
    let q = m.q() as u64;
    for v in x.iter_mut() {
        *v = ((*v as u64 * a as u64) % q) as u32;
    }
}

#[inline]
pub(crate) fn dot(m: Modulus, x: &[u32], y: &[u32]) -> u32 {
    let q = m.q() as u64;
    x.iter()
        .zip(y)
        .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % q) as u32
}
