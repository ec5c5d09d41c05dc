use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for d in 0..n {
            m.entries[d * n + d] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let entries = (0..rows * cols).map(|ix| f(ix / cols, ix % cols)).collect();
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn trace(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(self.mismatch("trace of non-square"));
        }
        Ok((0..self.rows).map(|d| &self[(d, d)]).sum())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    fn mismatch(&self, what: &str) -> Error {
        Error::DimensionMismatch(format!("{what} ({}x{})", self.rows, self.cols))
    }

    /// Schoolbook product.
    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(BigInt::zero(), |acc, j| acc + &self[(r, j)] * &rhs[(j, c)])
        }))
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(self.mismatch(&format!("vector of length {} times", v.len())));
        }
        Ok((0..self.cols)
            .map(|c| v.iter().enumerate().fold(BigInt::zero(), |acc, (r, x)| acc + x * &self[(r, c)]))
            .collect())
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.entries[r * self.cols + c]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", cells[r * self.cols + c])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `m^n` by binary exponentiation.
pub fn mat_power(m: &ExactMatrix, mut n: u64) -> Result<ExactMatrix> {
    if !m.is_square() {
        return Err(m.mismatch("power of non-square"));
    }
    let mut result = ExactMatrix::identity(m.rows);
    let mut base = m.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = result.mul(&base)?;
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base)?;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_dimensions() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]).unwrap();
        let b = ExactMatrix::from_i64_rows(&[&[1], &[0], &[-1]]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), ExactMatrix::from_i64_rows(&[&[-2], &[-2]]).unwrap());
        assert!(matches!(b.mul(&a), Err(Error::DimensionMismatch(_))));
        assert!(matches!(mat_power(&a, 2), Err(Error::DimensionMismatch(_))));
        assert!(ExactMatrix::from_i64_rows(&[&[1, 2], &[3]]).is_err());
    }

    #[test]
    fn vec_mul_and_trace() {
        let a = ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 1]]).unwrap();
        let v = [BigInt::from(2), BigInt::from(3)];
        assert_eq!(a.vec_mul(&v).unwrap(), [BigInt::from(3), BigInt::from(5)]);
        assert_eq!(a.trace().unwrap(), BigInt::from(1));
        assert_eq!(a.transpose(), a);
    }

    #[test]
    fn power_matches_repeated_product() {
        let a = ExactMatrix::from_i64_rows(&[&[1, -2, 3], &[0, 1, 1], &[2, 0, -1]]).unwrap();
        let mut naive = ExactMatrix::identity(3);
        for n in 0..=20u64 {
            assert_eq!(mat_power(&a, n).unwrap(), naive);
            naive = naive.mul(&a).unwrap();
        }
    }
}
