//! Dense exact matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: Field,
}

impl Matrix {
    /// Row-major constructor; every entry must lie in `field`.
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>, field: Field) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        field.check_all(&data)?;
        Ok(Matrix { rows, cols, data, field })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, field: Field) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(n, cols, rows.into_iter().flatten().collect(), field)
    }

    pub fn from_i64(rows: &[&[i64]], field: Field) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        Self::new(rows.len(), cols, data, field).unwrap()
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols], field }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry from a different field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data, field: self.field }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.field != o.field {
            return Err(Error::MixedFields("matrix product".into()));
        }
        let mut out = Self::zeros(self.rows, o.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect(), field: self.field }
    }

    /// Stacks rows of `o` under `self`.
    pub fn vstack(&self, o: &Self) -> Result<Self> {
        if self.cols != o.cols {
            return Err(Error::Dimension("vstack with different column counts".into()));
        }
        if self.field != o.field {
            return Err(Error::MixedFields("vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Matrix { rows: self.rows + o.rows, cols: self.cols, data, field: self.field })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = idx.iter().flat_map(|&i| self.row(i)).collect();
        Matrix { rows: idx.len(), cols: self.cols, data, field: self.field }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Rank over the matrix's field. Rationals use fraction-free Bareiss
    /// elimination on an integer copy; finite fields use Gaussian elimination.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss_rank(&self.integer_rows()),
            _ => self.rref().1.len(),
        }
    }

    /// Rows scaled to integers (rationals only).
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let mut den = BigInt::one();
                for x in row {
                    den = den.lcm(x.as_rational().unwrap().denom());
                }
                row.iter().map(|x| (x.as_rational().unwrap() * &den).to_integer()).collect()
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..self.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right null space; empty when the rank equals the column count.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(k, f);
                }
                v
            })
            .collect()
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space_basis(&self) -> Matrix {
        let (r, p) = self.rref();
        r.select_rows(&(0..p.len()).collect::<Vec<_>>())
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -&det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.field);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    /// Maps every entry into another field.
    pub fn coerce(&self, field: Field) -> Result<Matrix> {
        let data = self.data.iter().map(|s| field.coerce(s)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data, field })
    }
}

/// Fraction-free rank of an integer matrix.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let n = m.len();
    if n == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..n {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;

    #[test]
    fn rank_examples() {
        let q = Field::Rational;
        assert_eq!(Matrix::zeros(8, 8, q).rank(), 0);
        assert_eq!(Matrix::identity(4, q).rank(), 4);
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]], q);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.coerce(Field::Prime(7)).unwrap().rank(), 2);
    }

    #[test]
    fn mixed_entries_rejected() {
        let data = vec![int(1), Field::Prime(7).one()];
        assert!(matches!(Matrix::new(1, 2, data, Field::Rational), Err(Error::MixedFields(_))));
    }

    #[test]
    fn kernel_examples() {
        let q = Field::Rational;
        assert!(Matrix::identity(3, q).kernel_basis().is_empty());
        let k = Matrix::from_i64(&[&[1, -1]], q).kernel_basis();
        assert_eq!(k, vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn det_and_inverse() {
        let q = Field::Rational;
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]], q);
        assert_eq!(m.det().unwrap(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2, q));
    }
}
