//! Dense matrices over an exact field, with canonical row reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<S: Scalar> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn add_vectors<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub_vectors<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale_vector<S: Scalar>(c: &S, v: &[S]) -> Vec<S> {
    v.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn is_zero_vector<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Standard basis vector `e_i` (zero-based) of length `n`.
pub fn unit_vector<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Matrix unit `E_ij` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, S::one());
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>], rows: usize) -> Result<Self> {
        Ok(Self::from_rows(cols.to_vec(), rows)?.transpose())
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
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

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<S> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vector(c, &self.data) }
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.matmul(self);
        }
        acc
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.hstack(b).vstack(&c.hstack(d))
    }

    /// Reduced row-echelon form. Pivot entries are 1 and every other entry of a
    /// pivot column is 0, so the result is unique for a given row space.
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(row, j).clone() * inv.clone();
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j).clone() - factor.clone() * m.get(row, j).clone();
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> Self {
        let r = self.rref();
        r.matrix.block(0, r.rank, 0, self.cols)
    }

    /// Basis of `{v : self * v = 0}` as the rows of a matrix in RREF.
    pub fn kernel_basis(&self) -> Self {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![S::zero(); self.cols];
            v[f] = S::one();
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.matrix.get(i, f).clone();
            }
            rows.push(v);
        }
        Matrix::from_rows(rows, self.cols).expect("kernel rows have ambient length").row_space_basis()
    }

    /// Some `x` with `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[S]) -> Result<Option<Vec<S>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let aug = self.hstack(&Matrix::from_fn(self.rows, 1, |i, _| b[i].clone()));
        let r = aug.rref();
        if r.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![S::zero(); self.cols];
        for (i, &p) in r.pivots.iter().enumerate() {
            x[p] = r.matrix.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn try_invert(&self) -> Result<Option<Self>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols, expected: self.rows });
        }
        let n = self.rows;
        let r = self.hstack(&Self::identity(n)).rref();
        if r.pivots.iter().take_while(|&&p| p < n).count() < n {
            return Ok(None);
        }
        Ok(Some(r.matrix.block(0, n, n, 2 * n)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Self) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add_vectors(&self.data, &rhs.data) }
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Self) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub_vectors(&self.data, &rhs.data) }
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x.clone()).collect() }
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gf2, Rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect()).collect(), cols)
            .unwrap()
    }

    fn gf2(rows: &[&[i64]]) -> Matrix<Gf2> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Gf2::from_i64(x)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn rref_zero_matrix() {
        let r = q(&[&[0, 0], &[0, 0]]).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_proportional_rows() {
        let r = q(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r.matrix, q(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_over_gf2() {
        let r = gf2(&[&[1, 1], &[1, 0]]).rref();
        assert_eq!(r.matrix, gf2(&[&[1, 0], &[0, 1]]));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::<Rational>::identity(3).kernel_basis().rows(), 0);
        assert_eq!(q(&[&[1, 0, 0]]).kernel_basis(), q(&[&[0, 1, 0], &[0, 0, 1]]));

        // Oracle: enumerate all of GF(2)^3 and keep the vectors killed by [1 1 1].
        let m = gf2(&[&[1, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        let mut killed = 0;
        for bits in 0..8u64 {
            let v: Vec<Gf2> = (0..3).map(|i| Gf2::new((bits >> i) & 1)).collect();
            if is_zero_vector(&m.mul_vec(&v)) {
                killed += 1;
            }
        }
        assert_eq!(killed, 1 << k.rows());
        let target: Vec<Gf2> = [1, 1, 0].iter().map(|&x| Gf2::from_i64(x)).collect();
        let coeffs = k.transpose().solve(&target).unwrap();
        assert!(coeffs.is_some(), "(1,1,0) must lie in the kernel span");
    }

    #[test]
    fn solve_examples() {
        let b: Vec<Rational> = [4, -1].iter().map(|&x| Rational::from_i64(x)).collect();
        assert_eq!(Matrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
        let x = q(&[&[1, 2]]).solve(&[Rational::from_i64(3)]).unwrap().unwrap();
        assert_eq!(x, vec![Rational::from_i64(3), Rational::from_i64(0)]);
        let none = q(&[&[1], &[1]]).solve(&[Rational::from_i64(1), Rational::from_i64(2)]).unwrap();
        assert!(none.is_none());
        assert!(q(&[&[1]]).solve(&[]).is_err());
    }

    #[test]
    fn invert_examples() {
        let i = Matrix::<Rational>::identity(3);
        assert_eq!(i.try_invert().unwrap(), Some(i.clone()));
        assert_eq!(q(&[&[1, 1], &[0, 1]]).try_invert().unwrap(), Some(q(&[&[1, -1], &[0, 1]])));
        assert_eq!(q(&[&[1, 1], &[1, 1]]).try_invert().unwrap(), None);
        assert!(q(&[&[1, 1]]).try_invert().is_err());
    }
}
