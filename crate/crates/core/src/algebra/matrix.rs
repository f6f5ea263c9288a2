//! Dense matrices over a field or over a polynomial ring.
//!
//! Scalar matrices support reduced row echelon form, rank, kernels and
//! determinants. Polynomial matrices carry optional row and column degree
//! labels; when present every nonzero entry in position `(i, j)` is
//! homogeneous of degree `col[j] - row[i]`.

use std::fmt;

use super::field::{Field, Scalar};
use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    row_degrees: Option<Vec<i64>>,
    col_degrees: Option<Vec<i64>>,
}

impl<T: Clone> Matrix<T> {
    /// Builds from row vectors. Panics if rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            row_degrees: None,
            col_degrees: None,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
            row_degrees: self.col_degrees.as_ref().map(|d| d.iter().map(|x| -x).collect()),
            col_degrees: self.row_degrees.as_ref().map(|d| d.iter().map(|x| -x).collect()),
        }
    }

    /// Submatrix on the given row and column indices; degree labels follow.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
            row_degrees: self.row_degrees.as_ref().map(|d| rows.iter().map(|&i| d[i]).collect()),
            col_degrees: self.col_degrees.as_ref().map(|d| cols.iter().map(|&j| d[j]).collect()),
        }
    }

    pub fn row_degrees(&self) -> Option<&[i64]> {
        self.row_degrees.as_deref()
    }

    pub fn col_degrees(&self) -> Option<&[i64]> {
        self.col_degrees.as_deref()
    }
}

impl Matrix<Scalar> {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            row_degrees: None,
            col_degrees: None,
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    pub fn mul(&self, rhs: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let field = match self.data.first().or(rhs.data.first()) {
            Some(s) => s.field(),
            None => return Ok(Matrix::from_rows(vec![Vec::new(); self.rows])),
        };
        let mut out = Self::zeros(field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = &out.data[i * rhs.cols + j] + &(a * rhs.get(k, j));
                    out.data[i * rhs.cols + j] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc: Option<Scalar> = None;
                for (a, b) in self.row(i).iter().zip(v) {
                    let t = a * b;
                    acc = Some(match acc {
                        None => t,
                        Some(s) => &s + &t,
                    });
                }
                acc.unwrap_or_else(|| v.first().map_or(Field::Rationals.zero(), |s| s.field().zero()))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<Scalar>, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        let mut m = Matrix::from_rows(rows);
        m.cols = self.cols;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_rows(&mut rows, self.cols).len()
    }

    /// Basis of the right kernel in reduced row echelon form (leading entries
    /// equal to one, each leading position zero in the other vectors).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        kernel_rows(&self.to_rows(), self.cols)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Field::Rationals.one());
        }
        let field = self.data[0].field();
        let mut a = self.to_rows();
        let mut sign_flip = false;
        let mut prev = field.one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(field.zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = &num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_flip { -d } else { d })
    }

    pub fn inverse(&self) -> Result<Matrix<Scalar>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let field = self.data[0].field();
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
                r
            })
            .collect();
        let pivots = rref_rows(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        Ok(Matrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
    }
}

/// In-place Gauss-Jordan elimination; zero rows are dropped. Returns pivot columns.
pub(crate) fn rref_rows(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        let support: Vec<usize> = (col..ncols).filter(|&j| !rows[r][j].is_zero()).collect();
        for &j in &support {
            rows[r][j] = &rows[r][j] * &inv;
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            if other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for &j in &support {
                other[j] = &other[j] - &(&factor * &pivot_row[j]);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Kernel in reduced echelon form. Eliminating with the columns in reverse
/// order makes the free-variable basis come out already reduced.
pub(crate) fn kernel_rows(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let field = match rows.iter().flatten().next() {
        Some(s) => s.field(),
        None => {
            // Without any entry the field is unknown; callers with an empty
            // matrix and positive width go through `kernel_in`.
            return Vec::new();
        }
    };
    kernel_in(field, rows, ncols)
}

pub(crate) fn kernel_in(field: Field, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut rev: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().rev().cloned().collect()).collect();
    let pivots = rref_rows(&mut rev, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    // Free columns in reversed coordinates; walk them from the original left.
    for free in (0..ncols).rev().filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in rev.iter().zip(&pivots) {
            if pc < free && !row[free].is_zero() {
                v[pc] = -&row[free];
            }
        }
        v.reverse();
        basis.push(v);
    }
    basis
}

impl Matrix<Polynomial> {
    pub fn zeros_in(ring: &PolyRing, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
            row_degrees: None,
            col_degrees: None,
        }
    }

    /// Attaches degree labels after checking every nonzero entry against them.
    pub fn with_degrees(mut self, row_degrees: Vec<i64>, col_degrees: Vec<i64>) -> Result<Self> {
        if row_degrees.len() != self.rows || col_degrees.len() != self.cols {
            return Err(Error::Dimension("degree labels do not match the matrix shape".into()));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let want = col_degrees[j] - row_degrees[i];
                if !e.is_homogeneous() || e.degree().map(i64::from) != Some(want) {
                    return Err(Error::InvalidInput(format!(
                        "entry ({i},{j}) = {e} is not homogeneous of degree {want}"
                    )));
                }
            }
        }
        self.row_degrees = Some(row_degrees);
        self.col_degrees = Some(col_degrees);
        Ok(self)
    }

    /// Expected degree of the determinant of a square labelled matrix.
    pub fn det_degree(&self) -> Option<i64> {
        let r: i64 = self.row_degrees.as_ref()?.iter().sum();
        let c: i64 = self.col_degrees.as_ref()?.iter().sum();
        Some(c - r)
    }

    /// Symbolic determinant by cofactor expansion along the first row,
    /// skipping zero entries.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Err(Error::InvalidInput("determinant of an empty polynomial matrix".into()));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_det(&rows, &cols))
    }

    fn cofactor_det(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        if rows.len() == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        if rows.len() == 2 {
            let a = self.get(rows[0], cols[0]);
            let b = self.get(rows[0], cols[1]);
            let c = self.get(rows[1], cols[0]);
            let d = self.get(rows[1], cols[1]);
            return &(a * d) - &(b * c);
        }
        let ring = self.get(rows[0], cols[0]).ring().clone();
        let mut acc = ring.zero();
        for (k, &j) in cols.iter().enumerate() {
            let e = self.get(rows[0], j);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let minor = self.cofactor_det(&rows[1..], &sub_cols);
            if minor.is_zero() {
                continue;
            }
            let term = e * &minor;
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(crate::algebra::Rational::new(n, d).unwrap())
    }

    #[test]
    fn kernel_single_relation() {
        let m = Matrix::from_i64(Q, &[&[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![vec![q(1, 1), q(-1, 1)]]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Matrix::identity(Q, 3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_is_normalized_echelon() {
        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.kernel_basis(), vec![vec![q(1, 1), q(-1, 2)]]);
        // A wider case: leading ones at distinct positions, zero elsewhere there.
        let m = Matrix::from_i64(Q, &[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0][0], q(1, 1));
        assert_eq!(k[0][1], q(0, 1));
        assert_eq!(k[1][0], q(0, 1));
        assert_eq!(k[1][1], q(1, 1));
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let m = Matrix::zeros(Q, 2, 3);
        assert_eq!(m.kernel_basis().len(), 3);
        assert_eq!(kernel_in(Q, &[], 2).len(), 2);
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_i64(Q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().unwrap(), q(18, 1));
        let m = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), q(-1, 1));
        let m = Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]);
        assert_eq!(m.det().unwrap(), q(0, 1));
        let f7 = Field::Prime(7);
        let m = Matrix::from_i64(f7, &[&[3, 5], &[2, 1]]);
        assert_eq!(m.det().unwrap(), f7.from_i64(3 - 10));
        assert!(matches!(Matrix::zeros(Q, 2, 3).det(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn inverse_and_rank() {
        let m = Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Q, 2));
        let s = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn polynomial_determinants() {
        let r = PolyRing::standard(Q, 3).unwrap();
        let diag = Matrix::from_rows(vec![
            vec![r.var(0), r.zero(), r.zero()],
            vec![r.zero(), r.var(1), r.zero()],
            vec![r.zero(), r.zero(), r.var(2)],
        ]);
        assert_eq!(diag.det().unwrap().to_string(), "x*y*z");
        let c = |n| r.constant(Q.from_i64(n));
        let m = Matrix::from_rows(vec![vec![c(1), c(0)], vec![c(0), c(0)]]);
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn degree_labels_are_checked() {
        let r = PolyRing::standard(Q, 2).unwrap();
        let m = Matrix::from_rows(vec![vec![r.var(0), r.one()], vec![r.parse("x^2 + y^2").unwrap(), r.var(1)]]);
        let labelled = m.clone().with_degrees(vec![0, 1], vec![1, 0]);
        assert!(labelled.is_err());
        let labelled = m.with_degrees(vec![0, -1], vec![1, 0]).unwrap();
        assert_eq!(labelled.det_degree(), Some(2));
        let d = labelled.det().unwrap();
        assert_eq!(d.degree(), Some(2));
        assert!(d.is_homogeneous());
    }
}
