use std::fmt;
use std::ops::{Index, IndexMut};

use super::scalar::{Field, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Coordinate vector; every entry shares one field.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += c * x`, skipping zero entries of `x`.
#[inline]
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(c * xi);
        }
    }
}

pub fn add_vectors(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vectors(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale_vector(c: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|a| c * a).collect()
}

/// Dense exact matrix stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            if let Some(s) = r.iter().find(|s| s.field() != field) {
                return Err(Error::FieldMismatch { expected: field, found: s.field() });
            }
            data.extend(r);
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, cols, rows).expect("rectangular input")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} matrix times vector of length {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let rows: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(unit_vector(self.field, n, i));
                r
            })
            .collect();
        let (red, pivots) = rref_rows(rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let out = red.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(self.field, n, out).expect("square"))
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc += &self[(i, i)];
        }
        acc
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix<{}> {}x{} [", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form of a list of rows, dropping zero rows.
///
/// Pivots are chosen column by column from the left, taking the first row
/// (in current order) with a nonzero entry in that column.
pub fn rref_rows(mut rows: Vec<Vector>, cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if !other[c].is_zero() {
                let factor = -&other[c];
                axpy(other, &factor, pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Unique reduced row-echelon form; zero rows are dropped.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, pivots) = rref_rows(m.to_rows(), m.cols);
    let out = Matrix::from_rows(m.field, m.cols, rows).expect("rows keep their width");
    (out, pivots)
}

/// One solution of `m x = rhs`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(m: &Matrix, rhs: &[Scalar]) -> Result<Option<Vector>> {
    if rhs.len() != m.rows {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {} equations",
            rhs.len(),
            m.rows
        )));
    }
    let rows: Vec<Vector> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let (red, pivots) = rref_rows(rows, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = zero_vector(m.field, m.cols);
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[m.cols].clone();
    }
    Ok(Some(x))
}

/// Basis of `{ x : m x = 0 }` in reduced form.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (red, pivots) = rref_rows(m.to_rows(), m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vecs = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(m.field, m.cols);
        v[free] = m.field.one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        vecs.push(v);
    }
    Subspace::span(m.field, m.cols, vecs).expect("kernel vectors have the ambient width")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero() {
        let q = Field::Rationals;
        let id = Matrix::identity(q, 3);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
        let (r, p) = rref(&Matrix::zeros(q, 2, 3));
        assert_eq!(r.nrows(), 0);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_hand_reduction() {
        let q = Field::Rationals;
        let (r, p) = rref(&Matrix::from_i64(q, &[&[2, 4], &[1, 2]]));
        assert_eq!(r, Matrix::from_i64(q, &[&[1, 2]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let q = Field::Rationals;
        let v: Vector = [3, -1, 7].iter().map(|&x| q.from_i64(x)).collect();
        assert_eq!(solve_linear(&Matrix::identity(q, 3), &v).unwrap(), Some(v.clone()));
        assert_eq!(solve_linear(&Matrix::zeros(q, 3, 3), &v).unwrap(), None);
        assert!(solve_linear(&Matrix::identity(q, 2), &v).is_err());
    }

    #[test]
    fn kernel_over_gf2() {
        let f = Field::Prime(2);
        let k = kernel_basis(&Matrix::from_i64(f, &[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![f.one(), f.one()]);
    }

    #[test]
    fn from_rows_rejects_ragged_and_mixed() {
        let q = Field::Rationals;
        assert!(Matrix::from_rows(q, 2, vec![vec![q.one()]]).is_err());
        let f = Field::Prime(3);
        assert!(Matrix::from_rows(q, 1, vec![vec![f.one()]]).is_err());
    }
}
