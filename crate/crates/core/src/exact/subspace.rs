use super::matrix::{axpy, is_zero_vector, kernel_basis, zero_vector, Matrix, Vector};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Subspace of `F^n` held as a reduced row-echelon basis.
///
/// Because the basis is canonical, two subspaces are equal exactly when their
/// representations are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace<{}>(dim {} in {}) {:?}", self.field, self.dim(), self.ambient, self.rows)
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| super::matrix::unit_vector(field, ambient, i)).collect();
        Subspace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary vectors.
    pub fn span(field: Field, ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Result<Self> {
        let mut b = EchelonBuilder::new(field, ambient);
        for v in vectors {
            b.try_insert(v)?;
        }
        Ok(b.finish())
    }

    pub fn from_matrix_rows(m: &Matrix) -> Self {
        Self::span(m.field(), m.ncols(), m.to_rows()).expect("rows match the column count")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.rows.clone()).expect("consistent basis")
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { expected: self.field, found: other.field });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        if let Some(s) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch { expected: self.field, found: s.field() });
        }
        Ok(())
    }

    /// Residue of `v` after clearing every pivot column; zero iff `v` is in
    /// the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        self.check_vector(v)?;
        Ok(is_zero_vector(&self.reduce(v)))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>> {
        if !self.contains_vector(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Linear combination of basis rows.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        debug_assert_eq!(coords.len(), self.rows.len());
        let mut out = zero_vector(self.field, self.ambient);
        for (c, row) in coords.iter().zip(&self.rows) {
            axpy(&mut out, c, row);
        }
        out
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.rows.iter().all(|r| is_zero_vector(&self.reduce(r))))
    }

    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut b = EchelonBuilder::from_subspace(self);
        for r in &other.rows {
            b.insert(r.clone());
        }
        Ok(b.finish())
    }

    /// Intersection through the kernel of the stacked system `[A; B]^T`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let r = self.dim();
        let mut stacked: Vec<Vector> = self.rows.clone();
        stacked.extend(other.rows.iter().cloned());
        let m = Matrix::from_rows(self.field, self.ambient, stacked)?.transpose();
        let ker = kernel_basis(&m);
        let vecs = ker.basis().iter().map(|c| {
            let mut v = zero_vector(self.field, self.ambient);
            for (ci, row) in c[..r].iter().zip(&self.rows) {
                axpy(&mut v, ci, row);
            }
            v
        });
        Subspace::span(self.field, self.ambient, vecs.collect::<Vec<_>>())
    }

    /// A complement spanned by standard basis vectors at non-pivot columns.
    pub fn standard_complement(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Incremental spanning-set reducer.
///
/// Rows are kept in semi-echelon form: each inserted row is zero at the
/// pivots of the rows inserted before it. [`EchelonBuilder::finish`]
/// back-substitutes into the unique reduced form.
#[derive(Clone)]
pub struct EchelonBuilder {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: Field, ambient: usize) -> Self {
        EchelonBuilder { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        EchelonBuilder { field: s.field, ambient: s.ambient, rows: s.rows.clone(), pivots: s.pivots.clone() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    fn reduce_in_place(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                axpy(v, &c, row);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        is_zero_vector(&w)
    }

    /// Inserts `v`; returns the index of the new row when the rank grew.
    pub fn insert(&mut self, mut v: Vector) -> Option<usize> {
        debug_assert_eq!(v.len(), self.ambient);
        if self.is_full() || is_zero_vector(&v) {
            return None;
        }
        self.reduce_in_place(&mut v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].inv().expect("nonzero");
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        Some(self.rows.len() - 1)
    }

    pub fn try_insert(&mut self, v: Vector) -> Result<Option<usize>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        if let Some(s) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch { expected: self.field, found: s.field() });
        }
        Ok(self.insert(v))
    }

    pub fn finish(mut self) -> Subspace {
        // Reverse insertion order: each row is already zero at the pivots of
        // earlier rows, so clearing later pivots first never reintroduces
        // entries at pivots that were already cleared.
        for k in (0..self.rows.len()).rev() {
            let p = self.pivots[k];
            let row = std::mem::take(&mut self.rows[k]);
            for (j, other) in self.rows.iter_mut().enumerate() {
                if j != k && !other[p].is_zero() {
                    let c = -&other[p];
                    axpy(other, &c, &row);
                }
            }
            self.rows[k] = row;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.pivots[k]);
        let mut rows = Vec::with_capacity(order.len());
        let mut pivots = Vec::with_capacity(order.len());
        let mut taken: Vec<Option<Vector>> = self.rows.into_iter().map(Some).collect();
        for k in order {
            rows.push(taken[k].take().expect("each row used once"));
            pivots.push(self.pivots[k]);
        }
        Subspace { field: self.field, ambient: self.ambient, rows, pivots }
    }
}
