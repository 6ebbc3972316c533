//! Finite-dimensional associative algebras given by structure constants.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::exact::{is_zero_vector, sub_vectors, unit_vector, zero_vector, EchelonBuilder, Field, Matrix, Scalar, Subspace, Vector};

pub mod basic;
pub mod constructions;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Identity token shared by an algebra and its clones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraId(u64);

impl AlgebraId {
    fn fresh() -> Self {
        AlgebraId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// `b_i · b_j = Σ_k c[i][j][k] b_k`.
///
/// Each basis product keeps only its nonzero terms, sorted by `k`.
#[derive(Clone)]
pub struct StructureAlgebra {
    id: AlgebraId,
    field: Field,
    dim: usize,
    table: Vec<Vec<(usize, Scalar)>>,
    unit_index: Option<usize>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for StructureAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructureAlgebra")
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("nonzero_constants", &self.table.iter().map(Vec::len).sum::<usize>())
            .field("unit_index", &self.unit_index)
            .finish()
    }
}

impl PartialEq for StructureAlgebra {
    /// Same field, dimension and structure constants; identity tokens and
    /// labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssociativityReport {
    Associative,
    /// First basis triple (in lexicographic order) with `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    Violation { i: usize, j: usize, k: usize },
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        matches!(self, AssociativityReport::Associative)
    }
}

impl StructureAlgebra {
    /// The algebra with identically zero multiplication.
    pub fn zero_product(field: Field, dim: usize) -> Self {
        StructureAlgebra { id: AlgebraId::fresh(), field, dim, table: vec![Vec::new(); dim * dim], unit_index: None, labels: None }
    }

    /// Builds from `(i, j, k, c)` entries; repeated triples are summed and
    /// zeros dropped.
    pub fn from_triples(field: Field, dim: usize, triples: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Result<Self> {
        let mut table: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::IndexOutOfRange(format!("structure constant ({i},{j},{k}) in dimension {dim}")));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch { expected: field, found: c.field() });
            }
            table[i * dim + j].push((k, c));
        }
        for terms in table.iter_mut() {
            if terms.len() <= 1 {
                terms.retain(|(_, c)| !c.is_zero());
                continue;
            }
            let mut acc = zero_vector(field, dim);
            for (k, c) in terms.drain(..) {
                acc[k] += &c;
            }
            terms.extend(acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()));
        }
        Ok(StructureAlgebra { id: AlgebraId::fresh(), field, dim, table, unit_index: None, labels: None })
    }

    /// Builds from a dense tensor `c[i][j][k]`.
    pub fn from_dense(field: Field, c: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let dim = c.len();
        let mut triples = Vec::new();
        for (i, ci) in c.iter().enumerate() {
            if ci.len() != dim {
                return Err(Error::ShapeMismatch("structure tensor is not cubic".into()));
            }
            for (j, cij) in ci.iter().enumerate() {
                if cij.len() != dim {
                    return Err(Error::ShapeMismatch("structure tensor is not cubic".into()));
                }
                for (k, x) in cij.iter().enumerate() {
                    if !x.is_zero() {
                        triples.push((i, j, k, x.clone()));
                    }
                }
            }
        }
        Self::from_triples(field, dim, triples)
    }

    /// Builds from the product of every pair of basis vectors.
    pub fn from_basis_products(field: Field, dim: usize, mut product: impl FnMut(usize, usize) -> Vector) -> Result<Self> {
        let mut triples = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
                }
                triples.extend(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (i, j, k, c)));
            }
        }
        Self::from_triples(field, dim, triples)
    }

    /// Marks basis element `idx` as the two-sided identity, after checking it.
    pub fn with_unit(mut self, idx: usize) -> Result<Self> {
        if idx >= self.dim {
            return Err(Error::IndexOutOfRange(format!("unit index {idx} in dimension {}", self.dim)));
        }
        let one = unit_vector(self.field, self.dim, idx);
        for j in 0..self.dim {
            let b = unit_vector(self.field, self.dim, j);
            if self.mul_vec(&one, &b) != b || self.mul_vec(&b, &one) != b {
                return Err(Error::InvalidStructure(format!("basis element {idx} is not a two-sided identity")));
            }
        }
        self.unit_index = Some(idx);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The same algebra on the basis `b'_j = Σ_k p[k][j] b_k`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        if p.nrows() != self.dim || p.ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.nrows() });
        }
        let inv = p.inverse().ok_or_else(|| Error::InvalidStructure("change of basis is singular".into()))?;
        let cols: Vec<Vector> = (0..self.dim).map(|j| (0..self.dim).map(|k| p[(k, j)].clone()).collect()).collect();
        let out = Self::from_basis_products(self.field, self.dim, |i, j| {
            inv.mul_vec(&self.mul_vec(&cols[i], &cols[j])).expect("square")
        })?;
        Ok(out)
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.unit_index
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i * self.dim + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    /// Nonzero terms of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    /// All nonzero structure constants in `(i, j, k)` order.
    pub fn nonzero_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        self.table.iter().enumerate().flat_map(move |(ij, terms)| {
            terms.iter().map(move |(k, c)| (ij / self.dim, ij % self.dim, *k, c))
        })
    }

    pub fn zero_vector(&self) -> Vector {
        zero_vector(self.field, self.dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    /// Bilinear product on coordinate vectors.
    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let mut out = self.zero_vector();
        let ys: Vec<(usize, &Scalar)> = y.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let row = &self.table[i * self.dim..(i + 1) * self.dim];
            for &(j, yj) in &ys {
                let terms = &row[j];
                if terms.is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in terms {
                    out[*k] += &(&c * s);
                }
            }
        }
        out
    }

    /// `b_i · y`
    pub fn left_basis_mul(&self, i: usize, y: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, s) in &self.table[i * self.dim + j] {
                out[*k] += &(yj * s);
            }
        }
        out
    }

    /// `x · b_j`
    pub fn right_basis_mul(&self, x: &[Scalar], j: usize) -> Vector {
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, s) in &self.table[i * self.dim + j] {
                out[*k] += &(xi * s);
            }
        }
        out
    }

    /// `xy - yx`
    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        sub_vectors(&self.mul_vec(x, y), &self.mul_vec(y, x))
    }

    /// Matrix of `y ↦ x y` in the standard basis (columns are images).
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.right_basis_mul(x, j);
            for (k, c) in col.into_iter().enumerate() {
                m[(k, j)] = c;
            }
        }
        m
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        if let Some(s) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch { expected: self.field, found: s.field() });
        }
        Ok(())
    }

    pub fn element(&self, coords: Vector) -> Result<Element> {
        self.check_vector(&coords)?;
        Ok(Element { parent: self.id, coords })
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element { parent: self.id, coords: self.basis_vector(i) }
    }

    fn check_parent(&self, x: &Element) -> Result<()> {
        if x.parent != self.id {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        Ok(Element { parent: self.id, coords: self.mul_vec(&x.coords, &y.coords) })
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        Ok(Element { parent: self.id, coords: self.bracket_vec(&x.coords, &y.coords) })
    }

    /// Checks `(b_i b_j) b_k = b_i (b_j b_k)` on every basis triple.
    pub fn verify_associativity(&self) -> AssociativityReport {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let bij = &self.table[i * n + j];
                for k in 0..n {
                    let mut lhs = self.zero_vector();
                    for (m, c) in bij {
                        for (l, d) in &self.table[m * n + k] {
                            lhs[*l] += &(c * d);
                        }
                    }
                    let mut rhs = self.zero_vector();
                    for (m, c) in &self.table[j * n + k] {
                        for (l, d) in &self.table[i * n + m] {
                            rhs[*l] += &(c * d);
                        }
                    }
                    if lhs != rhs {
                        return AssociativityReport::Violation { i, j, k };
                    }
                }
            }
        }
        AssociativityReport::Associative
    }

    /// `Â = A ⊕ F·1`; the adjoined identity is the last basis vector.
    pub fn unitalize(&self) -> UnitalExtension {
        let n = self.dim;
        let one = self.field.one();
        let mut table: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); (n + 1) * (n + 1)];
        for i in 0..n {
            for j in 0..n {
                table[i * (n + 1) + j] = self.table[i * n + j].clone();
            }
            table[i * (n + 1) + n] = vec![(i, one.clone())];
            table[n * (n + 1) + i] = vec![(i, one.clone())];
        }
        table[n * (n + 1) + n] = vec![(n, one)];
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.push("1".to_string());
            l
        });
        let hat = StructureAlgebra { id: AlgebraId::fresh(), field: self.field, dim: n + 1, table, unit_index: Some(n), labels };
        UnitalExtension { hat, base_dim: n }
    }

    fn check_subspace(&self, u: &Subspace) -> Result<()> {
        if u.field() != self.field {
            return Err(Error::FieldMismatch { expected: self.field, found: u.field() });
        }
        if u.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.ambient_dim() });
        }
        Ok(())
    }

    /// `span{ x y : x ∈ basis(u), y ∈ basis(v) }`.
    pub fn subspace_product(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut b = EchelonBuilder::new(self.field, self.dim);
        'outer: for x in u.basis() {
            for y in v.basis() {
                if b.is_full() {
                    break 'outer;
                }
                b.insert(self.mul_vec(x, y));
            }
        }
        Ok(b.finish())
    }

    /// `span{ [x, y] : x ∈ basis(u), y ∈ basis(v) }`.
    pub fn subspace_bracket(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut b = EchelonBuilder::new(self.field, self.dim);
        for x in u.basis() {
            for y in v.basis() {
                b.insert(self.bracket_vec(x, y));
            }
        }
        Ok(b.finish())
    }

    /// `A² = span{ b_i b_j }`.
    pub fn algebra_square(&self) -> Subspace {
        let mut b = EchelonBuilder::new(self.field, self.dim);
        for terms in &self.table {
            if b.is_full() {
                break;
            }
            if terms.is_empty() {
                continue;
            }
            let mut v = self.zero_vector();
            for (k, c) in terms {
                v[*k] = c.clone();
            }
            b.insert(v);
        }
        b.finish()
    }

    /// Two-sided ideal generated by `gen`: the fixed point of
    /// `U ← U + AU + UA`.
    pub fn ideal_closure(&self, gen: &Subspace) -> Result<Subspace> {
        self.check_subspace(gen)?;
        let n = self.dim;
        Ok(fixed_point(self.field, n, gen.basis().to_vec(), |x, _, out| {
            for i in 0..n {
                out.push(self.left_basis_mul(i, x));
                out.push(self.right_basis_mul(x, i));
            }
        }))
    }

    /// Smallest subspace containing `gen` and closed under left and right
    /// multiplication by elements of `multipliers`.
    pub fn bimodule_closure(&self, gen: &Subspace, multipliers: &Subspace) -> Result<Subspace> {
        self.check_subspace(gen)?;
        self.check_subspace(multipliers)?;
        let m = multipliers.basis();
        Ok(fixed_point(self.field, self.dim, gen.basis().to_vec(), |x, _, out| {
            for s in m {
                out.push(self.mul_vec(s, x));
                out.push(self.mul_vec(x, s));
            }
        }))
    }

    /// Associative subalgebra generated by `gen`.
    pub fn subalgebra_closure(&self, gen: &Subspace) -> Result<Subspace> {
        self.check_subspace(gen)?;
        Ok(fixed_point(self.field, self.dim, gen.basis().to_vec(), |x, all, out| {
            for y in all {
                out.push(self.mul_vec(x, y));
                out.push(self.mul_vec(y, x));
            }
        }))
    }

    pub fn is_subalgebra(&self, u: &Subspace) -> Result<bool> {
        let p = self.subspace_product(u, u)?;
        u.contains(&p)
    }

    /// Whether `A u + u A ⊆ u`.
    pub fn is_ideal(&self, u: &Subspace) -> Result<bool> {
        self.check_subspace(u)?;
        for x in u.basis() {
            for i in 0..self.dim {
                if !u.contains_vector(&self.left_basis_mul(i, x))? || !u.contains_vector(&self.right_basis_mul(x, i))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `[x, y] ∈ u` for all `x, y ∈ u`.
    pub fn is_lie_closed(&self, u: &Subspace) -> Result<bool> {
        let d = self.subspace_bracket(u, u)?;
        u.contains(&d)
    }
}

/// Closure of a seed set under an expansion rule.
///
/// `expand(x, current, out)` pushes the vectors derived from a newly added
/// basis vector `x`; `current` is the basis at the start of the round. Only
/// vectors added in the previous round are expanded, which reaches the same
/// fixed point as re-expanding the whole basis because every rule used here
/// is linear in `x`.
pub(crate) fn fixed_point<F>(field: Field, ambient: usize, seed: Vec<Vector>, mut expand: F) -> Subspace
where
    F: FnMut(&[Scalar], &[Vector], &mut Vec<Vector>),
{
    let mut b = EchelonBuilder::new(field, ambient);
    let mut frontier: Vec<usize> = seed.into_iter().filter_map(|v| b.insert(v)).collect();
    let mut rounds = 0usize;
    let mut out = Vec::new();
    while !frontier.is_empty() && !b.is_full() {
        rounds += 1;
        assert!(rounds <= ambient + 1, "closure failed to stabilise within {ambient} rounds");
        let current = b.rows().to_vec();
        let mut next = Vec::new();
        for &idx in &frontier {
            out.clear();
            expand(&current[idx], &current, &mut out);
            for v in out.drain(..) {
                if is_zero_vector(&v) {
                    continue;
                }
                if let Some(k) = b.insert(v) {
                    next.push(k);
                }
            }
        }
        frontier = next;
    }
    b.finish()
}

/// Element of a specific algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    parent: AlgebraId,
    coords: Vector,
}

impl Element {
    pub fn parent(&self) -> AlgebraId {
        self.parent
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coords)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(Element { parent: self.parent, coords: crate::exact::add_vectors(&self.coords, &other.coords) })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(Element { parent: self.parent, coords: sub_vectors(&self.coords, &other.coords) })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element { parent: self.parent, coords: crate::exact::scale_vector(c, &self.coords) }
    }
}

/// `Â = A ⊕ F·1` together with the embedding of `A`.
#[derive(Debug, Clone)]
pub struct UnitalExtension {
    hat: StructureAlgebra,
    base_dim: usize,
}

impl UnitalExtension {
    pub fn hat(&self) -> &StructureAlgebra {
        &self.hat
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Coordinates of the adjoined identity.
    pub fn one(&self) -> Vector {
        unit_vector(self.hat.field(), self.base_dim + 1, self.base_dim)
    }

    pub fn embed(&self, x: &[Scalar]) -> Vector {
        let mut v = x.to_vec();
        v.push(self.hat.field().zero());
        v
    }

    /// Back to `A` coordinates; `None` if the identity component is nonzero.
    pub fn project(&self, x: &[Scalar]) -> Option<Vector> {
        if !x[self.base_dim].is_zero() {
            return None;
        }
        Some(x[..self.base_dim].to_vec())
    }

    /// Image of `A` inside `Â`.
    pub fn base_image(&self) -> Subspace {
        let f = self.hat.field();
        let n = self.base_dim;
        Subspace::span(f, n + 1, (0..n).map(|i| unit_vector(f, n + 1, i)).collect::<Vec<_>>()).expect("well-formed")
    }

    /// `x y` for elements of `Â`, with `x = a + α·1` etc.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.hat.mul_vec(x, y)
    }
}

#[cfg(test)]
mod tests;
