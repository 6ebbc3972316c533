use crate::algcore::{AlgebraId, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exact::{axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, Field, Scalar, Subspace, Vector};

/// Images of the matrix units `e_st` of one block `M_n`, stored row-major
/// with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixUnits {
    size: usize,
    units: Vec<Vector>,
}

impl MatrixUnits {
    pub fn new(size: usize, units: Vec<Vector>) -> Result<Self> {
        if size == 0 || units.len() != size * size {
            return Err(Error::ShapeMismatch(format!("{} matrix units for a block of size {size}", units.len())));
        }
        let n = units[0].len();
        if units.iter().any(|u| u.len() != n) {
            return Err(Error::ShapeMismatch("matrix units of different lengths".into()));
        }
        Ok(MatrixUnits { size, units })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `e_st`, 0-based.
    pub fn unit(&self, s: usize, t: usize) -> &Vector {
        &self.units[s * self.size + t]
    }

    pub fn units(&self) -> &[Vector] {
        &self.units
    }

    /// `Σ_s e_ss`
    pub fn identity(&self) -> Vector {
        let mut out = self.units[0].iter().map(|c| c.field().zero()).collect::<Vec<_>>();
        let one = self.units[0][0].field().one();
        for s in 0..self.size {
            axpy(&mut out, &one, self.unit(s, s));
        }
        out
    }

    /// `Σ_st x_st e_st` for an `n × n` coefficient matrix given row-major.
    pub fn combine(&self, x: &[Scalar]) -> Vector {
        let mut out = self.units[0].iter().map(|c| c.field().zero()).collect::<Vec<_>>();
        for (c, u) in x.iter().zip(&self.units) {
            axpy(&mut out, c, u);
        }
        out
    }
}

/// `S = ⊕_i M_{n_i}` sitting inside an algebra `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemisimpleEmbedding {
    parent: AlgebraId,
    field: Field,
    ambient: usize,
    blocks: Vec<MatrixUnits>,
}

impl SemisimpleEmbedding {
    pub fn new(a: &StructureAlgebra, blocks: Vec<MatrixUnits>) -> Result<Self> {
        for b in &blocks {
            for u in b.units() {
                if u.len() != a.dim() {
                    return Err(Error::DimensionMismatch { expected: a.dim(), found: u.len() });
                }
                if let Some(s) = u.iter().find(|s| s.field() != a.field()) {
                    return Err(Error::FieldMismatch { expected: a.field(), found: s.field() });
                }
            }
        }
        Ok(SemisimpleEmbedding { parent: a.id(), field: a.field(), ambient: a.dim(), blocks })
    }

    pub fn parent(&self) -> AlgebraId {
        self.parent
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn blocks(&self) -> &[MatrixUnits] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(MatrixUnits::size).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub(crate) fn check_parent(&self, a: &StructureAlgebra) -> Result<()> {
        if a.id() != self.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    /// `S` as a subspace of `A`.
    pub fn span(&self) -> Subspace {
        Subspace::span(self.field, self.ambient, self.blocks.iter().flat_map(|b| b.units().iter().cloned()).collect::<Vec<_>>())
            .expect("units have the ambient width")
    }

    /// `S_i` as a subspace of `A`.
    pub fn block_span(&self, i: usize) -> Subspace {
        Subspace::span(self.field, self.ambient, self.blocks[i].units().to_vec()).expect("units have the ambient width")
    }

    /// `1_{S_i}`
    pub fn block_identity(&self, i: usize) -> Vector {
        self.blocks[i].identity()
    }

    /// `1_S = Σ_i 1_{S_i}` in `A` coordinates.
    pub fn identity(&self) -> Vector {
        let mut out = zero_vector(self.field, self.ambient);
        let one = self.field.one();
        for b in &self.blocks {
            axpy(&mut out, &one, &b.identity());
        }
        out
    }

    /// `f = 1 − 1_S` in the coordinates of the unitalization (identity last).
    pub fn zero_idempotent(&self) -> Vector {
        let mut one = unit_vector(self.field, self.ambient + 1, self.ambient);
        let mut s = self.identity();
        s.push(self.field.zero());
        one = sub_vectors(&one, &s);
        one
    }

    /// Whether `1_S` is a two-sided identity of `A`, in which case `f = 0`
    /// acts trivially on `A`.
    pub fn is_unital_in(&self, a: &StructureAlgebra) -> bool {
        let e = self.identity();
        (0..a.dim()).all(|j| {
            let b = a.basis_vector(j);
            a.mul_vec(&e, &b) == b && a.mul_vec(&b, &e) == b
        })
    }
}

/// First failure found by [`verify_embedding`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    Parent,
    /// `e_st^(i) e_uv^(j)` differs from `δ_ij δ_tu e_sv^(i)`; indices 0-based.
    UnitRelation { i: usize, s: usize, t: usize, j: usize, u: usize, v: usize },
    /// The unit images are linearly dependent.
    Dependent { expected: usize, rank: usize },
    ZeroUnit { i: usize, s: usize, t: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub violation: Option<EmbeddingViolation>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the matrix-unit relations, linear independence and hence closure
/// of `S` under multiplication.
pub fn verify_embedding(a: &StructureAlgebra, emb: &SemisimpleEmbedding) -> EmbeddingReport {
    let fail = |v| EmbeddingReport { violation: Some(v) };
    if emb.parent != a.id() {
        return fail(EmbeddingViolation::Parent);
    }
    for (i, bi) in emb.blocks.iter().enumerate() {
        let n = bi.size();
        for s in 0..n {
            for t in 0..n {
                if is_zero_vector(bi.unit(s, t)) {
                    return fail(EmbeddingViolation::ZeroUnit { i, s, t });
                }
            }
        }
    }
    for (i, bi) in emb.blocks.iter().enumerate() {
        for (j, bj) in emb.blocks.iter().enumerate() {
            for s in 0..bi.size() {
                for t in 0..bi.size() {
                    let x = bi.unit(s, t);
                    for u in 0..bj.size() {
                        for v in 0..bj.size() {
                            let p = a.mul_vec(x, bj.unit(u, v));
                            let ok = if i == j && t == u { &p == bi.unit(s, v) } else { is_zero_vector(&p) };
                            if !ok {
                                return fail(EmbeddingViolation::UnitRelation { i, s, t, j, u, v });
                            }
                        }
                    }
                }
            }
        }
    }
    let expected: usize = emb.blocks.iter().map(|b| b.size() * b.size()).sum();
    let rank = emb.span().dim();
    if rank != expected {
        return fail(EmbeddingViolation::Dependent { expected, rank });
    }
    EmbeddingReport { violation: None }
}
