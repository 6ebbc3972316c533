//! The decomposition `A ≅ ⊕_{i,j} V_ij ⊗ Λ(i,j)` relative to a split
//! semisimple subalgebra `S`.
//!
//! Index `0` is the trivial index: its "matrix unit" is `f = 1 − 1_S` in the
//! unitalization, which acts on `A` by `x ↦ x − 1_S x` and `x ↦ x − x 1_S`.
//! Indices `1..=s` are the blocks of `S` in embedding order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algcore::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exact::{axpy, is_zero_vector, sub_vectors, zero_vector, EchelonBuilder, Matrix, Scalar, Subspace, Vector};

mod embedding;

pub use embedding::{verify_embedding, EmbeddingReport, EmbeddingViolation, MatrixUnits, SemisimpleEmbedding};

/// Corners `Λ(i,j) = ε_i A ε_j` and the induced algebra `Λ_A`.
#[derive(Debug, Clone)]
pub struct SDecomposition<'a> {
    a: &'a StructureAlgebra,
    emb: SemisimpleEmbedding,
    one_s: Vector,
    sizes: Vec<usize>,
    lambda: Vec<Vec<Subspace>>,
    offsets: Vec<Vec<usize>>,
    lambda_algebra: StructureAlgebra,
    tensor_offsets: Vec<Vec<usize>>,
}

/// Position of a basis element `E_st ⊗ λ_k` of `⊕ V_ij ⊗ Λ(i,j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TensorIndex {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub t: usize,
    pub k: usize,
}

/// Builds the decomposition; the embedding must pass [`verify_embedding`].
pub fn decompose<'a>(a: &'a StructureAlgebra, emb: &SemisimpleEmbedding) -> Result<SDecomposition<'a>> {
    let report = verify_embedding(a, emb);
    if let Some(v) = report.violation {
        return Err(match v {
            EmbeddingViolation::Parent => Error::ParentMismatch,
            other => Error::InvalidStructure(format!("embedding check failed: {other:?}")),
        });
    }
    let r = emb.blocks().len() + 1;
    let mut sizes = vec![1];
    sizes.extend(emb.block_sizes());
    let one_s = emb.identity();
    let mut d = SDecomposition {
        a,
        emb: emb.clone(),
        one_s,
        sizes,
        lambda: Vec::new(),
        offsets: Vec::new(),
        lambda_algebra: StructureAlgebra::zero_product(a.field(), 0),
        tensor_offsets: Vec::new(),
    };
    let mut lambda = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            let mut b = EchelonBuilder::new(a.field(), a.dim());
            for x in 0..a.dim() {
                b.insert(d.sandwich(i, &a.basis_vector(x), j));
            }
            row.push(b.finish());
        }
        lambda.push(row);
    }
    let mut offsets = vec![vec![0; r]; r];
    let mut total = 0;
    for i in 0..r {
        for j in 0..r {
            offsets[i][j] = total;
            total += lambda[i][j].dim();
        }
    }
    let mut tensor_offsets = vec![vec![0; r]; r];
    let mut tdim = 0;
    for i in 0..r {
        for j in 0..r {
            tensor_offsets[i][j] = tdim;
            tdim += d.sizes[i] * d.sizes[j] * lambda[i][j].dim();
        }
    }
    if tdim != a.dim() {
        return Err(Error::InternalInconsistency(format!("Σ n_i n_j dim Λ(i,j) = {tdim} but dim A = {}", a.dim())));
    }
    let mut triples = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for l in 0..r {
                for (p, x) in lambda[i][j].basis().iter().enumerate() {
                    for (q, y) in lambda[j][l].basis().iter().enumerate() {
                        let prod = a.mul_vec(x, y);
                        if is_zero_vector(&prod) {
                            continue;
                        }
                        let c = lambda[i][l].coordinates(&prod)?.ok_or_else(|| {
                            Error::InternalInconsistency(format!("Λ({i},{j})Λ({j},{l}) leaves Λ({i},{l})"))
                        })?;
                        for (z, cz) in c.into_iter().enumerate() {
                            if !cz.is_zero() {
                                triples.push((offsets[i][j] + p, offsets[j][l] + q, offsets[i][l] + z, cz));
                            }
                        }
                    }
                }
            }
        }
    }
    d.lambda_algebra = StructureAlgebra::from_triples(a.field(), total, triples)?;
    d.lambda = lambda;
    d.offsets = offsets;
    d.tensor_offsets = tensor_offsets;
    Ok(d)
}

impl<'a> SDecomposition<'a> {
    pub fn algebra(&self) -> &'a StructureAlgebra {
        self.a
    }

    pub fn embedding(&self) -> &SemisimpleEmbedding {
        &self.emb
    }

    /// Number of indices including the trivial index 0.
    pub fn index_count(&self) -> usize {
        self.sizes.len()
    }

    /// `n_i`, with `n_0 = 1`.
    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `Λ(i,j)` as a subspace of `A`.
    pub fn lambda(&self, i: usize, j: usize) -> &Subspace {
        &self.lambda[i][j]
    }

    /// `dim Λ(i,j)` for all index pairs.
    pub fn lambda_dims(&self) -> Vec<Vec<usize>> {
        self.lambda.iter().map(|row| row.iter().map(Subspace::dim).collect()).collect()
    }

    /// `Λ_A = ⊕ Λ(i,j)` with the basis of each corner in order of `(i, j)`.
    pub fn lambda_algebra(&self) -> &StructureAlgebra {
        &self.lambda_algebra
    }

    /// Offset of `Λ(i,j)` inside the basis of [`Self::lambda_algebra`].
    pub fn lambda_offset(&self, i: usize, j: usize) -> usize {
        self.offsets[i][j]
    }

    /// `1_i = e_11^(i)`, the identity of `Λ(i,i)` for `i ≥ 1`.
    pub fn lambda_identity(&self, i: usize) -> Option<&Vector> {
        (i > 0).then(|| self.emb.blocks()[i - 1].unit(0, 0))
    }

    /// `e_st^(i)`, 0-based; `None` for the trivial index, whose unit `f`
    /// lies outside `A`.
    pub fn unit(&self, i: usize, s: usize, t: usize) -> Option<&Vector> {
        (i > 0).then(|| self.emb.blocks()[i - 1].unit(s, t))
    }

    /// `e_st^(i) x`, with `f x` for the trivial index.
    pub fn left_unit(&self, i: usize, s: usize, t: usize, x: &[Scalar]) -> Vector {
        match self.unit(i, s, t) {
            Some(u) => self.a.mul_vec(u, x),
            None => sub_vectors(x, &self.a.mul_vec(&self.one_s, x)),
        }
    }

    /// `x e_st^(j)`, with `x f` for the trivial index.
    pub fn right_unit(&self, x: &[Scalar], j: usize, s: usize, t: usize) -> Vector {
        match self.unit(j, s, t) {
            Some(u) => self.a.mul_vec(x, u),
            None => sub_vectors(x, &self.a.mul_vec(x, &self.one_s)),
        }
    }

    /// `ε_i x ε_j`.
    pub fn sandwich(&self, i: usize, x: &[Scalar], j: usize) -> Vector {
        self.right_unit(&self.left_unit(i, 0, 0, x), j, 0, 0)
    }

    /// `1_{S_i} x 1_{S_j}`, with `f` for the trivial index.
    pub fn block_sandwich(&self, i: usize, x: &[Scalar], j: usize) -> Vector {
        let left = if i == 0 {
            sub_vectors(x, &self.a.mul_vec(&self.one_s, x))
        } else {
            self.a.mul_vec(&self.emb.block_identity(i - 1), x)
        };
        if j == 0 {
            sub_vectors(&left, &self.a.mul_vec(&left, &self.one_s))
        } else {
            self.a.mul_vec(&left, &self.emb.block_identity(j - 1))
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.sizes.len() {
            return Err(Error::IndexOutOfRange(format!("block index {i} of {}", self.sizes.len())));
        }
        Ok(())
    }

    /// `θ(X ⊗ λ) = Σ_st X_st e_s1^(i) λ e_1t^(j)`, `X` given row-major.
    pub fn theta_apply(&self, i: usize, j: usize, x: &[Scalar], lam: &[Scalar]) -> Result<Vector> {
        self.check_index(i)?;
        self.check_index(j)?;
        let (ni, nj) = (self.sizes[i], self.sizes[j]);
        if x.len() != ni * nj {
            return Err(Error::ShapeMismatch(format!("coefficient matrix of size {} for a {ni}x{nj} block", x.len())));
        }
        if !self.lambda[i][j].contains_vector(lam)? {
            return Err(Error::InvalidStructure(format!("element is not in Λ({i},{j})")));
        }
        let mut out = self.a.zero_vector();
        for s in 0..ni {
            for t in 0..nj {
                let c = &x[s * nj + t];
                if c.is_zero() {
                    continue;
                }
                let v = self.right_unit(&self.left_unit(i, s, 0, lam), j, 0, t);
                axpy(&mut out, c, &v);
            }
        }
        Ok(out)
    }

    /// Dimension of `⊕ V_ij ⊗ Λ(i,j)`; equals `dim A`.
    pub fn tensor_dim(&self) -> usize {
        self.a.dim()
    }

    pub fn tensor_index(&self, flat: usize) -> TensorIndex {
        let r = self.sizes.len();
        for i in (0..r).rev() {
            for j in (0..r).rev() {
                let off = self.tensor_offsets[i][j];
                let len = self.sizes[i] * self.sizes[j] * self.lambda[i][j].dim();
                if len > 0 && flat >= off && flat < off + len {
                    let rel = flat - off;
                    let dl = self.lambda[i][j].dim();
                    let k = rel % dl;
                    let st = rel / dl;
                    return TensorIndex { i, j, s: st / self.sizes[j], t: st % self.sizes[j], k };
                }
            }
        }
        panic!("tensor index {flat} out of range")
    }

    pub fn tensor_flat(&self, ix: TensorIndex) -> usize {
        let dl = self.lambda[ix.i][ix.j].dim();
        self.tensor_offsets[ix.i][ix.j] + (ix.s * self.sizes[ix.j] + ix.t) * dl + ix.k
    }

    /// `θ` on a basis element `E_st ⊗ λ_k`.
    pub fn theta_basis(&self, ix: TensorIndex) -> Vector {
        let lam = &self.lambda[ix.i][ix.j].basis()[ix.k];
        self.right_unit(&self.left_unit(ix.i, ix.s, 0, lam), ix.j, 0, ix.t)
    }

    /// `θ` on tensor coordinates.
    pub fn theta(&self, coords: &[Scalar]) -> Vector {
        let mut out = self.a.zero_vector();
        for (flat, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.theta_basis(self.tensor_index(flat)));
            }
        }
        out
    }

    /// Tensor coordinates of `x`: the `(i,j,s,t)` component is
    /// `e_1s^(i) x e_t1^(j)` written in the basis of `Λ(i,j)`.
    pub fn theta_inverse(&self, x: &[Scalar]) -> Result<Vector> {
        let mut out = zero_vector(self.a.field(), self.a.dim());
        let r = self.sizes.len();
        for i in 0..r {
            for s in 0..self.sizes[i] {
                let left = self.left_unit(i, 0, s, x);
                for j in 0..r {
                    if self.lambda[i][j].is_zero() {
                        continue;
                    }
                    for t in 0..self.sizes[j] {
                        let comp = self.right_unit(&left, j, t, 0);
                        let c = self.lambda[i][j]
                            .coordinates(&comp)?
                            .ok_or_else(|| Error::InternalInconsistency(format!("component outside Λ({i},{j})")))?;
                        let base = self.tensor_flat(TensorIndex { i, j, s, t, k: 0 });
                        for (k, ck) in c.into_iter().enumerate() {
                            out[base + k] = ck;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product on `⊕ V_ij ⊗ Λ(i,j)`:
    /// `(E_st ⊗ λ)(E_uv ⊗ μ) = δ_tu E_sv ⊗ λμ`.
    pub fn tensor_mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.a.field(), self.a.dim());
        let xs: Vec<(TensorIndex, &Scalar)> =
            x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(f, c)| (self.tensor_index(f), c)).collect();
        let ys: Vec<(TensorIndex, &Scalar)> =
            y.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(f, c)| (self.tensor_index(f), c)).collect();
        for (ix, cx) in &xs {
            for (iy, cy) in &ys {
                if ix.j != iy.i || ix.t != iy.s {
                    continue;
                }
                let p = self.offsets[ix.i][ix.j] + ix.k;
                let q = self.offsets[iy.i][iy.j] + iy.k;
                let terms = self.lambda_algebra.basis_product(p, q);
                if terms.is_empty() {
                    continue;
                }
                let c = *cx * *cy;
                for (z, cz) in terms {
                    let k = z - self.offsets[ix.i][iy.j];
                    let f = self.tensor_flat(TensorIndex { i: ix.i, j: iy.j, s: ix.s, t: iy.t, k });
                    out[f] += &(&c * cz);
                }
            }
        }
        out
    }

    /// Matrix of `θ` with columns `θ(E_st ⊗ λ_k)`.
    pub fn theta_matrix(&self) -> Matrix {
        let n = self.a.dim();
        let mut m = Matrix::zeros(self.a.field(), n, n);
        for flat in 0..n {
            let col = self.theta_basis(self.tensor_index(flat));
            for (r, c) in col.into_iter().enumerate() {
                m[(r, flat)] = c;
            }
        }
        m
    }

    /// Checks `θ(xy) = θ(x)θ(y)` on seeded random pairs, round trips on the
    /// full basis and the dimension identity.
    pub fn check_theta(&self, pairs: usize, seed: u64) -> Result<ThetaReport> {
        let n = self.a.dim();
        let field = self.a.field();
        let theta = self.theta_matrix();
        let bijective = theta.rank() == n;
        let mut roundtrip = true;
        for flat in 0..n {
            let e = self.a.basis_vector(flat);
            let back = self.theta_inverse(&theta.mul_vec(&e)?)?;
            if back != e || self.theta_inverse(&e).map(|c| theta.mul_vec(&c))?? != e {
                roundtrip = false;
                break;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut first_failure = None;
        let random = |rng: &mut ChaCha8Rng| -> Vector { (0..n).map(|_| field.from_i64(rng.random_range(-3..=3))).collect() };
        for p in 0..pairs {
            let x = random(&mut rng);
            let y = random(&mut rng);
            let lhs = theta.mul_vec(&self.tensor_mul(&x, &y))?;
            let rhs = self.a.mul_vec(&theta.mul_vec(&x)?, &theta.mul_vec(&y)?);
            if lhs != rhs {
                first_failure = Some(p);
                break;
            }
        }
        let dimension_sum: usize = (0..self.sizes.len())
            .flat_map(|i| (0..self.sizes.len()).map(move |j| (i, j)))
            .map(|(i, j)| self.sizes[i] * self.sizes[j] * self.lambda[i][j].dim())
            .sum();
        Ok(ThetaReport { pairs_checked: pairs, first_failure, bijective, roundtrip, dimension_sum, dim: n })
    }
}

/// Outcome of [`SDecomposition::check_theta`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaReport {
    pub pairs_checked: usize,
    /// Index of the first random pair where multiplicativity fails.
    pub first_failure: Option<usize>,
    pub bijective: bool,
    pub roundtrip: bool,
    pub dimension_sum: usize,
    pub dim: usize,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none() && self.bijective && self.roundtrip && self.dimension_sum == self.dim
    }
}

/// `Λ_B(i,j)` for an `S`-sub-bimodule `B`.
#[derive(Debug, Clone)]
pub struct LambdaB {
    pub parts: Vec<Vec<Subspace>>,
    pub b_is_subalgebra: bool,
    pub b_is_ideal: bool,
    /// `Λ_B(i,j) Λ_B(j,l) ⊆ Λ_B(i,l)`.
    pub lambda_closed: bool,
    /// `Λ(i,j) Λ_B(j,l) + Λ_B(i,j) Λ(j,l) ⊆ Λ_B(i,l)`.
    pub lambda_ideal: bool,
}

fn check_bimodule(d: &SDecomposition<'_>, b: &Subspace) -> Result<()> {
    let a = d.a;
    for blk in d.emb.blocks() {
        for u in blk.units() {
            for x in b.basis() {
                if !b.contains_vector(&a.mul_vec(u, x))? || !b.contains_vector(&a.mul_vec(x, u))? {
                    return Err(Error::NotBimodule("SB + BS is not contained in B".into()));
                }
            }
        }
    }
    Ok(())
}

fn products_within(a: &StructureAlgebra, x: &Subspace, y: &Subspace, target: &Subspace) -> Result<bool> {
    for u in x.basis() {
        for v in y.basis() {
            if !target.contains_vector(&a.mul_vec(u, v))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Λ_B(i,j) = ε_i B ε_j`, with the subalgebra and ideal properties checked.
pub fn sub_bimodule_lambda(d: &SDecomposition<'_>, b: &Subspace) -> Result<LambdaB> {
    let a = d.a;
    if b.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.ambient_dim() });
    }
    check_bimodule(d, b)?;
    let r = d.index_count();
    let mut parts = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            let mut eb = EchelonBuilder::new(a.field(), a.dim());
            for x in b.basis() {
                eb.insert(d.sandwich(i, x, j));
            }
            row.push(eb.finish());
        }
        parts.push(row);
    }
    let b_is_subalgebra = a.is_subalgebra(b)?;
    let b_is_ideal = a.is_ideal(b)?;
    let mut lambda_closed = true;
    let mut lambda_ideal = true;
    for i in 0..r {
        for j in 0..r {
            for l in 0..r {
                lambda_closed &= products_within(a, &parts[i][j], &parts[j][l], &parts[i][l])?;
                lambda_ideal &= products_within(a, &d.lambda[i][j], &parts[j][l], &parts[i][l])?
                    && products_within(a, &parts[i][j], &d.lambda[j][l], &parts[i][l])?;
            }
        }
    }
    Ok(LambdaB { parts, b_is_subalgebra, b_is_ideal, lambda_closed, lambda_ideal })
}

/// `B_S` together with the checks that accompany it.
#[derive(Debug, Clone)]
pub struct BsReport {
    pub bs: Subspace,
    /// `Λ_{B_S}(0,0) = Σ_i Λ_{B_S}(0,i) Λ_{B_S}(i,0)`.
    pub zero_corner_identity: bool,
    pub is_ideal_of_b: bool,
}

/// Subalgebra generated by the nontrivial simple `S`-sub-bimodules of `B`:
/// the components `1_{S_i} B 1_{S_j}` with `(i,j) ≠ (0,0)`, closed under
/// multiplication.
pub fn bs_subalgebra(d: &SDecomposition<'_>, b: &Subspace) -> Result<BsReport> {
    let a = d.a;
    if b.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.ambient_dim() });
    }
    check_bimodule(d, b)?;
    let r = d.index_count();
    let mut gens = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == 0 && j == 0 {
                continue;
            }
            for x in b.basis() {
                let v = d.block_sandwich(i, x, j);
                if !is_zero_vector(&v) {
                    gens.push(v);
                }
            }
        }
    }
    let seed = Subspace::span(a.field(), a.dim(), gens)?;
    let bs = a.subalgebra_closure(&seed)?;
    let mut lhs = EchelonBuilder::new(a.field(), a.dim());
    for x in bs.basis() {
        lhs.insert(d.sandwich(0, x, 0));
    }
    let lhs = lhs.finish();
    let mut rhs = Subspace::zero(a.field(), a.dim());
    for i in 1..r {
        let left = sandwich_space(d, &bs, 0, i);
        let right = sandwich_space(d, &bs, i, 0);
        rhs = rhs.sum(&a.subspace_product(&left, &right)?)?;
    }
    let zero_corner_identity = lhs == rhs;
    let mut is_ideal_of_b = true;
    'outer: for x in b.basis() {
        for y in bs.basis() {
            if !bs.contains_vector(&a.mul_vec(x, y))? || !bs.contains_vector(&a.mul_vec(y, x))? {
                is_ideal_of_b = false;
                break 'outer;
            }
        }
    }
    Ok(BsReport { bs, zero_corner_identity, is_ideal_of_b })
}

fn sandwich_space(d: &SDecomposition<'_>, b: &Subspace, i: usize, j: usize) -> Subspace {
    let mut eb = EchelonBuilder::new(d.a.field(), d.a.dim());
    for x in b.basis() {
        eb.insert(d.sandwich(i, x, j));
    }
    eb.finish()
}

/// The three equivalent forms of "`A` is generated by `S` as an ideal".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModgenReport {
    pub modgenerated: bool,
    /// `B_S(A) = A`.
    pub via_bs: bool,
    /// `Λ(0,0) = Σ_i Λ(0,i) Λ(i,0)`.
    pub via_lambda: bool,
    /// The ideal generated by `S` is `A`.
    pub via_ideal: bool,
    /// An element of `Λ(0,0)` outside `Σ_i Λ(0,i) Λ(i,0)` when not
    /// modgenerated.
    pub witness: Option<Vector>,
}

pub fn modgenerated_check(d: &SDecomposition<'_>) -> Result<ModgenReport> {
    let a = d.a;
    let full = Subspace::full(a.field(), a.dim());
    let via_bs = bs_subalgebra(d, &full)?.bs.is_full();
    let mut sum = Subspace::zero(a.field(), a.dim());
    for i in 1..d.index_count() {
        sum = sum.sum(&a.subspace_product(&d.lambda[0][i], &d.lambda[i][0])?)?;
    }
    let via_lambda = sum == d.lambda[0][0];
    let via_ideal = a.ideal_closure(&d.emb.span())?.is_full();
    if via_bs != via_lambda || via_lambda != via_ideal {
        return Err(Error::InternalInconsistency(format!(
            "modgenerated conditions disagree: B_S {via_bs}, Λ {via_lambda}, ideal {via_ideal}"
        )));
    }
    let mut witness = None;
    if !via_lambda {
        for x in d.lambda[0][0].basis() {
            if !sum.contains_vector(x)? {
                witness = Some(x.clone());
                break;
            }
        }
    }
    Ok(ModgenReport { modgenerated: via_lambda, via_bs, via_lambda, via_ideal, witness })
}

#[cfg(test)]
mod tests;
