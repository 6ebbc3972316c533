//! Radical, split block structure, Levi complements and k-perfectness.

use crate::algcore::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exact::{axpy, is_zero_vector, kernel_basis, scale_vector, sub_vectors, Field, Matrix, Scalar, Subspace, Vector};
use crate::sdecomp::{verify_embedding, MatrixUnits, SemisimpleEmbedding};

mod blocks;

pub(crate) use blocks::Quotient;

/// How the radical was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Kernel of the trace form; characteristic 0 or `p > dim A`.
    TraceForm,
    /// A supplied subspace, verified to be a nilpotent ideal with split
    /// semisimple quotient.
    Planted,
}

#[derive(Debug, Clone)]
pub struct RadicalResult {
    radical: Subspace,
    nilpotency_index: usize,
    powers: Vec<Subspace>,
    method: RadicalMethod,
    wedderburn: WedderburnData,
}

impl RadicalResult {
    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    /// Least `t ≥ 1` with `R^t = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    /// `R, R², …, R^t = 0`.
    pub fn powers(&self) -> &[Subspace] {
        &self.powers
    }

    pub fn method(&self) -> RadicalMethod {
        self.method
    }
}

/// Matrix units for each simple block of `A / rad A`, represented in `A`.
///
/// The relations hold modulo the radical; they hold exactly when the radical
/// is zero or after [`levi_lift`].
#[derive(Debug, Clone)]
pub struct WedderburnData {
    blocks: Vec<MatrixUnits>,
    central_idempotents: Vec<Vector>,
}

impl WedderburnData {
    pub fn blocks(&self) -> &[MatrixUnits] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(MatrixUnits::size).collect()
    }

    /// `1_{S_i}`, lifted to `A`.
    pub fn central_idempotents(&self) -> &[Vector] {
        &self.central_idempotents
    }
}

fn check_field_support(a: &StructureAlgebra) -> bool {
    match a.field() {
        Field::Rationals => true,
        Field::Prime(p) => p > a.dim() as u64,
    }
}

/// `tr(L_{b_i b_j})` for all basis pairs.
fn trace_form(a: &StructureAlgebra) -> Matrix {
    let n = a.dim();
    let field = a.field();
    let tau: Vec<Scalar> = (0..n)
        .map(|k| {
            let mut t = field.zero();
            for m in 0..n {
                if let Some((_, c)) = a.basis_product(k, m).iter().find(|(kk, _)| *kk == m) {
                    t += c;
                }
            }
            t
        })
        .collect();
    let mut g = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = field.zero();
            for (k, c) in a.basis_product(i, j) {
                if !tau[*k].is_zero() {
                    acc += &(c * &tau[*k]);
                }
            }
            g[(i, j)] = acc;
        }
    }
    g
}

fn powers_of(a: &StructureAlgebra, r: &Subspace) -> Result<Vec<Subspace>> {
    let mut powers = vec![r.clone()];
    while !powers.last().expect("nonempty").is_zero() {
        if powers.len() > a.dim() + 1 {
            return Err(Error::InvalidStructure("radical candidate is not nilpotent".into()));
        }
        let next = a.subspace_product(powers.last().expect("nonempty"), r)?;
        powers.push(next);
    }
    Ok(powers)
}

fn wedderburn_data(a: &StructureAlgebra, r: &Subspace) -> Result<WedderburnData> {
    let q = Quotient::new(a, r)?;
    let found = blocks::discover_blocks(&q.algebra)?;
    let mut blocks = Vec::with_capacity(found.len());
    let mut central = Vec::with_capacity(found.len());
    for b in found {
        let units = b.units.iter().map(|u| q.lift(u)).collect();
        blocks.push(MatrixUnits::new(b.size, units)?);
        central.push(q.lift(&b.identity));
    }
    Ok(WedderburnData { blocks, central_idempotents: central })
}

/// The Jacobson radical, certified by nilpotency and by a successful
/// split block decomposition of the quotient.
///
/// In characteristic 0 or `p > dim A` the radical is the kernel of the trace
/// form `(x, y) ↦ tr L_{xy}`, and a planted subspace, when given, must agree
/// with it. Otherwise a planted subspace is required and is verified instead.
pub fn radical(a: &StructureAlgebra, planted: Option<&Subspace>) -> Result<RadicalResult> {
    if let Some(p) = planted {
        if p.field() != a.field() {
            return Err(Error::FieldMismatch { expected: a.field(), found: p.field() });
        }
        if p.ambient_dim() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: p.ambient_dim() });
        }
    }
    let (r, method) = if check_field_support(a) {
        let r = kernel_basis(&trace_form(a));
        if let Some(p) = planted {
            if p != &r {
                return Err(Error::InvalidStructure(format!(
                    "planted radical of dimension {} differs from the computed radical of dimension {}",
                    p.dim(),
                    r.dim()
                )));
            }
        }
        (r, RadicalMethod::TraceForm)
    } else {
        let p = planted.ok_or_else(|| {
            Error::RadicalUnsupported(format!("characteristic {} does not exceed dimension {}", a.field().characteristic(), a.dim()))
        })?;
        if !a.is_ideal(p)? {
            return Err(Error::InvalidStructure("planted radical is not an ideal".into()));
        }
        (p.clone(), RadicalMethod::Planted)
    };
    let powers = powers_of(a, &r)?;
    let wedderburn = wedderburn_data(a, &r)?;
    Ok(RadicalResult { nilpotency_index: powers.len(), radical: r, powers, method, wedderburn })
}

/// Matrix units of the simple blocks of `A / rad A`, lifted to `A`.
pub fn split_blocks(_a: &StructureAlgebra, rad: &RadicalResult) -> WedderburnData {
    rad.wedderburn.clone()
}

/// A semisimple subalgebra complementing the radical.
#[derive(Debug, Clone)]
pub struct LeviSubalgebra {
    levi: Subspace,
    embedding: SemisimpleEmbedding,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviReport {
    pub subalgebra: bool,
    pub meets_radical_trivially: bool,
    pub dimensions_add_up: bool,
}

impl LeviReport {
    pub fn passed(&self) -> bool {
        self.subalgebra && self.meets_radical_trivially && self.dimensions_add_up
    }
}

impl LeviSubalgebra {
    pub fn levi(&self) -> &Subspace {
        &self.levi
    }

    pub fn embedding(&self) -> &SemisimpleEmbedding {
        &self.embedding
    }

    /// Checks `levi` is a subalgebra with `levi ⊕ rad = A`.
    pub fn check(&self, a: &StructureAlgebra, radical: &Subspace) -> Result<LeviReport> {
        Ok(LeviReport {
            subalgebra: a.is_subalgebra(&self.levi)?,
            meets_radical_trivially: self.levi.intersection(radical)?.is_zero(),
            dimensions_add_up: self.levi.dim() + radical.dim() == a.dim(),
        })
    }
}

/// `(1−E) x (1−E)` computed inside `A`.
fn compress_away(a: &StructureAlgebra, e: &[Scalar], x: &[Scalar]) -> Vector {
    let ex = a.mul_vec(e, x);
    let xe = a.mul_vec(x, e);
    let exe = a.mul_vec(&ex, e);
    let mut out = sub_vectors(x, &ex);
    let one = a.field().one();
    axpy(&mut out, &-&one, &xe);
    axpy(&mut out, &one, &exe);
    out
}

/// Newton-type iteration `x ← 3x² − 2x³` until `x² = x`.
fn refine_idempotent(a: &StructureAlgebra, mut x: Vector, bound: usize) -> Result<Vector> {
    let three = a.field().from_i64(3);
    let two = a.field().from_i64(2);
    for _ in 0..=bound {
        let sq = a.mul_vec(&x, &x);
        if sq == x {
            return Ok(x);
        }
        let cube = a.mul_vec(&sq, &x);
        x = sub_vectors(&scale_vector(&three, &sq), &scale_vector(&two, &cube));
    }
    Err(Error::InternalInconsistency("idempotent lifting did not converge".into()))
}

/// Inverse of `c = f + n` inside the corner `fAf`, with `n` nilpotent.
fn corner_inverse(a: &StructureAlgebra, f: &[Scalar], c: &[Scalar], bound: usize) -> Result<Vector> {
    let minus_n = sub_vectors(f, c);
    let mut term = f.to_vec();
    let mut acc = f.to_vec();
    let one = a.field().one();
    for _ in 0..=bound {
        term = a.mul_vec(&term, &minus_n);
        if is_zero_vector(&term) {
            return Ok(acc);
        }
        axpy(&mut acc, &one, &term);
    }
    Err(Error::InternalInconsistency("corner element is not unipotent".into()))
}

/// Lifts the quotient matrix units to exact matrix units in `A`.
///
/// Diagonal units are made orthogonal to those already lifted and then
/// refined to idempotents; off-diagonal units are sandwiched between the
/// lifted idempotents and normalised by a corner inverse.
pub fn levi_lift(a: &StructureAlgebra, rad: &RadicalResult) -> Result<LeviSubalgebra> {
    let data = &rad.wedderburn;
    let bound = rad.nilpotency_index + 1;
    let mut acc = a.zero_vector();
    let one = a.field().one();
    let mut diag: Vec<Vec<Vector>> = Vec::with_capacity(data.blocks.len());
    for b in &data.blocks {
        let mut fs = Vec::with_capacity(b.size());
        for s in 0..b.size() {
            let x = compress_away(a, &acc, b.unit(s, s));
            let f = refine_idempotent(a, x, bound)?;
            axpy(&mut acc, &one, &f);
            fs.push(f);
        }
        diag.push(fs);
    }
    let mut lifted = Vec::with_capacity(data.blocks.len());
    for (b, fs) in data.blocks.iter().zip(&diag) {
        let n = b.size();
        let mut row0 = vec![fs[0].clone()];
        let mut col0 = vec![fs[0].clone()];
        for s in 1..n {
            let u = a.mul_vec(&a.mul_vec(&fs[0], b.unit(0, s)), &fs[s]);
            let w = a.mul_vec(&a.mul_vec(&fs[s], b.unit(s, 0)), &fs[0]);
            let c = a.mul_vec(&u, &w);
            let inv = corner_inverse(a, &fs[0], &c, bound)?;
            col0.push(a.mul_vec(&w, &inv));
            row0.push(u);
        }
        let mut units = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                units.push(if s == 0 {
                    row0[t].clone()
                } else if t == 0 {
                    col0[s].clone()
                } else {
                    a.mul_vec(&col0[s], &row0[t])
                });
            }
        }
        lifted.push(MatrixUnits::new(n, units)?);
    }
    let embedding = SemisimpleEmbedding::new(a, lifted)?;
    let report = verify_embedding(a, &embedding);
    if let Some(v) = report.violation {
        return Err(Error::InternalInconsistency(format!("lifted matrix units fail: {v:?}")));
    }
    Ok(LeviSubalgebra { levi: embedding.span(), embedding })
}

/// Outcome of [`k_perfect_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPerfectReport {
    pub k: usize,
    pub is_k_perfect: bool,
    pub square_is_full: bool,
    /// Block sizes of `A / rad A`; empty when `A² ≠ A` short-circuits.
    pub block_sizes: Vec<usize>,
    /// A proper ideal of codimension at most `k` when the check fails.
    pub witness: Option<Subspace>,
}

/// Whether a split semisimple algebra with these block sizes is k-perfect.
pub fn semisimple_k_perfect(sizes: &[usize], k: usize) -> bool {
    sizes.iter().all(|&n| n * n > k)
}

/// `A` is k-perfect iff `A² = A` and every block of `A / rad A` has `n² > k`.
pub fn k_perfect_check(a: &StructureAlgebra, k: usize, planted: Option<&Subspace>) -> Result<KPerfectReport> {
    let sq = a.algebra_square();
    if k == 0 {
        return Ok(KPerfectReport { k, is_k_perfect: true, square_is_full: sq.is_full(), block_sizes: Vec::new(), witness: None });
    }
    if !sq.is_full() {
        let free = sq.standard_complement();
        let extra: Vec<Vector> = free[1..].iter().map(|&c| a.basis_vector(c)).collect();
        let hyper = sq.sum(&Subspace::span(a.field(), a.dim(), extra)?)?;
        return Ok(KPerfectReport { k, is_k_perfect: false, square_is_full: false, block_sizes: Vec::new(), witness: Some(hyper) });
    }
    let rad = radical(a, planted)?;
    let sizes = rad.wedderburn.block_sizes();
    if let Some(bad) = sizes.iter().position(|&n| n * n <= k) {
        let mut gens: Vec<Vector> = rad.radical.basis().to_vec();
        for (j, b) in rad.wedderburn.blocks.iter().enumerate() {
            if j != bad {
                gens.extend(b.units().iter().cloned());
            }
        }
        let w = Subspace::span(a.field(), a.dim(), gens)?;
        return Ok(KPerfectReport { k, is_k_perfect: false, square_is_full: true, block_sizes: sizes, witness: Some(w) });
    }
    Ok(KPerfectReport { k, is_k_perfect: true, square_is_full: true, block_sizes: sizes, witness: None })
}

/// Largest number of candidate subspaces [`small_ideal_search`] visits.
const MAX_SEARCH: u64 = 1 << 22;

/// Exhaustive search over a finite field for a proper ideal of codimension
/// at most `k`, by enumerating every subspace as the kernel of a reduced
/// echelon matrix with `1..=k` rows.
pub fn small_ideal_search(a: &StructureAlgebra, k: usize) -> Result<Option<Subspace>> {
    let field = a.field();
    let q = field.order().ok_or_else(|| Error::TooLarge("exhaustive search needs a finite field".into()))?;
    let elements = field.elements().expect("finite field");
    let d = a.dim();
    for c in 1..=k.min(d) {
        let mut pivots: Vec<usize> = (0..c).collect();
        loop {
            let free: Vec<(usize, usize)> = (0..c)
                .flat_map(|r| (pivots[r] + 1..d).filter(|j| !pivots.contains(j)).map(move |j| (r, j)))
                .collect();
            let count = (q as f64).powi(free.len() as i32);
            if count > MAX_SEARCH as f64 {
                return Err(Error::TooLarge(format!("{count} subspaces of codimension {c} in dimension {d}")));
            }
            for code in 0..q.pow(free.len() as u32) {
                let mut m = Matrix::zeros(field, c, d);
                for (r, &p) in pivots.iter().enumerate() {
                    m[(r, p)] = field.one();
                }
                let mut rest = code;
                for &(r, j) in &free {
                    m[(r, j)] = elements[(rest % q) as usize].clone();
                    rest /= q;
                }
                let ideal = kernel_basis(&m);
                if a.is_ideal(&ideal)? {
                    return Ok(Some(ideal));
                }
            }
            // next pivot combination
            let Some(i) = (0..c).rev().find(|&i| pivots[i] < d - c + i) else {
                break;
            };
            pivots[i] += 1;
            for j in i + 1..c {
                pivots[j] = pivots[j - 1] + 1;
            }
        }
    }
    Ok(None)
}

/// `P = span{ Σ_i e_st^(i) : s, t < m } ≅ M_m` inside `S`.
#[derive(Debug, Clone)]
pub struct CornerSubalgebra {
    pub m: usize,
    pub span: Subspace,
    /// `p_st`, row-major.
    pub units: Vec<Vector>,
    /// Whether the ideal of `S` generated by `P` is all of `S`.
    pub generates_s: bool,
}

pub fn corner_subalgebra(a: &StructureAlgebra, emb: &SemisimpleEmbedding, m: usize) -> Result<CornerSubalgebra> {
    emb.check_parent(a)?;
    if let Some(&n) = emb.block_sizes().iter().find(|&&n| n < m) {
        return Err(Error::BlockTooSmall { size: n, required: m });
    }
    let one = a.field().one();
    let mut units = Vec::with_capacity(m * m);
    for s in 0..m {
        for t in 0..m {
            let mut p = a.zero_vector();
            for b in emb.blocks() {
                axpy(&mut p, &one, b.unit(s, t));
            }
            units.push(p);
        }
    }
    let span = Subspace::span(a.field(), a.dim(), units.clone())?;
    let s = emb.span();
    let closure = a.bimodule_closure(&span, &s)?;
    let generates_s = closure == s;
    Ok(CornerSubalgebra { m, span, units, generates_s })
}

#[cfg(test)]
mod tests;
