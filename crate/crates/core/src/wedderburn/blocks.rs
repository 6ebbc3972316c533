//! Block discovery in a split semisimple algebra given by structure constants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algcore::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exact::{
    axpy, is_zero_vector, kernel_basis, scale_vector, solve_linear, sub_vectors, zero_vector, EchelonBuilder,
    Field, Matrix, Poly, Scalar, Subspace, Vector,
};

const CANDIDATE_SEED: u64 = 0x5eed_b10c;
const RANDOM_CANDIDATES: usize = 64;

/// `A / R` on the coordinates not used as pivots of `R`.
#[derive(Debug, Clone)]
pub(crate) struct Quotient {
    pub algebra: StructureAlgebra,
    pub complement: Vec<usize>,
    pub radical: Subspace,
}

impl Quotient {
    pub fn new(a: &StructureAlgebra, radical: &Subspace) -> Result<Self> {
        let complement = radical.standard_complement();
        let m = complement.len();
        let mut triples = Vec::new();
        for (x, &c) in complement.iter().enumerate() {
            for (y, &d) in complement.iter().enumerate() {
                let terms = a.basis_product(c, d);
                if terms.is_empty() {
                    continue;
                }
                let mut v = a.zero_vector();
                for (k, s) in terms {
                    v[*k] = s.clone();
                }
                let v = radical.reduce(&v);
                for (z, &col) in complement.iter().enumerate() {
                    if !v[col].is_zero() {
                        triples.push((x, y, z, v[col].clone()));
                    }
                }
            }
        }
        let algebra = StructureAlgebra::from_triples(a.field(), m, triples)?;
        Ok(Quotient { algebra, complement, radical: radical.clone() })
    }

    /// Representative in `A` supported on the complement coordinates.
    pub fn lift(&self, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.algebra.field(), self.radical.ambient_dim());
        for (x, &c) in self.complement.iter().enumerate() {
            out[c] = v[x].clone();
        }
        out
    }
}

/// One simple block `M_n` of a semisimple algebra with explicit units.
#[derive(Debug, Clone)]
pub(crate) struct FoundBlock {
    pub size: usize,
    pub units: Vec<Vector>,
    pub identity: Vector,
}

/// Minimal polynomial of `y` inside the unital subalgebra with identity `e`.
pub(crate) fn minimal_polynomial(alg: &StructureAlgebra, y: &[Scalar], e: &[Scalar]) -> Poly {
    let field = alg.field();
    let n = alg.dim();
    let mut powers: Vec<Vector> = vec![e.to_vec()];
    loop {
        let next = alg.mul_vec(powers.last().expect("nonempty"), y);
        let k = powers.len();
        let mut m = Matrix::zeros(field, n, k);
        for (j, p) in powers.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = p[i].clone();
            }
        }
        if let Some(c) = solve_linear(&m, &next).expect("shapes agree") {
            let mut coeffs: Vec<Scalar> = c.iter().map(|x| -x).collect();
            coeffs.push(field.one());
            return Poly::new(field, coeffs);
        }
        assert!(k <= n, "minimal polynomial degree exceeds dimension");
        powers.push(next);
    }
}

/// Two-sided identity of `alg`, if any.
pub(crate) fn find_identity(alg: &StructureAlgebra) -> Option<Vector> {
    let n = alg.dim();
    let field = alg.field();
    let mut rows = Vec::with_capacity(2 * n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for k in 0..n {
            let left: Vector = (0..n).map(|i| alg.structure_constant(i, j, k)).collect();
            let right: Vector = (0..n).map(|i| alg.structure_constant(j, i, k)).collect();
            let target = if j == k { field.one() } else { field.zero() };
            rows.push(left);
            rhs.push(target.clone());
            rows.push(right);
            rhs.push(target);
        }
    }
    let m = Matrix::from_rows(field, n, rows).expect("rectangular");
    solve_linear(&m, &rhs).expect("shapes agree")
}

/// Centre of `alg`.
pub(crate) fn centre(alg: &StructureAlgebra) -> Subspace {
    let n = alg.dim();
    let field = alg.field();
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let row: Vector = (0..n).map(|i| &alg.structure_constant(i, j, k) - &alg.structure_constant(j, i, k)).collect();
            if !is_zero_vector(&row) {
                rows.push(row);
            }
        }
    }
    kernel_basis(&Matrix::from_rows(field, n, rows).expect("rectangular"))
}

/// Splits `e` by the eigenvalues of `y = z e` where `z` is central.
fn split_central(alg: &StructureAlgebra, e: &[Scalar], z: &[Scalar]) -> Result<Vec<Vector>> {
    let y = alg.mul_vec(z, e);
    let m = minimal_polynomial(alg, &y, e);
    let deg = m.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(vec![e.to_vec()]);
    }
    let roots = m.roots().ok_or_else(|| Error::NotSplit("central element with unmanageable minimal polynomial".into()))?;
    if roots.len() != deg {
        return Err(Error::NotSplit(format!("centre does not split: minimal polynomial of degree {deg} has {} roots", roots.len())));
    }
    let shifted: Vec<Vector> = roots.iter().map(|r| sub_vectors(&y, &scale_vector(r, e))).collect();
    let mut out = Vec::with_capacity(deg);
    for (k, rk) in roots.iter().enumerate() {
        let mut acc = e.to_vec();
        let mut denom = alg.field().one();
        for (l, rl) in roots.iter().enumerate() {
            if l != k {
                acc = alg.mul_vec(&acc, &shifted[l]);
                denom = &denom * &(rk - rl);
            }
        }
        out.push(scale_vector(&denom.inv().expect("distinct roots"), &acc));
    }
    Ok(out)
}

/// Primitive central idempotents of a split semisimple algebra.
fn central_idempotents(alg: &StructureAlgebra, one: &[Scalar]) -> Result<Vec<Vector>> {
    let z = centre(alg);
    let mut idem = vec![one.to_vec()];
    for zb in z.basis() {
        let mut next = Vec::with_capacity(idem.len());
        for e in &idem {
            next.extend(split_central(alg, e, zb)?);
        }
        idem = next;
    }
    Ok(idem)
}

fn span_of_products(alg: &StructureAlgebra, left: &[Vector], z: &[Scalar]) -> Subspace {
    let mut b = EchelonBuilder::new(alg.field(), alg.dim());
    for x in left {
        b.insert(alg.mul_vec(x, z));
    }
    b.finish()
}

/// Candidate elements of a block: basis, products, sums, then seeded random
/// combinations.
fn candidates(field: Field, basis: &[Vector], alg: &StructureAlgebra, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    let mut out: Vec<Vector> = basis.to_vec();
    for x in basis {
        for y in basis {
            let p = alg.mul_vec(x, y);
            if !is_zero_vector(&p) {
                out.push(p);
            }
        }
    }
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            out.push(crate::exact::add_vectors(x, y));
        }
    }
    for _ in 0..RANDOM_CANDIDATES {
        let mut v = zero_vector(field, alg.dim());
        for b in basis {
            let c = field.from_i64(rng.random_range(-2..=2));
            axpy(&mut v, &c, b);
        }
        out.push(v);
    }
    out
}

/// Finds `M_n` matrix units inside the simple block with identity `e`.
fn block_units(alg: &StructureAlgebra, e: &[Scalar], rng: &mut ChaCha8Rng) -> Result<FoundBlock> {
    let field = alg.field();
    let basis = span_of_products(alg, &(0..alg.dim()).map(|j| alg.basis_vector(j)).collect::<Vec<_>>(), e);
    let d = basis.dim();
    let n = (1..=d).find(|k| k * k >= d).unwrap_or(0);
    if n * n != d {
        return Err(Error::NotSplit(format!("simple component of dimension {d} is not a full matrix algebra")));
    }
    let bvecs = basis.basis().to_vec();
    let mut z = e.to_vec();
    let mut rank = n;
    if n > 1 {
        let cands = candidates(field, &bvecs, alg, rng);
        while rank > 1 {
            let mut improved = false;
            'search: for pass in 0..2 {
                for x in &cands {
                    let options = if pass == 0 {
                        vec![x.clone()]
                    } else {
                        let m = minimal_polynomial(alg, x, e);
                        match m.roots() {
                            Some(roots) if m.degree().unwrap_or(0) >= 2 => {
                                roots.iter().map(|r| sub_vectors(x, &scale_vector(r, e))).collect()
                            }
                            _ => Vec::new(),
                        }
                    };
                    for opt in options {
                        let nz = alg.mul_vec(&opt, &z);
                        if is_zero_vector(&nz) {
                            continue;
                        }
                        let w = span_of_products(alg, &bvecs, &nz);
                        if !w.dim().is_multiple_of(n) {
                            return Err(Error::NotSplit("left ideal dimension is not a multiple of the block size".into()));
                        }
                        if w.dim() / n < rank {
                            rank = w.dim() / n;
                            z = nz;
                            improved = true;
                            break 'search;
                        }
                    }
                }
            }
            if !improved {
                return Err(Error::NotSplit(format!("no rank-one element found in a block of size {n}")));
            }
        }
    }
    let w = span_of_products(alg, &bvecs, &z);
    let ws = w.basis();
    // e_st sends w_t to w_s and kills the other w_k.
    let dim = alg.dim();
    let mut cols: Vec<Vector> = Vec::with_capacity(d);
    for beta in &bvecs {
        let mut col = Vec::with_capacity(n * dim);
        for wk in ws {
            col.extend(alg.mul_vec(beta, wk));
        }
        cols.push(col);
    }
    let mut m = Matrix::zeros(field, n * dim, d);
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            m[(i, j)] = c.clone();
        }
    }
    let mut units = Vec::with_capacity(d);
    for s in 0..n {
        for t in 0..n {
            let mut rhs = zero_vector(field, n * dim);
            rhs[t * dim..(t + 1) * dim].clone_from_slice(&ws[s]);
            let coeffs = solve_linear(&m, &rhs)?.ok_or_else(|| Error::NotSplit("block does not act as a full matrix algebra".into()))?;
            let mut u = zero_vector(field, dim);
            for (c, beta) in coeffs.iter().zip(&bvecs) {
                axpy(&mut u, c, beta);
            }
            units.push(u);
        }
    }
    for s in 0..n {
        for t in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let p = alg.mul_vec(&units[s * n + t], &units[u * n + v]);
                    let ok = if t == u { p == units[s * n + v] } else { is_zero_vector(&p) };
                    if !ok {
                        return Err(Error::NotSplit("discovered matrix units fail their relations".into()));
                    }
                }
            }
        }
    }
    Ok(FoundBlock { size: n, units, identity: e.to_vec() })
}

/// Matrix units for every simple block of a split semisimple algebra, sorted
/// by block size and then by leading coordinate of the block identity.
pub(crate) fn discover_blocks(alg: &StructureAlgebra) -> Result<Vec<FoundBlock>> {
    if alg.dim() == 0 {
        return Ok(Vec::new());
    }
    let one = find_identity(alg).ok_or_else(|| Error::NotSplit("quotient by the radical has no identity".into()))?;
    let idem = central_idempotents(alg, &one)?;
    let mut rng = ChaCha8Rng::seed_from_u64(CANDIDATE_SEED);
    let mut blocks = idem.iter().map(|e| block_units(alg, e, &mut rng)).collect::<Result<Vec<_>>>()?;
    let total: usize = blocks.iter().map(|b| b.size * b.size).sum();
    if total != alg.dim() {
        return Err(Error::NotSplit(format!("blocks account for dimension {total} of {}", alg.dim())));
    }
    let lead = |v: &Vector| v.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX);
    blocks.sort_by_key(|b| (b.size, lead(&b.identity)));
    Ok(blocks)
}
