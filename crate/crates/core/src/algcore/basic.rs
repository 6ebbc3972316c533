//! Basic algebras given by vertices and paths, and their inflations
//! `⊕ M_{m_i × m_j} ⊗ Λ(i,j)`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar, Subspace, Vector};
use crate::sdecomp::MatrixUnits;

use super::StructureAlgebra;

/// Largest basis accepted by the path enumeration.
const MAX_PATHS: usize = 4096;

/// A unital algebra with a complete set of primitive orthogonal idempotents
/// `1_v`, each basis element lying in a single corner `1_i Λ 1_j`.
#[derive(Debug, Clone)]
pub struct BasicAlgebra {
    algebra: StructureAlgebra,
    ends: Vec<(usize, usize)>,
    identities: Vec<usize>,
    radical: Vec<usize>,
}

impl BasicAlgebra {
    /// `kQ / J^len`: paths of length below `len` in the quiver with the given
    /// arrows, multiplied by concatenation.
    pub fn path(field: Field, vertices: usize, arrows: &[(usize, usize)], len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidStructure("path length bound must be positive".into()));
        }
        if let Some(&(a, b)) = arrows.iter().find(|(a, b)| *a >= vertices || *b >= vertices) {
            return Err(Error::IndexOutOfRange(format!("arrow {a}->{b} with {vertices} vertices")));
        }
        let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..vertices).map(|v| (v, v, Vec::new())).collect();
        let mut frontier: Vec<usize> = (0..vertices).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for &p in &frontier {
                let (src, tgt, word) = paths[p].clone();
                for (k, &(a, b)) in arrows.iter().enumerate() {
                    if a == tgt {
                        let mut w = word.clone();
                        w.push(k);
                        paths.push((src, b, w));
                        next.push(paths.len() - 1);
                        if paths.len() > MAX_PATHS {
                            return Err(Error::TooLarge(format!("more than {MAX_PATHS} paths")));
                        }
                    }
                }
            }
            frontier = next;
        }
        let index: HashMap<(usize, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(i, (s, _, w))| ((*s, w.clone()), i)).collect();
        let one = field.one();
        let algebra = StructureAlgebra::from_triples(
            field,
            paths.len(),
            (0..paths.len()).flat_map(|i| (0..paths.len()).map(move |j| (i, j))).filter_map(|(i, j)| {
                let (si, ti, wi) = &paths[i];
                let (sj, _, wj) = &paths[j];
                if ti != sj {
                    return None;
                }
                let mut w = wi.clone();
                w.extend(wj);
                index.get(&(*si, w)).map(|&k| (i, j, k, one.clone()))
            }),
        )?;
        Ok(BasicAlgebra {
            algebra,
            ends: paths.iter().map(|(s, t, _)| (*s, *t)).collect(),
            identities: (0..vertices).collect(),
            radical: (vertices..paths.len()).collect(),
        })
    }

    /// Incidence algebra of the partial order generated by `pairs`; the basis
    /// element `(i,j)` exists for `i ≤ j`.
    pub fn incidence(field: Field, vertices: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![vec![false; vertices]; vertices];
        for (v, row) in le.iter_mut().enumerate() {
            row[v] = true;
        }
        for &(a, b) in pairs {
            if a >= vertices || b >= vertices {
                return Err(Error::IndexOutOfRange(format!("pair ({a},{b}) with {vertices} vertices")));
            }
            le[a][b] = true;
        }
        for k in 0..vertices {
            for i in 0..vertices {
                for j in 0..vertices {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for i in 0..vertices {
            for j in i + 1..vertices {
                if le[i][j] && le[j][i] {
                    return Err(Error::InvalidStructure(format!("relation has a cycle through {i} and {j}")));
                }
            }
        }
        let mut ends: Vec<(usize, usize)> = (0..vertices).map(|v| (v, v)).collect();
        for i in 0..vertices {
            for j in 0..vertices {
                if i != j && le[i][j] {
                    ends.push((i, j));
                }
            }
        }
        let index: HashMap<(usize, usize), usize> = ends.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let one = field.one();
        let mut triples = Vec::new();
        for (p, &(i, j)) in ends.iter().enumerate() {
            for (q, &(j2, k)) in ends.iter().enumerate() {
                if j == j2 {
                    triples.push((p, q, index[&(i, k)], one.clone()));
                }
            }
        }
        let algebra = StructureAlgebra::from_triples(field, ends.len(), triples)?;
        Ok(BasicAlgebra { algebra, identities: (0..vertices).collect(), radical: (vertices..ends.len()).collect(), ends })
    }

    /// `Λ ⊗ F[t]/(t^m)`, basis `b ⊗ t^k` at `b·m + k`.
    pub fn tensor_local(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidStructure("nilpotency depth must be positive".into()));
        }
        let d = self.algebra.dim();
        let mut triples = Vec::new();
        for (b, c, e, val) in self.algebra.nonzero_constants() {
            for k in 0..m {
                for l in 0..m - k {
                    triples.push((b * m + k, c * m + l, e * m + k + l, val.clone()));
                }
            }
        }
        let algebra = StructureAlgebra::from_triples(self.algebra.field(), d * m, triples)?;
        let ends = (0..d * m).map(|x| self.ends[x / m]).collect();
        let radical = (0..d * m).filter(|x| x % m != 0 || self.radical.contains(&(x / m))).collect();
        Ok(BasicAlgebra { algebra, ends, identities: self.identities.iter().map(|v| v * m).collect(), radical })
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn vertex_count(&self) -> usize {
        self.identities.len()
    }

    /// `(i, j)` with the basis element in `1_i Λ 1_j`.
    pub fn ends(&self, b: usize) -> (usize, usize) {
        self.ends[b]
    }

    /// Basis index of `1_v`.
    pub fn identity_index(&self, v: usize) -> usize {
        self.identities[v]
    }

    /// Basis indices spanning the radical.
    pub fn radical_indices(&self) -> &[usize] {
        &self.radical
    }

    /// `dim 1_i Λ 1_j` for all vertex pairs.
    pub fn corner_dims(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut out = vec![vec![0; n]; n];
        for &(i, j) in &self.ends {
            out[i][j] += 1;
        }
        out
    }

    /// `⊕ M_{m_i × m_j} ⊗ 1_i Λ 1_j`, leaving out `E ⊗ 1_v` for every `v` in
    /// `drop`.
    pub fn inflate(&self, sizes: &[usize], drop: &[usize]) -> Result<Inflated> {
        let n = self.vertex_count();
        if sizes.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: sizes.len() });
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidStructure("inflation sizes must be positive".into()));
        }
        if let Some(&v) = drop.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange(format!("vertex {v} of {n}")));
        }
        let dropped: Vec<usize> = drop.iter().map(|&v| self.identities[v]).collect();
        let mut slots = Vec::new();
        let mut index = vec![Vec::new(); self.algebra.dim()];
        for (b, &(i, j)) in self.ends.iter().enumerate() {
            if dropped.contains(&b) {
                continue;
            }
            let base = slots.len();
            for s in 0..sizes[i] {
                for t in 0..sizes[j] {
                    slots.push((b, s, t));
                }
            }
            index[b] = (base..slots.len()).collect();
        }
        let mut triples = Vec::new();
        for (x, &(b, s, t)) in slots.iter().enumerate() {
            for c in 0..self.algebra.dim() {
                if index[c].is_empty() || self.ends[c].0 != self.ends[b].1 {
                    continue;
                }
                let nk = sizes[self.ends[c].1];
                let prod = self.algebra.basis_product(b, c);
                if prod.is_empty() {
                    continue;
                }
                for v in 0..nk {
                    let y = index[c][t * nk + v];
                    for (e, val) in prod {
                        let z = index[*e]
                            .get(s * nk + v)
                            .copied()
                            .ok_or_else(|| Error::InvalidStructure("product lands on a dropped identity".into()))?;
                        triples.push((x, y, z, val.clone()));
                    }
                }
            }
        }
        let algebra = StructureAlgebra::from_triples(self.algebra.field(), slots.len(), triples)?;
        Ok(Inflated { algebra, basic: self.clone(), sizes: sizes.to_vec(), dropped: drop.to_vec(), index })
    }
}

/// `A = ⊕ M_{m_i × m_j} ⊗ Λ(i,j)` built from a [`BasicAlgebra`].
#[derive(Debug, Clone)]
pub struct Inflated {
    algebra: StructureAlgebra,
    basic: BasicAlgebra,
    sizes: Vec<usize>,
    dropped: Vec<usize>,
    index: Vec<Vec<usize>>,
}

impl Inflated {
    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn basic(&self) -> &BasicAlgebra {
        &self.basic
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }

    /// Basis index of `E_st ⊗ b`.
    pub fn index(&self, b: usize, s: usize, t: usize) -> Option<usize> {
        let nj = self.sizes[self.basic.ends[b].1];
        self.index[b].get(s * nj + t).copied()
    }

    /// `E_st ⊗ 1_v` for `s, t < n`: the top-left `n × n` corner of vertex `v`.
    pub fn corner_units(&self, v: usize, n: usize) -> Result<MatrixUnits> {
        if v >= self.sizes.len() {
            return Err(Error::IndexOutOfRange(format!("vertex {v} of {}", self.sizes.len())));
        }
        if self.dropped.contains(&v) {
            return Err(Error::InvalidStructure(format!("identity of vertex {v} was dropped")));
        }
        if n > self.sizes[v] {
            return Err(Error::BlockTooSmall { size: self.sizes[v], required: n });
        }
        let b = self.basic.identities[v];
        let mut units = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                units.push(self.algebra.basis_vector(self.index(b, s, t).expect("kept vertex")));
            }
        }
        MatrixUnits::new(n, units)
    }

    /// `E ⊗ rad Λ`.
    pub fn radical(&self) -> Subspace {
        let field = self.algebra.field();
        let vecs: Vec<Vector> =
            self.basic.radical.iter().flat_map(|&b| self.index[b].iter().map(|&x| self.algebra.basis_vector(x))).collect();
        Subspace::span(field, self.algebra.dim(), vecs).expect("basis vectors")
    }

    /// `E ⊗ 1_v` over the kept vertices, a complement of the radical.
    pub fn levi(&self) -> Subspace {
        let field = self.algebra.field();
        let vecs: Vec<Vector> = (0..self.sizes.len())
            .filter(|v| !self.dropped.contains(v))
            .flat_map(|v| self.index[self.basic.identities[v]].iter().map(|&x| self.algebra.basis_vector(x)))
            .collect();
        Subspace::span(field, self.algebra.dim(), vecs).expect("basis vectors")
    }

    /// Coordinates of `Σ c_k E_{s_k t_k} ⊗ b_k`.
    pub fn element(&self, terms: &[(usize, usize, usize, Scalar)]) -> Result<Vector> {
        let mut v = self.algebra.zero_vector();
        for (b, s, t, c) in terms {
            let x = self.index(*b, *s, *t).ok_or_else(|| Error::IndexOutOfRange(format!("E_{s}{t} ⊗ b_{b}")))?;
            v[x] = &v[x] + c;
        }
        Ok(v)
    }
}

/// Largest number of shears added to one new basis vector.
const MAX_SHEARS: usize = 2;

impl Inflated {
    fn slot_of(&self) -> Vec<(usize, usize, usize)> {
        let mut out = vec![(0, 0, 0); self.algebra.dim()];
        for (b, xs) in self.index.iter().enumerate() {
            let nj = self.sizes[self.basic.ends[b].1];
            for (k, &x) in xs.iter().enumerate() {
                out[x] = (b, k / nj, k % nj);
            }
        }
        out
    }

    /// Change of basis that keeps the radical a coordinate subspace and the
    /// quotient basis rank one in each block: a random permutation and
    /// scaling, plus shears by radical vectors, by units in the same row or
    /// column of the same block, and by units of other blocks.
    pub fn scramble<R: Rng>(&self, rng: &mut R) -> Result<Scrambled> {
        let n = self.algebra.dim();
        let field = self.algebra.field();
        let slots = self.slot_of();
        let is_rad: Vec<bool> = slots.iter().map(|(b, _, _)| self.basic.radical.contains(b)).collect();
        let vertex_of = |b: usize| self.basic.identities.iter().position(|&i| i == b);
        let allowed = |x: usize, y: usize| -> bool {
            if is_rad[y] {
                return true;
            }
            if is_rad[x] {
                return false;
            }
            let ((bx, sx, tx), (by, sy, ty)) = (slots[x], slots[y]);
            vertex_of(bx) != vertex_of(by) || sx == sy || tx == ty
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let scalar = |rng: &mut R| -> Scalar {
            match field.order() {
                Some(p) => field.from_i64(rng.random_range(1..p as i64)),
                None => {
                    let v = rng.random_range(1..=3i64);
                    field.from_i64(if rng.random_bool(0.5) { v } else { -v })
                }
            }
        };
        let mut p = Matrix::zeros(field, n, n);
        for (k, &x) in order.iter().enumerate() {
            p[(x, k)] = scalar(rng);
            let mut earlier: Vec<usize> = order[..k].iter().copied().filter(|&y| allowed(x, y)).collect();
            earlier.shuffle(rng);
            let count = rng.random_range(0..=MAX_SHEARS).min(earlier.len());
            for &y in &earlier[..count] {
                p[(y, k)] = scalar(rng);
            }
        }
        let algebra = self.algebra.change_basis(&p)?;
        let inverse = p.inverse().expect("triangular up to permutation");
        Ok(Scrambled { algebra, inverse })
    }
}

/// An algebra after a change of basis, with the map to new coordinates.
#[derive(Debug, Clone)]
pub struct Scrambled {
    pub algebra: StructureAlgebra,
    inverse: Matrix,
}

impl Scrambled {
    /// New coordinates of a vector given in the old basis.
    pub fn map(&self, v: &[Scalar]) -> Vector {
        self.inverse.mul_vec(v).expect("square")
    }

    pub fn map_subspace(&self, u: &Subspace) -> Subspace {
        Subspace::span(self.algebra.field(), self.algebra.dim(), u.basis().iter().map(|v| self.map(v)).collect::<Vec<_>>())
            .expect("same ambient")
    }

    pub fn map_units(&self, u: &MatrixUnits) -> MatrixUnits {
        MatrixUnits::new(u.size(), u.units().iter().map(|v| self.map(v)).collect()).expect("same shape")
    }
}
