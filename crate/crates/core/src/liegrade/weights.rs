use std::collections::{BTreeMap, BTreeSet};

use crate::algcore::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, scale_vector, sub_vectors, Matrix, Subspace, Vector};
use crate::sdecomp::SemisimpleEmbedding;

use super::derived_subalgebra;

/// Integer weight vector: its `k`-th entry is the eigenvalue of `ad h_k`.
pub type Weight = Vec<i64>;

/// Simultaneous eigenspaces of `ad h_1, …, ad h_r` on a subspace `L`.
#[derive(Debug, Clone)]
pub struct WeightDecomposition {
    pub cartan: Vec<Vector>,
    pub spaces: BTreeMap<Weight, Subspace>,
    pub dim: usize,
}

impl WeightDecomposition {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn support(&self) -> BTreeSet<Weight> {
        self.spaces.keys().cloned().collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(Subspace::dim).sum()
    }

    pub fn space(&self, w: &[i64]) -> Option<&Subspace> {
        self.spaces.get(w)
    }

    pub fn zero_weight(&self) -> Weight {
        vec![0; self.rank()]
    }
}

/// `h = e_ss − e_{s+1,s+1}` for each block and `s < n_i`.
pub fn cartan_basis(a: &StructureAlgebra, emb: &SemisimpleEmbedding) -> Vec<Vector> {
    let _ = a;
    let mut out = Vec::new();
    for b in emb.blocks() {
        for s in 0..b.size() - 1 {
            out.push(sub_vectors(b.unit(s, s), b.unit(s + 1, s + 1)));
        }
    }
    out
}

/// Simultaneous eigenspaces of `ad h` for the given `h` on `L`, with
/// eigenvalues searched in `-2..=2`.
pub fn weight_decomposition(a: &StructureAlgebra, cartan: &[Vector], l: &Subspace) -> Result<WeightDecomposition> {
    let field = a.field();
    let mut spaces: Vec<(Weight, Subspace)> = vec![(Vec::new(), l.clone())];
    for (k, h) in cartan.iter().enumerate() {
        let mut next = Vec::new();
        for (w, v) in spaces {
            let images: Vec<Vector> = v.basis().iter().map(|x| a.bracket_vec(h, x)).collect();
            let mut found = 0;
            for c in -2i64..=2 {
                let cs = field.from_i64(c);
                let mut m = Matrix::zeros(field, a.dim(), v.dim());
                for (j, (img, x)) in images.iter().zip(v.basis()).enumerate() {
                    let col = sub_vectors(img, &scale_vector(&cs, x));
                    for (r, e) in col.into_iter().enumerate() {
                        m[(r, j)] = e;
                    }
                }
                let ker = kernel_basis(&m);
                if ker.is_zero() {
                    continue;
                }
                let vecs: Vec<Vector> = ker.basis().iter().map(|c| v.combine(c)).collect();
                let sub = Subspace::span(field, a.dim(), vecs)?;
                found += sub.dim();
                let mut w2 = w.clone();
                w2.push(c);
                next.push((w2, sub));
            }
            if found != v.dim() {
                return Err(Error::NonDiagonalizable(format!("ad h_{} on a space of dimension {} has integer eigenspaces of total dimension {found}", k + 1, v.dim())));
            }
        }
        spaces = next;
    }
    let spaces: BTreeMap<Weight, Subspace> = spaces.into_iter().filter(|(_, s)| !s.is_zero()).collect();
    Ok(WeightDecomposition { cartan: cartan.to_vec(), spaces, dim: l.dim() })
}

/// Weight decomposition of `L` under the standard Cartan elements of `S`.
/// Characteristic 0 only.
pub fn cartan_and_weights(a: &StructureAlgebra, emb: &SemisimpleEmbedding, l: &Subspace) -> Result<WeightDecomposition> {
    if a.field().characteristic() != 0 {
        return Err(Error::CharPUnsupported);
    }
    emb.check_parent(a)?;
    if l.is_zero() {
        return Ok(WeightDecomposition { cartan: cartan_basis(a, emb), spaces: BTreeMap::new(), dim: 0 });
    }
    let cartan = cartan_basis(a, emb);
    for h in &cartan {
        for x in l.basis() {
            if !l.contains_vector(&a.bracket_vec(h, x))? {
                return Err(Error::NotLieClosed);
            }
        }
    }
    weight_decomposition(a, &cartan, l)
}

/// Allowed weight sets built from the block sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSets {
    /// Roots of `S^(1)`.
    pub roots: BTreeSet<Weight>,
    /// `{0}`, roots, and sums `λ_i + λ_j` (`i < j`) where each `λ` is zero or
    /// a natural or conatural weight of its block; single weights included.
    pub rg: BTreeSet<Weight>,
    /// `{0}`, roots, and natural and conatural weights.
    pub main: BTreeSet<Weight>,
    pub coincide: bool,
}

/// `ε_a` of block `b` on the Cartan basis.
fn natural_weight(sizes: &[usize], block: usize, a: usize) -> Weight {
    let rank: usize = sizes.iter().map(|n| n - 1).sum();
    let off: usize = sizes[..block].iter().map(|n| n - 1).sum();
    let mut w = vec![0; rank];
    for s in 0..sizes[block] - 1 {
        w[off + s] = (a == s) as i64 - (a == s + 1) as i64;
    }
    w
}

fn add(x: &[i64], y: &[i64]) -> Weight {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn neg(x: &[i64]) -> Weight {
    x.iter().map(|a| -a).collect()
}

pub fn gamma_sets(sizes: &[usize]) -> GammaSets {
    let rank: usize = sizes.iter().map(|n| n.saturating_sub(1)).sum();
    let zero = vec![0; rank];
    let mut roots = BTreeSet::new();
    let mut module: Vec<Vec<Weight>> = Vec::with_capacity(sizes.len());
    for (b, &n) in sizes.iter().enumerate() {
        let eps: Vec<Weight> = (0..n).map(|a| natural_weight(sizes, b, a)).collect();
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    roots.insert(add(&eps[x], &neg(&eps[y])));
                }
            }
        }
        let mut m: Vec<Weight> = eps.to_vec();
        m.extend(eps.iter().map(|e| neg(e)));
        module.push(m);
    }
    let mut main = BTreeSet::new();
    main.insert(zero.clone());
    main.extend(roots.iter().cloned());
    for m in &module {
        main.extend(m.iter().cloned());
    }
    let mut rg = main.clone();
    for i in 0..module.len() {
        for j in i + 1..module.len() {
            for x in &module[i] {
                for y in &module[j] {
                    rg.insert(add(x, y));
                }
            }
        }
    }
    let coincide = rg == main;
    GammaSets { roots, rg, main, coincide }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradingAxiom {
    Gamma1,
    Gamma2,
    Gamma3,
}

/// Outcome of [`gamma_grading_check`].
#[derive(Debug, Clone)]
pub struct GradingReport {
    /// `S^(1)` has nondegenerate Killing form, one-dimensional root spaces
    /// for exactly the expected roots, and a zero weight space of
    /// dimension equal to the rank.
    pub gamma1: bool,
    /// Support of `L` lies in Γ and the weight spaces exhaust `L`.
    pub gamma2: bool,
    /// `L_0 = Σ_{α ≠ 0} [L_α, L_{−α}]`.
    pub gamma3: bool,
    pub failure: Option<(GradingAxiom, Weight)>,
    pub support: BTreeSet<Weight>,
    pub weight_dims: BTreeMap<Weight, usize>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.gamma1 && self.gamma2 && self.gamma3
    }
}

fn killing_nondegenerate(a: &StructureAlgebra, q: &Subspace) -> Result<bool> {
    let m = q.dim();
    if m == 0 {
        return Ok(true);
    }
    let field = a.field();
    // ad matrices in the basis of Q
    let mut ads: Vec<Matrix> = Vec::with_capacity(m);
    for x in q.basis() {
        let mut ad = Matrix::zeros(field, m, m);
        for (j, y) in q.basis().iter().enumerate() {
            let c = q.coordinates(&a.bracket_vec(x, y))?.ok_or(Error::NotLieClosed)?;
            for (i, ci) in c.into_iter().enumerate() {
                ad[(i, j)] = ci;
            }
        }
        ads.push(ad);
    }
    let mut k = Matrix::zeros(field, m, m);
    for p in 0..m {
        for r in p..m {
            let mut t = field.zero();
            for i in 0..m {
                for j in 0..m {
                    let x = &ads[p][(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    let y = &ads[r][(j, i)];
                    if !y.is_zero() {
                        t += &(x * y);
                    }
                }
            }
            k[(p, r)] = t.clone();
            k[(r, p)] = t;
        }
    }
    Ok(k.rank() == m)
}

/// Checks the axioms (Γ1)–(Γ3) for the decomposition `w` of `L` against
/// the allowed weights `gamma`.
pub fn gamma_grading_check(
    a: &StructureAlgebra,
    emb: &SemisimpleEmbedding,
    w: &WeightDecomposition,
    gamma: &BTreeSet<Weight>,
) -> Result<GradingReport> {
    if a.field().characteristic() != 0 {
        return Err(Error::CharPUnsupported);
    }
    let zero = w.zero_weight();
    let mut failure = None;

    let q = derived_subalgebra(a, &emb.span())?;
    let qw = weight_decomposition(a, &w.cartan, &q)?;
    let expected_roots = gamma_sets(&emb.block_sizes()).roots;
    let mut gamma1 = killing_nondegenerate(a, &q)?;
    if !gamma1 {
        failure = Some((GradingAxiom::Gamma1, zero.clone()));
    }
    if gamma1 {
        for (wt, s) in &qw.spaces {
            let ok = if *wt == zero { s.dim() == w.rank() } else { s.dim() == 1 && expected_roots.contains(wt) };
            if !ok {
                gamma1 = false;
                failure = Some((GradingAxiom::Gamma1, wt.clone()));
                break;
            }
        }
    }
    if gamma1 {
        if let Some(r) = expected_roots.iter().find(|r| !qw.spaces.contains_key(*r)) {
            gamma1 = false;
            failure = Some((GradingAxiom::Gamma1, r.clone()));
        }
    }

    let mut gamma2 = w.total_dim() == w.dim;
    if !gamma2 && failure.is_none() {
        failure = Some((GradingAxiom::Gamma2, zero.clone()));
    }
    if let Some(bad) = w.spaces.keys().find(|k| !gamma.contains(*k)) {
        gamma2 = false;
        if failure.is_none() {
            failure = Some((GradingAxiom::Gamma2, bad.clone()));
        }
    }

    let mut sum = Subspace::zero(a.field(), a.dim());
    for (wt, s) in &w.spaces {
        if *wt == zero {
            continue;
        }
        if let Some(opp) = w.spaces.get(&neg(wt)) {
            sum = sum.sum(&a.subspace_bracket(s, opp)?)?;
        }
    }
    let l0 = w.spaces.get(&zero).cloned().unwrap_or_else(|| Subspace::zero(a.field(), a.dim()));
    let gamma3 = sum == l0;
    if !gamma3 && failure.is_none() {
        failure = Some((GradingAxiom::Gamma3, zero.clone()));
    }
    Ok(GradingReport {
        gamma1,
        gamma2,
        gamma3,
        failure,
        support: w.support(),
        weight_dims: w.spaces.iter().map(|(k, v)| (k.clone(), v.dim())).collect(),
    })
}
