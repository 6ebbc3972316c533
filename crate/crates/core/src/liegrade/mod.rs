//! Commutator structure of `A`: the derived subalgebra, the generator
//! system `L`, telescoping witness chains and the main structure checks.

use crate::algcore::{fixed_point, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exact::{axpy, sub_vectors, EchelonBuilder, Scalar, Subspace, Vector};
use crate::sdecomp::{decompose, modgenerated_check, ModgenReport, SDecomposition, SemisimpleEmbedding};
use crate::wedderburn::semisimple_k_perfect;

mod quasisimple;
mod weights;

pub use quasisimple::{quasisimple_check, QuasisimpleReport};
pub use weights::{
    cartan_and_weights, gamma_grading_check, gamma_sets, weight_decomposition, GammaSets, GradingAxiom, GradingReport,
    Weight, WeightDecomposition,
};

/// `[U, U]`.
pub fn derived_subalgebra(a: &StructureAlgebra, u: &Subspace) -> Result<Subspace> {
    a.subspace_bracket(u, u)
}

/// `[U, U] = U`, after checking `U` is closed under the bracket.
pub fn perfectness_check(a: &StructureAlgebra, u: &Subspace) -> Result<bool> {
    let d = derived_subalgebra(a, u)?;
    if !u.contains(&d)? {
        return Err(Error::NotLieClosed);
    }
    Ok(d == *u)
}

/// Lie subalgebra generated by `gen`.
pub fn lie_closure(a: &StructureAlgebra, gen: &Subspace) -> Result<Subspace> {
    if gen.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: gen.ambient_dim() });
    }
    Ok(fixed_point(a.field(), a.dim(), gen.basis().to_vec(), |x, all, out| {
        for y in all {
            out.push(a.bracket_vec(x, y));
        }
    }))
}

/// Smallest subspace containing `gen` and closed under `[within, ·]`.
pub fn lie_ideal_closure(a: &StructureAlgebra, gen: &Subspace, within: &Subspace) -> Result<Subspace> {
    if gen.ambient_dim() != a.dim() || within.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: gen.ambient_dim().min(within.ambient_dim()) });
    }
    let w = within.basis();
    Ok(fixed_point(a.field(), a.dim(), gen.basis().to_vec(), |x, _, out| {
        for y in w {
            out.push(a.bracket_vec(y, x));
        }
    }))
}

/// Which block-size condition the gate applies.
pub fn required_perfection(characteristic: u64) -> usize {
    if characteristic == 2 {
        4
    } else {
        1
    }
}

/// Hypotheses of the main theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateReport {
    pub modgen: ModgenReport,
    pub s_nonzero: bool,
    /// `k` in "S is k-perfect": 4 in characteristic 2, else 1.
    pub required_k: usize,
    pub s_k_perfect: bool,
    pub block_sizes: Vec<usize>,
}

impl GateReport {
    pub fn passed(&self) -> bool {
        self.modgen.modgenerated && self.s_nonzero && self.s_k_perfect
    }

    /// Names of the failed hypotheses.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.s_nonzero {
            out.push("S is zero".to_string());
        }
        if !self.s_k_perfect {
            out.push(format!("S is not {}-perfect (block sizes {:?})", self.required_k, self.block_sizes));
        }
        if !self.modgen.modgenerated {
            out.push("A is not generated by S as an ideal".to_string());
        }
        out
    }
}

pub fn hypothesis_gate(d: &SDecomposition<'_>) -> Result<GateReport> {
    let sizes = d.embedding().block_sizes();
    let k = required_perfection(d.algebra().field().characteristic());
    Ok(GateReport {
        modgen: modgenerated_check(d)?,
        s_nonzero: !sizes.is_empty(),
        required_k: k,
        s_k_perfect: semisimple_k_perfect(&sizes, k),
        block_sizes: sizes,
    })
}

/// `θ(V'_ij ⊗ Λ(i,j))` for every `(i,j) ≠ (0,0)`, where `V'_ii` is the
/// trace-zero part.
#[derive(Debug, Clone)]
pub struct LieGenerators {
    pub parts: Vec<((usize, usize), Subspace)>,
    pub span: Subspace,
}

pub fn l_generators(d: &SDecomposition<'_>) -> Result<LieGenerators> {
    let a = d.algebra();
    let gate_k = required_perfection(a.field().characteristic());
    let sizes = d.embedding().block_sizes();
    if !semisimple_k_perfect(&sizes, gate_k) {
        return Err(Error::HypothesisViolated(format!("S is not {gate_k}-perfect (block sizes {sizes:?})")));
    }
    let r = d.index_count();
    let mut parts = Vec::new();
    let mut all = EchelonBuilder::new(a.field(), a.dim());
    for i in 0..r {
        for j in 0..r {
            if i == 0 && j == 0 {
                continue;
            }
            let (ni, nj) = (d.size(i), d.size(j));
            let mut b = EchelonBuilder::new(a.field(), a.dim());
            for lam in d.lambda(i, j).basis() {
                for s in 0..ni {
                    let left = d.left_unit(i, s, 0, lam);
                    for t in 0..nj {
                        if i == j && s == t {
                            continue;
                        }
                        b.insert(d.right_unit(&left, j, 0, t));
                    }
                }
                if i == j {
                    for s in 0..ni - 1 {
                        let x = d.right_unit(&d.left_unit(i, s, 0, lam), i, 0, s);
                        let y = d.right_unit(&d.left_unit(i, s + 1, 0, lam), i, 0, s + 1);
                        b.insert(sub_vectors(&x, &y));
                    }
                }
            }
            let sub = b.finish();
            for v in sub.basis() {
                all.insert(v.clone());
            }
            parts.push(((i, j), sub));
        }
    }
    Ok(LieGenerators { parts, span: all.finish() })
}

/// `L`, the Lie subalgebra generated by the generator system.
pub fn l_closure(a: &StructureAlgebra, gens: &LieGenerators) -> Result<Subspace> {
    lie_closure(a, &gens.span)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    /// `p ∤ n`: `(e_{k,k+1}⊗λ, e_{k+1,k}⊗μ)` around the cycle.
    Cyclic,
    /// `p | n`: `(e_{1k}⊗μ, e_{k1}⊗λ)` for `k = 2..n`.
    Anchored,
}

/// Pairs whose commutators sum to `target`.
#[derive(Debug, Clone)]
pub struct WitnessChain {
    pub kind: ChainKind,
    pub block: usize,
    /// Matrix-unit positions `((s,t),(u,v))`, 1-based, of each pair.
    pub positions: Vec<((usize, usize), (usize, usize))>,
    pub pairs: Vec<(Vector, Vector)>,
    pub target: Vector,
    pub holds: bool,
}

/// Telescoping commutator chain for block `i ≥ 1` and `λ, μ ∈ Λ(i,i)`.
///
/// Cyclic chains sum to `ε ⊗ (λμ − μλ)`; anchored chains sum to
/// `e_11 ⊗ (λμ − μλ) − ε ⊗ λμ`, with `ε` the identity matrix.
pub fn lemma_witness(d: &SDecomposition<'_>, i: usize, lam: &[Scalar], mu: &[Scalar]) -> Result<WitnessChain> {
    if i == 0 || i >= d.index_count() {
        return Err(Error::IndexOutOfRange(format!("block index {i} must lie in 1..{}", d.index_count())));
    }
    let a = d.algebra();
    let field = a.field();
    let n = d.size(i);
    let lam_space = d.lambda(i, i);
    if !lam_space.contains_vector(lam)? || !lam_space.contains_vector(mu)? {
        return Err(Error::InvalidStructure(format!("witness arguments must lie in Λ({i},{i})")));
    }
    let p = field.characteristic();
    let kind = if p != 0 && (n as u64).is_multiple_of(p) { ChainKind::Anchored } else { ChainKind::Cyclic };
    let elem = |s: usize, t: usize, x: &[Scalar]| -> Result<Vector> {
        let mut m = vec![field.zero(); n * n];
        m[s * n + t] = field.one();
        d.theta_apply(i, i, &m, x)
    };
    let identity = |x: &[Scalar]| -> Result<Vector> {
        let mut m = vec![field.zero(); n * n];
        for s in 0..n {
            m[s * n + s] = field.one();
        }
        d.theta_apply(i, i, &m, x)
    };
    let lm = a.mul_vec(lam, mu);
    let ml = a.mul_vec(mu, lam);
    let comm = sub_vectors(&lm, &ml);
    let mut positions = Vec::new();
    let mut pairs = Vec::new();
    let target = match kind {
        ChainKind::Cyclic => {
            for k in 0..n {
                let k1 = (k + 1) % n;
                if n == 1 {
                    break;
                }
                pairs.push((elem(k, k1, lam)?, elem(k1, k, mu)?));
                positions.push(((k + 1, k1 + 1), (k1 + 1, k + 1)));
            }
            identity(&comm)?
        }
        ChainKind::Anchored => {
            for k in 1..n {
                pairs.push((elem(0, k, mu)?, elem(k, 0, lam)?));
                positions.push(((1, k + 1), (k + 1, 1)));
            }
            sub_vectors(&elem(0, 0, &comm)?, &identity(&lm)?)
        }
    };
    let mut sum = a.zero_vector();
    let one = field.one();
    for (x, y) in &pairs {
        axpy(&mut sum, &one, &a.bracket_vec(x, y));
    }
    let holds = sum == target;
    Ok(WitnessChain { kind, block: i, positions, pairs, target, holds })
}

/// Whether conclusion (4) was checked.
#[derive(Debug, Clone)]
pub enum GradingOutcome {
    Checked(Box<GradingReport>),
    /// The grading is only defined in characteristic 0.
    NotApplicable,
}

impl GradingOutcome {
    pub fn passed(&self) -> Option<bool> {
        match self {
            GradingOutcome::Checked(r) => Some(r.passed()),
            GradingOutcome::NotApplicable => None,
        }
    }
}

/// Conclusions (1)–(4) of the main theorem for a gated instance.
#[derive(Debug, Clone)]
pub struct MainCertificate {
    pub gate: GateReport,
    pub block_sizes: Vec<usize>,
    pub lambda_dims: Vec<Vec<usize>>,
    pub dim: usize,
    pub derived_dim: usize,
    /// `dim [A^(1), A^(1)]`.
    pub second_derived_dim: usize,
    /// `dim (A^(1) A^(1) + A^(1))`.
    pub square_sum_dim: usize,
    /// Dimension of the Lie ideal of `A^(1)` generated by `S^(1)`.
    pub s1_ideal_dim: usize,
    pub l_dim: usize,
    pub l_equals_derived: bool,
    /// (1) `A^(1)` is perfect.
    pub perfect: bool,
    /// (2) `A = A^(1) A^(1) + A^(1)`.
    pub square_identity: bool,
    /// (3) the Lie ideal of `A^(1)` generated by `S^(1)` is `A^(1)`.
    pub generated_by_s1: bool,
    /// (4) the Γ-grading.
    pub grading: GradingOutcome,
    pub gamma: GammaSets,
}

impl MainCertificate {
    /// Conclusions (1)–(3), the generator identity and, where applicable, (4).
    pub fn passed(&self) -> bool {
        self.l_equals_derived && self.perfect && self.square_identity && self.generated_by_s1 && self.grading.passed().unwrap_or(true)
    }
}

/// Ungated evaluation of conclusions (1) and (2), used for negative
/// controls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConclusionProbe {
    pub derived_dim: usize,
    pub perfect: bool,
    /// An element of `A^(1)` outside `[A^(1), A^(1)]`.
    pub perfect_witness: Option<Vector>,
    pub square_identity: bool,
}

pub fn conclusion_probe(a: &StructureAlgebra) -> Result<ConclusionProbe> {
    let full = Subspace::full(a.field(), a.dim());
    let a1 = derived_subalgebra(a, &full)?;
    let a2 = derived_subalgebra(a, &a1)?;
    let mut perfect_witness = None;
    for x in a1.basis() {
        if !a2.contains_vector(x)? {
            perfect_witness = Some(x.clone());
            break;
        }
    }
    let square_identity = a.subspace_product(&a1, &a1)?.sum(&a1)?.is_full();
    Ok(ConclusionProbe { derived_dim: a1.dim(), perfect: perfect_witness.is_none(), perfect_witness, square_identity })
}

/// Checks the hypotheses and then conclusions (1)–(4) as exact subspace
/// equalities. Fails with [`Error::HypothesisViolated`] when the gate does
/// not pass, without evaluating any conclusion.
pub fn verify_main_theorem(a: &StructureAlgebra, emb: &SemisimpleEmbedding) -> Result<MainCertificate> {
    let d = decompose(a, emb)?;
    let gate = hypothesis_gate(&d)?;
    if !gate.passed() {
        return Err(Error::HypothesisViolated(gate.failures().join("; ")));
    }
    let full = Subspace::full(a.field(), a.dim());
    let a1 = derived_subalgebra(a, &full)?;
    let gens = l_generators(&d)?;
    let l = l_closure(a, &gens)?;
    let a2 = derived_subalgebra(a, &a1)?;
    let square_sum = a.subspace_product(&a1, &a1)?.sum(&a1)?;
    let q = derived_subalgebra(a, &emb.span())?;
    let s1_ideal = lie_ideal_closure(a, &q, &a1)?;
    let sizes = emb.block_sizes();
    let gamma = gamma_sets(&sizes);
    let grading = if a.field().characteristic() == 0 {
        let w = cartan_and_weights(a, emb, &a1)?;
        GradingOutcome::Checked(Box::new(gamma_grading_check(a, emb, &w, &gamma.rg)?))
    } else {
        GradingOutcome::NotApplicable
    };
    Ok(MainCertificate {
        block_sizes: sizes,
        lambda_dims: d.lambda_dims(),
        dim: a.dim(),
        derived_dim: a1.dim(),
        second_derived_dim: a2.dim(),
        square_sum_dim: square_sum.dim(),
        s1_ideal_dim: s1_ideal.dim(),
        l_dim: l.dim(),
        l_equals_derived: l == a1,
        perfect: a2 == a1,
        square_identity: square_sum.is_full(),
        generated_by_s1: s1_ideal == a1,
        grading,
        gamma,
        gate,
    })
}
