//! Verification of `.alg`/`.emb` inputs and the JSON certificate.

use std::collections::BTreeMap;
use std::time::Instant;

use assoclie::algcore::StructureAlgebra;
use assoclie::exact::{Scalar, Subspace, Vector};
use assoclie::liegrade::{
    conclusion_probe, derived_subalgebra, hypothesis_gate, lemma_witness, required_perfection, verify_main_theorem, ChainKind, ConclusionProbe,
    GradingOutcome, MainCertificate,
};
use assoclie::sdecomp::{decompose, verify_embedding, SDecomposition};
use assoclie::wedderburn::{k_perfect_check, levi_lift, radical, RadicalMethod};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};
use crate::format::{field_name, parse_alg, parse_emb, EmbFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `A` generated by a k-perfect `S`.
    Main,
    /// `A` itself k-perfect; radical and Levi subalgebra are checked first.
    Fd,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub mode: Option<Mode>,
    /// Random pairs for the multiplicativity check of `θ`; 0 skips it.
    pub theta_pairs: usize,
    /// Record wall-clock time; certificates then differ between runs.
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    /// Skipped because the hypotheses fail.
    NotEvaluated,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExitStatus {
    Pass = 0,
    GateFailed = 2,
    ConclusionFailed = 3,
    InputError = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// One conclusion as a subspace equality `lhs = rhs`, by dimension and
/// exact comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub verdict: Verdict,
    pub statement: String,
    pub lhs_dim: Option<usize>,
    pub rhs_dim: Option<usize>,
}

impl Conclusion {
    fn new(statement: &str, verdict: Verdict, lhs_dim: Option<usize>, rhs_dim: Option<usize>) -> Self {
        Conclusion { verdict, statement: statement.to_string(), lhs_dim, rhs_dim }
    }

    fn skipped(statement: &str, verdict: Verdict) -> Self {
        Conclusion::new(statement, verdict, None, None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusions {
    pub perfect: Conclusion,
    pub square_identity: Conclusion,
    pub generated_by_s1: Conclusion,
    pub grading: Conclusion,
    pub derived_dim: Option<usize>,
    /// Dimension of the Lie algebra generated by the `θ`-images.
    pub l_dim: Option<usize>,
    pub l_equals_derived: Option<bool>,
    pub grading_detail: Option<GradingDetail>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingDetail {
    pub gamma1: bool,
    pub gamma2: bool,
    pub gamma3: bool,
    pub failure: Option<String>,
    /// `weight → dim` for the weight spaces of `A^(1)`.
    pub weights: BTreeMap<String, usize>,
    pub gamma_size: usize,
    /// Whether the sum-of-weights set equals roots plus module weights.
    pub gamma_sets_coincide: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModgenVerdict {
    pub modgenerated: bool,
    pub via_bs: bool,
    pub via_lambda: bool,
    pub via_ideal: bool,
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdHypotheses {
    pub radical_dim: usize,
    pub radical_method: String,
    pub nilpotency_index: usize,
    pub planted_radical: bool,
    pub quotient_block_sizes: Vec<usize>,
    pub levi_dim: usize,
    pub levi_complement: bool,
    pub planted_levi_complement: Option<bool>,
    pub square_is_full: bool,
    pub k_perfect: bool,
    /// Codimension of a proper ideal refuting k-perfectness.
    pub witness_codim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub passed: bool,
    pub failures: Vec<String>,
    pub s_block_sizes: Vec<usize>,
    pub required_k: usize,
    pub s_k_perfect: Option<bool>,
    pub modgenerated: Option<ModgenVerdict>,
    pub fd: Option<FdHypotheses>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaTable {
    /// `n_i` with `n_0 = 1` for the trivial index.
    pub sizes: Vec<usize>,
    pub dims: Vec<Vec<usize>>,
    pub theta_dimension_sum: usize,
    /// Nonzero structure constants of `⊕ Λ(i,j)`, 1-based.
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    pub theta: Option<ThetaVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaVerdict {
    pub pairs_checked: usize,
    pub seed: u64,
    pub passed: bool,
}

/// A commutator chain, recorded by matrix-unit positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub block: usize,
    pub kind: String,
    pub positions: Vec<[usize; 4]>,
    pub holds: bool,
}

/// Outcome of the ungated conclusions on an instance whose hypotheses fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeControl {
    pub derived_dim: usize,
    pub perfect: bool,
    /// An element of `A^(1)` outside `[A^(1), A^(1)]`.
    pub perfect_witness: Option<Vec<String>>,
    pub square_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// SHA-256 of the `.alg` bytes, a zero byte and the `.emb` bytes.
    pub digest: String,
    pub mode: Mode,
    pub field: String,
    pub dim: usize,
    pub hypotheses: Hypotheses,
    pub conclusions: Conclusions,
    pub lambda: Option<LambdaTable>,
    pub witnesses: Vec<WitnessRecord>,
    pub negative_control: Option<NegativeControl>,
    pub exit: ExitStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone)]
pub struct Verification {
    pub certificate: Certificate,
    pub exit: ExitStatus,
}

pub fn digest(alg: &str, emb: &str) -> String {
    let mut h = Sha256::new();
    h.update(alg.as_bytes());
    h.update([0u8]);
    h.update(emb.as_bytes());
    hex::encode(h.finalize())
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn structure_error(e: assoclie::Error) -> HarnessError {
    HarnessError::Structure(e.to_string())
}

const PERFECT: &str = "[A^(1), A^(1)] = A^(1)";
const SQUARE: &str = "A^(1) A^(1) + A^(1) = A";
const GENERATED: &str = "Lie ideal of A^(1) generated by S^(1) = A^(1)";
const GRADING: &str = "A^(1) is Gamma-graded";

/// Parses both files and checks the selected theorem.
///
/// Parse and structure errors are returned as `Err`; everything else,
/// including gate failures, yields a certificate.
pub fn run_verify(alg: &str, emb: &str, options: &VerifyOptions) -> Result<Verification> {
    let start = Instant::now();
    let a = parse_alg(alg)?;
    let file = parse_emb(emb, &a)?;
    let mode = options.mode.unwrap_or(Mode::Main);
    let hash = digest(alg, emb);
    let seed = u64::from_str_radix(&hash[..16], 16).expect("hex digest");
    let mut cert = match mode {
        Mode::Main => verify_main(&a, &file, options.theta_pairs, seed)?,
        Mode::Fd => verify_fd(&a, &file)?,
    };
    cert.digest = hash;
    if options.timing {
        cert.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(Verification { exit: cert.exit, certificate: cert })
}

fn skeleton(a: &StructureAlgebra, mode: Mode, hypotheses: Hypotheses) -> Certificate {
    let na = |s| Conclusion::skipped(s, Verdict::NotEvaluated);
    Certificate {
        digest: String::new(),
        mode,
        field: field_name(a.field()),
        dim: a.dim(),
        hypotheses,
        conclusions: Conclusions {
            perfect: na(PERFECT),
            square_identity: na(SQUARE),
            generated_by_s1: na(GENERATED),
            grading: na(GRADING),
            derived_dim: None,
            l_dim: None,
            l_equals_derived: None,
            grading_detail: None,
        },
        lambda: None,
        witnesses: Vec::new(),
        negative_control: None,
        exit: ExitStatus::GateFailed,
        timing_ms: None,
    }
}

fn negative_control(probe: ConclusionProbe) -> NegativeControl {
    NegativeControl {
        derived_dim: probe.derived_dim,
        perfect: probe.perfect,
        perfect_witness: probe.perfect_witness.as_deref().map(strings),
        square_identity: probe.square_identity,
    }
}

fn lambda_table(d: &SDecomposition<'_>, theta_pairs: usize, seed: u64) -> Result<LambdaTable> {
    let la = d.lambda_algebra();
    let mut structure_constants: Vec<(usize, usize, usize, String)> =
        la.nonzero_constants().map(|(i, j, k, c)| (i + 1, j + 1, k + 1, c.to_string())).collect();
    structure_constants.sort();
    let dims = d.lambda_dims();
    let sizes = d.sizes().to_vec();
    let theta_dimension_sum =
        (0..sizes.len()).flat_map(|i| (0..sizes.len()).map(move |j| (i, j))).map(|(i, j)| sizes[i] * sizes[j] * dims[i][j]).sum();
    let theta = if theta_pairs > 0 {
        let r = d.check_theta(theta_pairs, seed).map_err(structure_error)?;
        Some(ThetaVerdict { pairs_checked: r.pairs_checked, seed, passed: r.passed() })
    } else {
        None
    };
    Ok(LambdaTable { sizes, dims, theta_dimension_sum, structure_constants, theta })
}

/// `Σ c_k b_k` with `c_k = k + 1`, a deterministic element of `U` that
/// involves every basis vector.
fn spread(u: &Subspace) -> Vector {
    let field = u.field();
    let coeffs: Vec<Scalar> = (0..u.dim()).map(|k| field.from_i64(k as i64 + 1)).collect();
    u.combine(&coeffs)
}

/// One chain per block on `λ = Σ b_k`, `μ = Σ (k+1) b_k` over a basis of
/// `Λ(i,i)`.
pub fn witness_records(d: &SDecomposition<'_>) -> Result<Vec<WitnessRecord>> {
    let mut out = Vec::new();
    for i in 1..d.index_count() {
        let li = d.lambda(i, i);
        let field = li.field();
        let lam = li.combine(&vec![field.one(); li.dim()]);
        let mu = spread(li);
        let w = lemma_witness(d, i, &lam, &mu).map_err(structure_error)?;
        out.push(WitnessRecord {
            block: i,
            kind: match w.kind {
                ChainKind::Cyclic => "cyclic",
                ChainKind::Anchored => "anchored",
            }
            .to_string(),
            positions: w.positions.iter().map(|&((s, t), (u, v))| [s, t, u, v]).collect(),
            holds: w.holds,
        });
    }
    Ok(out)
}

fn grading_detail(mc: &MainCertificate) -> (Verdict, Option<GradingDetail>) {
    match &mc.grading {
        GradingOutcome::NotApplicable => (Verdict::NotApplicable, None),
        GradingOutcome::Checked(r) => {
            let weights = r.weight_dims.iter().map(|(w, d)| (format!("{w:?}"), *d)).collect();
            let detail = GradingDetail {
                gamma1: r.gamma1,
                gamma2: r.gamma2,
                gamma3: r.gamma3,
                failure: r.failure.as_ref().map(|(ax, w)| format!("{ax:?} at {w:?}")),
                weights,
                gamma_size: mc.gamma.rg.len(),
                gamma_sets_coincide: mc.gamma.coincide,
            };
            (Verdict::of(r.passed()), Some(detail))
        }
    }
}

fn verify_main(a: &StructureAlgebra, file: &EmbFile, theta_pairs: usize, seed: u64) -> Result<Certificate> {
    let emb = file.embedding(a)?;
    if let Some(v) = verify_embedding(a, &emb).violation {
        return Err(HarnessError::Structure(format!("embedding fails: {v:?}")));
    }
    let d = decompose(a, &emb).map_err(structure_error)?;
    let gate = hypothesis_gate(&d).map_err(structure_error)?;
    let modgen = &gate.modgen;
    let hypotheses = Hypotheses {
        passed: gate.passed(),
        failures: gate.failures(),
        s_block_sizes: gate.block_sizes.clone(),
        required_k: gate.required_k,
        s_k_perfect: Some(gate.s_k_perfect),
        modgenerated: Some(ModgenVerdict {
            modgenerated: modgen.modgenerated,
            via_bs: modgen.via_bs,
            via_lambda: modgen.via_lambda,
            via_ideal: modgen.via_ideal,
            witness: modgen.witness.as_deref().map(strings),
        }),
        fd: None,
    };
    let mut cert = skeleton(a, Mode::Main, hypotheses);
    cert.lambda = Some(lambda_table(&d, theta_pairs, seed)?);
    if !gate.passed() {
        cert.negative_control = Some(negative_control(conclusion_probe(a).map_err(structure_error)?));
        return Ok(cert);
    }
    let mc = verify_main_theorem(a, &emb).map_err(structure_error)?;
    cert.witnesses = witness_records(&d)?;
    let (grading, grading_detail) = grading_detail(&mc);
    cert.conclusions = Conclusions {
        perfect: Conclusion::new(PERFECT, Verdict::of(mc.perfect), Some(mc.second_derived_dim), Some(mc.derived_dim)),
        square_identity: Conclusion::new(SQUARE, Verdict::of(mc.square_identity), Some(mc.square_sum_dim), Some(mc.dim)),
        generated_by_s1: Conclusion::new(GENERATED, Verdict::of(mc.generated_by_s1), Some(mc.s1_ideal_dim), Some(mc.derived_dim)),
        grading: Conclusion::new(GRADING, grading, None, None),
        derived_dim: Some(mc.derived_dim),
        l_dim: Some(mc.l_dim),
        l_equals_derived: Some(mc.l_equals_derived),
        grading_detail,
    };
    let theta_ok = cert.lambda.as_ref().and_then(|l| l.theta.as_ref()).is_none_or(|t| t.passed);
    let ok = mc.passed() && cert.witnesses.iter().all(|w| w.holds) && theta_ok;
    cert.exit = if ok { ExitStatus::Pass } else { ExitStatus::ConclusionFailed };
    Ok(cert)
}

fn verify_fd(a: &StructureAlgebra, file: &EmbFile) -> Result<Certificate> {
    let planted = file.radical_space(a)?;
    let planted_levi = file.levi_space(a)?;
    let k = required_perfection(a.field().characteristic());
    let rad = radical(a, planted.as_ref()).map_err(structure_error)?;
    let r = rad.radical();
    let levi = levi_lift(a, &rad).map_err(structure_error)?;
    let levi_ok = levi.check(a, r).map_err(structure_error)?.passed();
    let planted_levi_complement = match &planted_levi {
        Some(l) => Some(a.is_subalgebra(l)? && l.intersection(r)?.is_zero() && l.dim() + r.dim() == a.dim()),
        None => None,
    };
    let kp = k_perfect_check(a, k, Some(r)).map_err(structure_error)?;
    let mut failures = Vec::new();
    if !kp.is_k_perfect {
        failures.push(format!("A is not {k}-perfect"));
    }
    let fd = FdHypotheses {
        radical_dim: r.dim(),
        radical_method: match rad.method() {
            RadicalMethod::TraceForm => "trace_form",
            RadicalMethod::Planted => "planted",
        }
        .to_string(),
        nilpotency_index: rad.nilpotency_index(),
        planted_radical: planted.is_some(),
        quotient_block_sizes: levi.embedding().block_sizes(),
        levi_dim: levi.levi().dim(),
        levi_complement: levi_ok,
        planted_levi_complement,
        square_is_full: kp.square_is_full,
        k_perfect: kp.is_k_perfect,
        witness_codim: kp.witness.as_ref().map(|w| a.dim() - w.dim()),
    };
    let hypotheses = Hypotheses {
        passed: kp.is_k_perfect,
        failures,
        s_block_sizes: file.blocks.iter().map(|b| b.size()).collect(),
        required_k: k,
        s_k_perfect: None,
        modgenerated: None,
        fd: Some(fd),
    };
    let mut cert = skeleton(a, Mode::Fd, hypotheses);
    if !kp.is_k_perfect {
        cert.negative_control = Some(negative_control(conclusion_probe(a).map_err(structure_error)?));
        return Ok(cert);
    }
    let a1 = derived_subalgebra(a, &Subspace::full(a.field(), a.dim()))?;
    let a2 = derived_subalgebra(a, &a1)?;
    let square_sum = a.subspace_product(&a1, &a1)?.sum(&a1)?;
    let perfect = a2 == a1;
    let square_identity = square_sum.is_full();
    cert.conclusions.perfect = Conclusion::new(PERFECT, Verdict::of(perfect), Some(a2.dim()), Some(a1.dim()));
    cert.conclusions.square_identity = Conclusion::new(SQUARE, Verdict::of(square_identity), Some(square_sum.dim()), Some(a.dim()));
    cert.conclusions.generated_by_s1 = Conclusion::skipped(GENERATED, Verdict::NotApplicable);
    cert.conclusions.grading = Conclusion::skipped(GRADING, Verdict::NotApplicable);
    cert.conclusions.derived_dim = Some(a1.dim());
    let ok = perfect && square_identity && levi_ok && planted_levi_complement.unwrap_or(true);
    cert.exit = if ok { ExitStatus::Pass } else { ExitStatus::ConclusionFailed };
    Ok(cert)
}
