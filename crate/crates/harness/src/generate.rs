//! Seeded instances with a planted split semisimple subalgebra `S`.
//!
//! Every instance is an inflation `⊕ M_{m_i × m_j} ⊗ Λ(i,j)` of a basic
//! algebra, followed by a change of basis. `S` is the top-left
//! `n_i × n_i` corner of each of the first `s` vertices.

use assoclie::algcore::basic::{BasicAlgebra, Inflated, Scrambled};
use assoclie::algcore::StructureAlgebra;
use assoclie::exact::{Field, Subspace};
use assoclie::liegrade::{hypothesis_gate, required_perfection};
use assoclie::sdecomp::{decompose, verify_embedding, SemisimpleEmbedding};
use assoclie::wedderburn::{k_perfect_check, levi_lift, radical};
use assoclie::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::format::{parse_alg, parse_emb, write_alg, write_emb, EmbFile};

/// Scrambles tried before giving up on an fd instance.
const MAX_ATTEMPTS: u64 = 8;

/// Shape of `Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LambdaProfile {
    /// `⊕ M_{n_i} ⊗ F[t]/(t^depth)`.
    MatrixOverLocal { depth: usize },
    /// Block upper triangular with matrix diagonal, tensored with
    /// `F[t]/(t^depth)`.
    TriangularBlocks { depth: usize },
    /// `Λ(i,j)` spanned by `arrows[i][j]` arrows, all products of two arrows
    /// zero. Rows and columns past the blocks of `S` belong to `outside`.
    QuiverStyle { arrows: Vec<Vec<usize>>, outside: Option<Outside> },
}

/// An extra vertex not covered by `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outside {
    pub size: usize,
    /// Keeping the identity of this vertex makes `A` not generated by `S`.
    pub keep_identity: bool,
}

/// Which hypotheses the emitted instance must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Generated by `S` as an ideal, with `S` 1-perfect (`p ≠ 2`) or
    /// 4-perfect (`p = 2`).
    Main,
    /// `A` itself 1-perfect (`p ≠ 2`) or 4-perfect (`p = 2`), with verified
    /// radical and Levi subalgebra.
    Fd,
    /// `S` is k-perfect but does not generate `A` as an ideal.
    NotModgenerated,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plant {
    pub radical: bool,
    pub levi: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceProfile {
    #[serde(with = "field_serde")]
    pub field: Field,
    /// `n_i`, the sizes of the blocks of `S`.
    pub block_sizes: Vec<usize>,
    pub lambda_profile: LambdaProfile,
    /// Each block of `S` sits in the corner of `M_{n_i + padding}`.
    pub padding: usize,
    pub regime: Regime,
    pub seed: u64,
    pub plant: Plant,
}

mod field_serde {
    use assoclie::exact::Field;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &Field, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::format::field_name(*f))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Field, D::Error> {
        let s = String::deserialize(d)?;
        crate::format::parse_field(&s).map_err(serde::de::Error::custom)
    }
}

/// An emitted instance with its parsed form.
#[derive(Debug, Clone)]
pub struct Generated {
    pub profile: InstanceProfile,
    pub alg: String,
    pub emb: String,
    pub algebra: StructureAlgebra,
    pub embedding: SemisimpleEmbedding,
    pub radical: Subspace,
    pub levi: Subspace,
    /// Number of scrambles tried, counting the accepted one.
    pub attempts: u64,
}

impl Generated {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

struct Plan {
    basic: BasicAlgebra,
    sizes: Vec<usize>,
    drop: Vec<usize>,
}

fn infeasible(msg: impl Into<String>) -> HarnessError {
    HarnessError::ProfileInfeasible(msg.into())
}

/// Smallest block of `S` allowed in characteristic `p`.
pub fn min_block(field: Field) -> usize {
    if field.characteristic() == 2 {
        3
    } else {
        2
    }
}

fn plan(profile: &InstanceProfile) -> Result<Plan> {
    let field = profile.field;
    let s = profile.block_sizes.len();
    if s == 0 {
        return Err(infeasible("S needs at least one block"));
    }
    let lo = min_block(field);
    if let Some(&n) = profile.block_sizes.iter().find(|&&n| n < lo) {
        return Err(infeasible(format!("block size {n} below {lo} in characteristic {}", field.characteristic())));
    }
    let mut sizes: Vec<usize> = profile.block_sizes.iter().map(|n| n + profile.padding).collect();
    let mut drop = Vec::new();
    let basic = match &profile.lambda_profile {
        LambdaProfile::MatrixOverLocal { depth } => {
            if *depth == 0 {
                return Err(infeasible("depth must be positive"));
            }
            let loops: Vec<(usize, usize)> = if *depth > 1 { (0..s).map(|v| (v, v)).collect() } else { Vec::new() };
            BasicAlgebra::path(field, s, &loops, *depth)?
        }
        LambdaProfile::TriangularBlocks { depth } => {
            if *depth == 0 {
                return Err(infeasible("depth must be positive"));
            }
            let pairs: Vec<(usize, usize)> = (0..s).flat_map(|i| (i + 1..s).map(move |j| (i, j))).collect();
            BasicAlgebra::incidence(field, s, &pairs)?.tensor_local(*depth)?
        }
        LambdaProfile::QuiverStyle { arrows, outside } => {
            let v = s + outside.is_some() as usize;
            if arrows.len() != v || arrows.iter().any(|r| r.len() != v) {
                return Err(infeasible(format!("arrow table must be {v} × {v}")));
            }
            if let Some(o) = outside {
                if o.size == 0 {
                    return Err(infeasible("outside vertex size must be positive"));
                }
                sizes.push(o.size);
                if !o.keep_identity {
                    drop.push(s);
                }
            }
            let list: Vec<(usize, usize)> = (0..v)
                .flat_map(|i| (0..v).flat_map(move |j| std::iter::repeat_n((i, j), arrows[i][j])))
                .collect();
            BasicAlgebra::path(field, v, &list, 2)?
        }
    };
    Ok(Plan { basic, sizes, drop })
}

/// `dim A` of the profile, without building it.
pub fn profile_dim(profile: &InstanceProfile) -> Result<usize> {
    let p = plan(profile)?;
    let mut dim = 0;
    for (i, row) in p.basic.corner_dims().iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            dim += p.sizes[i] * p.sizes[j] * c;
        }
    }
    Ok(dim - p.drop.iter().map(|&v| p.sizes[v] * p.sizes[v]).sum::<usize>())
}

fn embedding_of(profile: &InstanceProfile, inflated: &Inflated, scrambled: &Scrambled) -> Result<SemisimpleEmbedding> {
    let blocks = profile
        .block_sizes
        .iter()
        .enumerate()
        .map(|(v, &n)| Ok(scrambled.map_units(&inflated.corner_units(v, n)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SemisimpleEmbedding::new(&scrambled.algebra, blocks)?)
}

fn check_regime(profile: &InstanceProfile, a: &StructureAlgebra, emb: &SemisimpleEmbedding) -> Result<()> {
    let d = decompose(a, emb)?;
    let gate = hypothesis_gate(&d)?;
    match profile.regime {
        Regime::Main if !gate.passed() => Err(infeasible(format!("main gate fails: {}", gate.failures().join("; ")))),
        Regime::NotModgenerated if !gate.s_k_perfect || gate.modgen.modgenerated || gate.modgen.witness.is_none() => {
            Err(infeasible("instance is generated by S as an ideal"))
        }
        _ => Ok(()),
    }
}

/// Radical and Levi checks for the fd regime.
fn check_fd(a: &StructureAlgebra, rad: &Subspace, levi: &Subspace) -> Result<()> {
    let k = required_perfection(a.field().characteristic());
    let r = radical(a, Some(rad))?;
    let lifted = levi_lift(a, &r)?;
    if !lifted.check(a, r.radical())?.passed() {
        return Err(HarnessError::Generation("lifted Levi subalgebra fails its checks".into()));
    }
    if !a.is_subalgebra(levi)? || !levi.intersection(rad)?.is_zero() || levi.dim() + rad.dim() != a.dim() {
        return Err(HarnessError::Generation("planted Levi subalgebra is not a complement".into()));
    }
    let kp = k_perfect_check(a, k, Some(rad))?;
    if !kp.is_k_perfect {
        return Err(infeasible(format!("A is not {k}-perfect")));
    }
    Ok(())
}

/// Builds, verifies and serializes the instance described by `profile`.
///
/// The same profile always yields byte-identical files.
pub fn generate(profile: &InstanceProfile) -> Result<Generated> {
    let plan = plan(profile)?;
    let inflated = plan.basic.inflate(&plan.sizes, &plan.drop)?;
    if !inflated.algebra().verify_associativity().passed() {
        return Err(HarnessError::Generation("inflation is not associative".into()));
    }
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(profile.seed);
        rng.set_stream(attempt);
        let scrambled = inflated.scramble(&mut rng)?;
        let a = &scrambled.algebra;
        let emb = embedding_of(profile, &inflated, &scrambled)?;
        if let Some(v) = verify_embedding(a, &emb).violation {
            return Err(HarnessError::Generation(format!("planted S fails: {v:?}")));
        }
        check_regime(profile, a, &emb)?;
        let rad = scrambled.map_subspace(&inflated.radical());
        let levi = scrambled.map_subspace(&inflated.levi());
        let planted_needed = profile.regime == Regime::Fd || profile.plant.radical;
        if planted_needed {
            let outcome = if profile.regime == Regime::Fd {
                check_fd(a, &rad, &levi)
            } else {
                radical(a, Some(&rad)).map(|_| ()).map_err(HarnessError::from)
            };
            match outcome {
                Err(HarnessError::Core(Error::NotSplit(m))) => {
                    last = Some(m);
                    continue;
                }
                other => other?,
            }
        }
        let file = EmbFile {
            blocks: emb.blocks().to_vec(),
            radical: profile.plant.radical.then(|| rad.basis().to_vec()),
            levi: profile.plant.levi.then(|| levi.basis().to_vec()),
        };
        let alg_text = write_alg(a);
        let emb_text = write_emb(&file);
        let reparsed = parse_alg(&alg_text)?;
        if parse_emb(&emb_text, &reparsed)? != file || write_alg(&reparsed) != alg_text {
            return Err(HarnessError::Generation("emitted files do not round-trip".into()));
        }
        return Ok(Generated {
            profile: profile.clone(),
            alg: alg_text,
            emb: emb_text,
            embedding: emb,
            algebra: scrambled.algebra,
            radical: rad,
            levi,
            attempts: attempt + 1,
        });
    }
    Err(HarnessError::Generation(format!(
        "block discovery failed after {MAX_ATTEMPTS} scrambles: {}",
        last.unwrap_or_default()
    )))
}

/// Draws a profile of the given regime with `dim A ≤ max_dim`.
pub fn random_profile<R: Rng>(rng: &mut R, field: Field, regime: Regime, max_dim: usize, plant: Plant) -> Option<InstanceProfile> {
    let lo = min_block(field);
    for _ in 0..256 {
        let s = rng.random_range(1..=3usize);
        let block_sizes: Vec<usize> = (0..s).map(|_| lo + rng.random_range(0..=2usize)).collect();
        let padding = if rng.random_ratio(1, 3) { 1 } else { 0 };
        let kind = if regime == Regime::NotModgenerated { 2 } else { rng.random_range(0..3u32) };
        let lambda_profile = match kind {
            0 => LambdaProfile::MatrixOverLocal { depth: rng.random_range(1..=3) },
            1 => LambdaProfile::TriangularBlocks { depth: rng.random_range(1..=2) },
            _ => {
                let outside = match regime {
                    Regime::NotModgenerated => Some(Outside { size: rng.random_range(1..=2), keep_identity: rng.random_bool(0.5) }),
                    _ if rng.random_bool(0.5) => Some(Outside { size: rng.random_range(1..=2), keep_identity: false }),
                    _ => None,
                };
                let v = s + outside.is_some() as usize;
                let mut arrows = vec![vec![0; v]; v];
                for (i, row) in arrows.iter_mut().enumerate() {
                    for (j, c) in row.iter_mut().enumerate() {
                        let outer = i == s || j == s;
                        *c = if i == j && outer { 0 } else { (rng.random_ratio(2, 5) as usize) * rng.random_range(1..=2usize) };
                    }
                }
                if let Some(o) = outside {
                    if regime == Regime::NotModgenerated && !o.keep_identity {
                        arrows[s][s] = 1;
                    }
                }
                LambdaProfile::QuiverStyle { arrows, outside }
            }
        };
        let profile = InstanceProfile { field, block_sizes, lambda_profile, padding, regime, seed: rng.random(), plant };
        if profile_dim(&profile).is_ok_and(|d| d <= max_dim) {
            return Some(profile);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(field: Field, sizes: &[usize], lambda_profile: LambdaProfile) -> InstanceProfile {
        InstanceProfile {
            field,
            block_sizes: sizes.to_vec(),
            lambda_profile,
            padding: 0,
            regime: Regime::Main,
            seed: 7,
            plant: Plant::default(),
        }
    }

    #[test]
    fn matrix_over_local_has_dimension_eight() {
        let p = profile(Field::Rationals, &[2], LambdaProfile::MatrixOverLocal { depth: 2 });
        assert_eq!(profile_dim(&p).unwrap(), 8);
        let g = generate(&p).unwrap();
        assert_eq!(g.dim(), 8);
        assert_eq!(g.embedding.block_sizes(), vec![2]);
    }

    #[test]
    fn triangular_blocks_are_modgenerated() {
        let p = profile(Field::Rationals, &[2, 2], LambdaProfile::TriangularBlocks { depth: 1 });
        let g = generate(&p).unwrap();
        assert_eq!(g.dim(), 12);
        let d = decompose(&g.algebra, &g.embedding).unwrap();
        assert!(hypothesis_gate(&d).unwrap().modgen.modgenerated);
    }

    #[test]
    fn small_blocks_in_characteristic_two_are_infeasible() {
        let p = profile(Field::prime(2).unwrap(), &[2], LambdaProfile::MatrixOverLocal { depth: 1 });
        assert!(matches!(generate(&p), Err(HarnessError::ProfileInfeasible(_))));
    }

    #[test]
    fn outside_identity_breaks_modgeneration() {
        let arrows = vec![vec![0, 1], vec![1, 0]];
        let mut p = profile(
            Field::Rationals,
            &[2],
            LambdaProfile::QuiverStyle { arrows, outside: Some(Outside { size: 1, keep_identity: true }) },
        );
        assert!(matches!(generate(&p), Err(HarnessError::ProfileInfeasible(_))));
        p.regime = Regime::NotModgenerated;
        assert!(generate(&p).is_ok());
    }

    #[test]
    fn profile_dim_matches_generation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for regime in [Regime::Main, Regime::NotModgenerated] {
            for _ in 0..10 {
                let p = random_profile(&mut rng, Field::Rationals, regime, 30, Plant::default()).unwrap();
                assert_eq!(profile_dim(&p).unwrap(), generate(&p).unwrap().dim(), "{p:?}");
            }
        }
    }
}
