//! Seeded runs of generate + verify over many instances.

use assoclie::exact::Field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{run_verify, Certificate, ExitStatus, Mode, VerifyOptions};
use crate::generate::{generate, random_profile, Generated, InstanceProfile, Plant, Regime};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSpec {
    #[serde(with = "field_str")]
    pub field: Field,
    pub regime: Regime,
    pub count: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub plant: Plant,
    pub theta_pairs: usize,
}

mod field_str {
    use assoclie::exact::Field;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &Field, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::format::field_name(*f))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Field, D::Error> {
        crate::format::parse_field(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub index: usize,
    /// Replays this entry through [`instance_profile`].
    pub seed: u64,
    pub profile: Option<InstanceProfile>,
    pub dim: Option<usize>,
    pub exit: Option<ExitStatus>,
    /// Whether the exit status is the one the regime predicts.
    pub expected: bool,
    pub digest: Option<String>,
    pub error: Option<String>,
    #[serde(skip)]
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub spec: BatchSpec,
    pub total: usize,
    pub as_expected: usize,
    pub unexpected_seeds: Vec<u64>,
    pub entries: Vec<BatchEntry>,
}

impl BatchSummary {
    pub fn all_as_expected(&self) -> bool {
        self.as_expected == self.total
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

/// Seed of entry `index`.
pub fn entry_seed(batch_seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(batch_seed);
    rng.set_stream(index as u64);
    rng.random()
}

/// The profile drawn from an entry seed.
pub fn instance_profile(spec: &BatchSpec, seed: u64) -> Option<InstanceProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_profile(&mut rng, spec.field, spec.regime, spec.max_dim, spec.plant)
}

pub fn expected_exit(regime: Regime) -> ExitStatus {
    match regime {
        Regime::Main | Regime::Fd => ExitStatus::Pass,
        Regime::NotModgenerated => ExitStatus::GateFailed,
    }
}

pub fn verify_generated(g: &Generated, theta_pairs: usize) -> crate::Result<Certificate> {
    let mode = if g.profile.regime == Regime::Fd { Mode::Fd } else { Mode::Main };
    let options = VerifyOptions { mode: Some(mode), theta_pairs, timing: false };
    Ok(run_verify(&g.alg, &g.emb, &options)?.certificate)
}

fn run_entry(spec: &BatchSpec, index: usize) -> BatchEntry {
    let seed = entry_seed(spec.seed, index);
    let mut entry =
        BatchEntry { index, seed, profile: None, dim: None, exit: None, expected: false, digest: None, error: None, certificate: None };
    let Some(profile) = instance_profile(spec, seed) else {
        entry.error = Some(format!("no profile with dimension at most {}", spec.max_dim));
        return entry;
    };
    entry.profile = Some(profile.clone());
    let outcome = generate(&profile).and_then(|g| {
        entry.dim = Some(g.dim());
        verify_generated(&g, spec.theta_pairs)
    });
    match outcome {
        Ok(cert) => {
            entry.exit = Some(cert.exit);
            entry.expected = cert.exit == expected_exit(spec.regime);
            entry.digest = Some(cert.digest.clone());
            entry.certificate = Some(cert);
        }
        Err(e) => entry.error = Some(e.to_string()),
    }
    entry
}

/// Runs `spec.count` instances in parallel; entries come back in index
/// order regardless of scheduling.
pub fn batch(spec: &BatchSpec) -> BatchSummary {
    let entries: Vec<BatchEntry> = (0..spec.count).into_par_iter().map(|i| run_entry(spec, i)).collect();
    let as_expected = entries.iter().filter(|e| e.expected).count();
    let unexpected_seeds = entries.iter().filter(|e| !e.expected).map(|e| e.seed).collect();
    BatchSummary { spec: spec.clone(), total: entries.len(), as_expected, unexpected_seeds, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(count: usize) -> BatchSpec {
        BatchSpec {
            field: Field::Rationals,
            regime: Regime::Main,
            count,
            seed: 11,
            max_dim: 20,
            plant: Plant::default(),
            theta_pairs: 0,
        }
    }

    #[test]
    fn empty_batch_has_empty_summary() {
        let s = batch(&spec(0));
        assert_eq!(s.total, 0);
        assert!(s.entries.is_empty() && s.unexpected_seeds.is_empty());
        assert!(s.all_as_expected());
    }

    #[test]
    fn entries_replay_from_their_seed() {
        let sp = spec(3);
        let s = batch(&sp);
        assert!(s.all_as_expected(), "{:?}", s.entries);
        for e in &s.entries {
            assert_eq!(instance_profile(&sp, e.seed).as_ref(), e.profile.as_ref());
            assert_eq!(run_entry(&sp, e.index), *e);
        }
    }
}
