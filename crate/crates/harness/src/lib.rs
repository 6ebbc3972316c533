//! Instance generation, file formats, certificates and batch runs for the
//! `assoclie` structure checks.

pub mod batch;
pub mod certificate;
pub mod error;
pub mod format;
pub mod generate;

pub use batch::{batch, BatchEntry, BatchSpec, BatchSummary};
pub use certificate::{run_verify, Certificate, ExitStatus, Mode, Verdict, VerifyOptions, Verification};
pub use error::{HarnessError, Result};
pub use format::{parse_alg, parse_emb, write_alg, write_emb, EmbFile};
pub use generate::{generate, Generated, InstanceProfile, LambdaProfile, Outside, Plant, Regime};
