use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use assoclie::exact::{Field, Scalar, Vector};
use assoclie::liegrade::{cartan_and_weights, derived_subalgebra, gamma_sets, lemma_witness, ChainKind};
use assoclie::sdecomp::decompose;
use assoclie_harness::batch::{batch, BatchSpec};
use assoclie_harness::certificate::{run_verify, witness_records, ExitStatus, Mode, VerifyOptions};
use assoclie_harness::format::{parse_alg, parse_emb, parse_field};
use assoclie_harness::generate::{generate, random_profile, InstanceProfile, LambdaProfile, Outside, Plant, Regime};
use assoclie_harness::HarnessError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "assoclie", version, about = "Exact structure checks for algebras containing a split semisimple S")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded instance as <out>.alg and <out>.emb.
    Generate(GenerateArgs),
    /// Check an instance and emit its certificate.
    Verify(VerifyArgs),
    /// Generate and verify many seeded instances.
    Batch(BatchArgs),
    /// Print the Λ table of the decomposition relative to S.
    Decompose(InputArgs),
    /// Print the weight spaces of [A, A] and the allowed weights.
    Grade(InputArgs),
    /// Print commutator chains for one block.
    Witness(WitnessArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Local,
    Triangular,
    Quiver,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Main,
    Fd,
    NotModgenerated,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Main => Regime::Main,
            RegimeArg::Fd => Regime::Fd,
            RegimeArg::NotModgenerated => Regime::NotModgenerated,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    field: Field,
    #[arg(long, value_enum, default_value = "local")]
    kind: Kind,
    /// Block sizes of S, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    depth: usize,
    #[arg(long, default_value_t = 0)]
    padding: usize,
    /// Arrow counts for `quiver`, rows separated by ';'.
    #[arg(long)]
    arrows: Option<String>,
    /// Size of a vertex outside S, for `quiver`.
    #[arg(long)]
    outside: Option<usize>,
    #[arg(long)]
    keep_outside_identity: bool,
    #[arg(long, value_enum, default_value = "main")]
    regime: RegimeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Upper bound on dim A for `random`.
    #[arg(long, default_value_t = 60)]
    max_dim: usize,
    #[arg(long)]
    plant_radical: bool,
    #[arg(long)]
    plant_levi: bool,
    /// Output prefix.
    #[arg(long, default_value = "instance")]
    out: PathBuf,
    /// Write the profile as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    alg: PathBuf,
    emb: PathBuf,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "main")]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    theta_pairs: usize,
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct BatchArgs {
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    field: Field,
    #[arg(long, value_enum, default_value = "main")]
    regime: RegimeArg,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 60)]
    max_dim: usize,
    #[arg(long, default_value_t = 0)]
    theta_pairs: usize,
    #[arg(long)]
    plant_radical: bool,
    #[arg(long)]
    plant_levi: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Block of S, 1-based.
    #[arg(long, default_value_t = 1)]
    block: usize,
    /// Random (λ, μ) pairs drawn from Λ(i,i); 0 prints the default chain.
    #[arg(long, default_value_t = 0)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path).map_err(|e| HarnessError::Structure(format!("{}: {e}", path.display())))
}

fn write_json(path: Option<&Path>, body: &str) -> Result<(), HarnessError> {
    match path {
        Some(p) => fs::write(p, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn parse_arrows(text: &str) -> Result<Vec<Vec<usize>>, HarnessError> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|c| c.trim().parse().map_err(|_| HarnessError::ProfileInfeasible(format!("bad arrow count '{c}'"))))
                .collect()
        })
        .collect()
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitStatus, HarnessError> {
    let regime = Regime::from(args.regime);
    let plant = Plant { radical: args.plant_radical, levi: args.plant_levi };
    let profile = match args.kind {
        Kind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            random_profile(&mut rng, args.field, regime, args.max_dim, plant)
                .ok_or_else(|| HarnessError::ProfileInfeasible(format!("no profile with dimension at most {}", args.max_dim)))?
        }
        kind => {
            let lambda_profile = match kind {
                Kind::Local => LambdaProfile::MatrixOverLocal { depth: args.depth },
                Kind::Triangular => LambdaProfile::TriangularBlocks { depth: args.depth },
                _ => {
                    let outside = args.outside.map(|size| Outside { size, keep_identity: args.keep_outside_identity });
                    let v = args.sizes.len() + outside.is_some() as usize;
                    let arrows = match &args.arrows {
                        Some(t) => parse_arrows(t)?,
                        None => (0..v).map(|i| (0..v).map(|j| (i != j) as usize).collect()).collect(),
                    };
                    LambdaProfile::QuiverStyle { arrows, outside }
                }
            };
            InstanceProfile {
                field: args.field,
                block_sizes: args.sizes.clone(),
                lambda_profile,
                padding: args.padding,
                regime,
                seed: args.seed,
                plant,
            }
        }
    };
    let g = generate(&profile)?;
    let alg = args.out.with_extension("alg");
    let emb = args.out.with_extension("emb");
    fs::write(&alg, &g.alg)?;
    fs::write(&emb, &g.emb)?;
    if let Some(p) = &args.json {
        fs::write(p, pretty(&serde_json::to_value(&profile)?))?;
    }
    println!("wrote {} and {} (dim {})", alg.display(), emb.display(), g.dim());
    Ok(ExitStatus::Pass)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitStatus, HarnessError> {
    let alg = read(&args.input.alg)?;
    let emb = read(&args.input.emb)?;
    let options = VerifyOptions { mode: Some(args.mode), theta_pairs: args.theta_pairs, timing: args.timing };
    let v = run_verify(&alg, &emb, &options)?;
    let json = v.certificate.to_json();
    match &args.input.json {
        Some(p) => {
            fs::write(p, json)?;
            let c = &v.certificate;
            eprintln!("{:?}: dim {} over {}, gate {}", v.exit, c.dim, c.field, if c.hypotheses.passed { "passed" } else { "failed" });
        }
        None => print!("{json}"),
    }
    Ok(v.exit)
}

fn cmd_batch(args: BatchArgs) -> Result<ExitStatus, HarnessError> {
    let spec = BatchSpec {
        field: args.field,
        regime: args.regime.into(),
        count: args.count,
        seed: args.seed,
        max_dim: args.max_dim,
        plant: Plant { radical: args.plant_radical, levi: args.plant_levi },
        theta_pairs: args.theta_pairs,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| HarnessError::Structure(e.to_string()))?;
    let summary = pool.install(|| batch(&spec));
    eprintln!("{}/{} as expected", summary.as_expected, summary.total);
    write_json(args.json.as_deref(), &summary.to_json())?;
    Ok(if summary.all_as_expected() { ExitStatus::Pass } else { ExitStatus::ConclusionFailed })
}

fn load(input: &InputArgs) -> Result<(assoclie::algcore::StructureAlgebra, assoclie_harness::EmbFile), HarnessError> {
    let a = parse_alg(&read(&input.alg)?)?;
    let file = parse_emb(&read(&input.emb)?, &a)?;
    Ok((a, file))
}

fn core(e: assoclie::Error) -> HarnessError {
    HarnessError::Structure(e.to_string())
}

fn cmd_decompose(args: InputArgs) -> Result<ExitStatus, HarnessError> {
    let (a, file) = load(&args)?;
    let emb = file.embedding(&a)?;
    let d = decompose(&a, &emb).map_err(core)?;
    let mut constants: Vec<(usize, usize, usize, String)> =
        d.lambda_algebra().nonzero_constants().map(|(i, j, k, c)| (i + 1, j + 1, k + 1, c.to_string())).collect();
    constants.sort();
    let body = json!({
        "sizes": d.sizes(),
        "lambda_dims": d.lambda_dims(),
        "structure_constants": constants,
    });
    write_json(args.json.as_deref(), &pretty(&body))?;
    Ok(ExitStatus::Pass)
}

fn cmd_grade(args: InputArgs) -> Result<ExitStatus, HarnessError> {
    let (a, file) = load(&args)?;
    let emb = file.embedding(&a)?;
    let full = assoclie::exact::Subspace::full(a.field(), a.dim());
    let a1 = derived_subalgebra(&a, &full).map_err(core)?;
    let w = cartan_and_weights(&a, &emb, &a1).map_err(core)?;
    let gamma = gamma_sets(&emb.block_sizes());
    let weights: Vec<(Vec<i64>, usize)> = w.support().into_iter().map(|x| (x.clone(), w.space(&x).map_or(0, |s| s.dim()))).collect();
    let outside: Vec<&Vec<i64>> = weights.iter().map(|(x, _)| x).filter(|x| !gamma.rg.contains(*x)).collect();
    let body = json!({
        "derived_dim": a1.dim(),
        "weights": weights,
        "gamma": gamma.rg,
        "outside_gamma": outside,
        "gamma_sets_coincide": gamma.coincide,
    });
    write_json(args.json.as_deref(), &pretty(&body))?;
    Ok(if outside.is_empty() { ExitStatus::Pass } else { ExitStatus::ConclusionFailed })
}

fn cmd_witness(args: WitnessArgs) -> Result<ExitStatus, HarnessError> {
    let (a, file) = load(&args.input)?;
    let emb = file.embedding(&a)?;
    let d = decompose(&a, &emb).map_err(core)?;
    if args.block == 0 || args.block >= d.index_count() {
        return Err(HarnessError::Structure(format!("block {} outside 1..={}", args.block, d.index_count() - 1)));
    }
    let mut chains = Vec::new();
    let mut all = true;
    if args.pairs == 0 {
        let r = witness_records(&d)?;
        let rec = &r[args.block - 1];
        all &= rec.holds;
        chains.push(serde_json::to_value(rec)?);
    }
    let li = d.lambda(args.block, args.block);
    let field = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vector {
        let c: Vec<Scalar> = (0..li.dim()).map(|_| field.from_i64(rng.random_range(-3..=3))).collect();
        li.combine(&c)
    };
    for _ in 0..args.pairs {
        let lam = draw(&mut rng);
        let mu = draw(&mut rng);
        let w = lemma_witness(&d, args.block, &lam, &mu).map_err(core)?;
        all &= w.holds;
        chains.push(json!({
            "kind": if w.kind == ChainKind::Cyclic { "cyclic" } else { "anchored" },
            "lambda": lam.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "mu": mu.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "positions": w.positions.iter().map(|&((s, t), (u, v))| [s, t, u, v]).collect::<Vec<_>>(),
            "holds": w.holds,
        }));
    }
    write_json(args.input.json.as_deref(), &pretty(&json!({ "block": args.block, "chains": chains })))?;
    Ok(if all { ExitStatus::Pass } else { ExitStatus::ConclusionFailed })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Batch(a) => cmd_batch(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Grade(a) => cmd_grade(a),
        Command::Witness(a) => cmd_witness(a),
    };
    match outcome {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ExitStatus::InputError.code() as u8)
        }
    }
}
