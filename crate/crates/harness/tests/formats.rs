use assoclie::algcore::basic::BasicAlgebra;
use assoclie::exact::Field;
use assoclie_harness::format::{parse_alg, parse_emb, write_alg, write_emb, EmbFile};
use assoclie_harness::generate::{generate, random_profile, Plant, Regime};
use assoclie_harness::HarnessError;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn parse_error_line(r: Result<impl std::fmt::Debug, HarnessError>) -> usize {
    match r {
        Err(HarnessError::Parse { line, .. }) => line,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn alg_errors_report_their_line() {
    let cases = [
        ("dim 2\n", 1),
        ("field Q\nsize 2\n", 2),
        ("field Q\ndim 2\nsc 1 1 3 1\n", 3),
        ("field Q\ndim 2\nsc 1 1 1 1/0\n", 3),
        ("field Q\ndim 2\nsc 1 1 1 1\n# note\nsc 1 1 1 2\n", 5),
        ("field GF 3\ndim 1\nsc 1 1 1 1/3\n", 3),
        ("field Q\ndim 2\nsc 1 1 1\n", 3),
        ("field Q\ndim 2\nunit 1\n", 3),
        ("field GF 4\ndim 1\n", 1),
        ("field Q\ndim 1\nfoo 1\n", 3),
    ];
    for (text, line) in cases {
        assert_eq!(parse_error_line(parse_alg(text)), line, "{text:?}");
    }
}

#[test]
fn emb_errors_report_their_line() {
    let a = parse_alg("field Q\ndim 2\nsc 1 1 1 1\nsc 2 2 2 1\n").unwrap();
    let cases = [
        ("block 1 1\n", 1),
        ("blocks 1\nblock 2 1\n", 2),
        ("blocks 1\nblock 1 1\neu 1 1 1\n", 3),
        ("blocks 1\nblock 1 1\neu 2 1 1 0\n", 3),
        ("blocks 1\nblock 1 2\neu 1 1 1 0\neu 1 1 1 0\n", 4),
        ("blocks 0\nradical 1\nvec 1 0 0\n", 3),
        ("blocks 0\nlevi 0\nlevi 0\n", 3),
        ("blocks 0\nnilradical 0\n", 2),
    ];
    for (text, line) in cases {
        assert_eq!(parse_error_line(parse_emb(text, &a)), line, "{text:?}");
    }
}

#[test]
fn unit_must_be_an_identity() {
    let err = parse_alg("field Q\ndim 2\nsc 1 1 1 1\nunit 2\n").unwrap_err();
    assert!(matches!(err, HarnessError::Parse { line: 4, .. }));
}

#[test]
fn inflated_path_algebra_round_trips() {
    let basic = BasicAlgebra::path(Field::Rationals, 2, &[(0, 1), (1, 0)], 3).unwrap();
    let a = basic.inflate(&[2, 1], &[]).unwrap().algebra().clone();
    let text = write_alg(&a);
    let b = parse_alg(&text).unwrap();
    assert!(a.nonzero_constants().eq(b.nonzero_constants()));
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::prime(2).unwrap()), Just(Field::prime(3).unwrap()), Just(Field::prime(7).unwrap())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_files_round_trip(field in field_strategy(), seed in any::<u64>(), fd in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let regime = if fd { Regime::Fd } else { Regime::Main };
        let p = random_profile(&mut rng, field, regime, 24, Plant { radical: true, levi: true }).unwrap();
        let g = generate(&p).unwrap();
        let a = parse_alg(&g.alg).unwrap();
        prop_assert_eq!(write_alg(&a), g.alg.clone());
        let e = parse_emb(&g.emb, &a).unwrap();
        prop_assert_eq!(write_emb(&e), g.emb.clone());
        prop_assert_eq!(e.radical_space(&a).unwrap().unwrap(), g.radical);
        prop_assert_eq!(e.levi_space(&a).unwrap().unwrap(), g.levi);
    }

    #[test]
    fn comments_do_not_change_meaning(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_profile(&mut rng, Field::Rationals, Regime::Main, 16, Plant::default()).unwrap();
        let g = generate(&p).unwrap();
        let noisy: String = g.alg.lines().map(|l| format!("  {l}   # remark\n\n")).collect();
        prop_assert_eq!(write_alg(&parse_alg(&noisy).unwrap()), g.alg.clone());
        let a = parse_alg(&g.alg).unwrap();
        let e = parse_emb(&g.emb, &a).unwrap();
        let blank = EmbFile { blocks: e.blocks.clone(), radical: None, levi: None };
        prop_assert_eq!(parse_emb(&write_emb(&blank), &a).unwrap(), blank);
    }
}
