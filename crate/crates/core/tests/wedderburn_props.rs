mod common;

use assoclie::algcore::basic::BasicAlgebra;
use assoclie::algcore::constructions::*;
use assoclie::algcore::StructureAlgebra;
use assoclie::exact::{Field, Subspace};
use assoclie::wedderburn::{k_perfect_check, levi_lift, radical, small_ideal_search, split_blocks};
use common::{build, field_strategy, shape_strategy, Instance};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn planted(inst: &Instance) -> Option<&Subspace> {
    let a = inst.algebra();
    match a.field().characteristic() {
        0 => None,
        p if p > a.dim() as u64 => None,
        _ => Some(&inst.radical),
    }
}

fn kept_sizes(inst: &Instance) -> Vec<usize> {
    let mut v: Vec<usize> =
        (0..inst.shape.sizes.len()).filter(|v| !inst.shape.drop.contains(v)).map(|v| inst.shape.sizes[v]).collect();
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radical_matches_construction(shape in shape_strategy(field_strategy(), 1)) {
        let Some(inst) = build(&shape) else { return Ok(()) };
        let a = inst.algebra();
        let r = radical(a, planted(&inst)).unwrap();
        prop_assert_eq!(r.radical(), &inst.radical);
        prop_assert!(a.is_ideal(r.radical()).unwrap());
        prop_assert!(r.powers().last().unwrap().is_zero());
        prop_assert_eq!(r.nilpotency_index(), r.powers().len());
        let mut sizes = split_blocks(a, &r).block_sizes();
        sizes.sort_unstable();
        prop_assert_eq!(sizes, kept_sizes(&inst));
    }

    #[test]
    fn levi_complements_radical(shape in shape_strategy(field_strategy(), 1)) {
        let Some(inst) = build(&shape) else { return Ok(()) };
        let a = inst.algebra();
        let r = radical(a, planted(&inst)).unwrap();
        let levi = levi_lift(a, &r).unwrap();
        let report = levi.check(a, r.radical()).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
        let mut sizes = levi.embedding().block_sizes();
        sizes.sort_unstable();
        prop_assert_eq!(sizes, kept_sizes(&inst));
    }
}

/// Small algebras over GF(2) and GF(3) with their radicals.
fn small_corpus(field: Field) -> Vec<(String, StructureAlgebra, Subspace)> {
    let mut out = Vec::new();
    let mut push = |name: String, a: StructureAlgebra, r: Subspace| {
        if a.dim() <= 6 {
            out.push((name, a, r));
        }
    };
    let span = |a: &StructureAlgebra, idx: &[usize]| {
        Subspace::span(a.field(), a.dim(), idx.iter().map(|&i| a.basis_vector(i)).collect::<Vec<_>>()).unwrap()
    };
    let m2 = matrix_algebra(field, 2);
    push("M2".into(), m2.clone(), Subspace::zero(field, 4));
    let f = matrix_algebra(field, 1);
    let m2f = direct_sum(&m2, &f).unwrap();
    push("M2+F".into(), m2f, Subspace::zero(field, 5));
    let t2 = upper_triangular(field, 2);
    push("T2".into(), t2.clone(), span(&t2, &[1]));
    let t3 = upper_triangular(field, 3);
    push("T3".into(), t3.clone(), span(&t3, &[1, 2, 4]));
    for m in 1..=4 {
        let a = truncated_polynomial(field, m);
        let r = span(&a, &(1..m).collect::<Vec<_>>());
        push(format!("F[t]/t^{m}"), a, r);
    }
    let ff = direct_sum(&f, &f).unwrap();
    push("F+F".into(), ff, Subspace::zero(field, 2));
    for d in 1..=3 {
        push(format!("zero{d}"), StructureAlgebra::zero_product(field, d), Subspace::full(field, d));
    }
    let nil = StructureAlgebra::from_triples(field, 3, [(0, 1, 2, field.one()), (1, 0, 2, field.from_i64(-1))]).unwrap();
    push("heisenberg".into(), nil, Subspace::full(field, 3));
    let quivers: Vec<(usize, Vec<(usize, usize)>, usize, Vec<usize>, Vec<usize>)> = vec![
        (2, vec![(0, 1)], 2, vec![1, 1], vec![]),
        (2, vec![(0, 1)], 2, vec![1, 1], vec![0]),
        (2, vec![(0, 1), (1, 0)], 3, vec![1, 1], vec![]),
        (2, vec![(0, 1), (1, 0)], 2, vec![1, 1], vec![1]),
        (1, vec![(0, 0)], 2, vec![2], vec![]),
        (2, vec![(0, 1)], 2, vec![1, 2], vec![0]),
        (3, vec![(0, 1), (1, 2)], 2, vec![1, 1, 1], vec![]),
        (2, vec![(0, 0), (0, 1)], 2, vec![1, 1], vec![1]),
        (1, vec![(0, 0), (0, 0)], 2, vec![1], vec![]),
        (1, vec![(0, 0)], 3, vec![1], vec![0]),
    ];
    for (k, (n, arrows, len, sizes, drop)) in quivers.into_iter().enumerate() {
        let basic = BasicAlgebra::path(field, n, &arrows, len).unwrap();
        let Ok(inf) = basic.inflate(&sizes, &drop) else { continue };
        if inf.algebra().dim() > 6 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
        let s = inf.scramble(&mut rng).unwrap();
        let r = s.map_subspace(&inf.radical());
        push(format!("quiver{k}"), inf.algebra().clone(), inf.radical());
        push(format!("quiver{k}-scrambled"), s.algebra, r);
    }
    out
}

#[test]
fn k_perfect_agrees_with_exhaustive_search() {
    let mut checked = 0;
    for p in [2, 3] {
        let field = Field::prime(p).unwrap();
        for (name, a, r) in small_corpus(field) {
            for k in 1..=4 {
                let report = k_perfect_check(&a, k, Some(&r)).unwrap();
                let found = small_ideal_search(&a, k).unwrap();
                assert_eq!(report.is_k_perfect, found.is_none(), "{name} over GF({p}), k = {k}");
                if let Some(w) = report.witness {
                    assert!(a.is_ideal(&w).unwrap(), "{name}");
                    assert!(!w.is_full() && a.dim() - w.dim() <= k, "{name}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 100);
}
