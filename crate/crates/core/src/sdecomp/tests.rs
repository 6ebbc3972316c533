use super::*;
use crate::algcore::constructions::*;
use crate::exact::{scale_vector, Field};

const Q: Field = Field::Rationals;

fn span(a: &StructureAlgebra, idx: &[usize]) -> Subspace {
    Subspace::span(a.field(), a.dim(), idx.iter().map(|&i| a.basis_vector(i)).collect::<Vec<_>>()).unwrap()
}

fn units(a: &StructureAlgebra, idx: &[usize], n: usize) -> MatrixUnits {
    MatrixUnits::new(n, idx.iter().map(|&k| a.basis_vector(k)).collect()).unwrap()
}

fn m3_corner() -> (StructureAlgebra, SemisimpleEmbedding) {
    let m3 = matrix_algebra(Q, 3);
    let emb = SemisimpleEmbedding::new(&m3, vec![units(&m3, &[0, 1, 3, 4], 2)]).unwrap();
    (m3, emb)
}

fn local() -> (StructureAlgebra, SemisimpleEmbedding) {
    let a = tensor_product(&matrix_algebra(Q, 2), &truncated_polynomial(Q, 2)).unwrap();
    let emb = SemisimpleEmbedding::new(&a, vec![units(&a, &[0, 2, 4, 6], 2)]).unwrap();
    (a, emb)
}

fn m2_plus_f() -> (StructureAlgebra, SemisimpleEmbedding) {
    let a = direct_sum(&matrix_algebra(Q, 2), &matrix_algebra(Q, 1)).unwrap();
    let emb = SemisimpleEmbedding::new(&a, vec![units(&a, &[0, 1, 2, 3], 2)]).unwrap();
    (a, emb)
}

#[test]
fn embedding_examples() {
    let m2 = matrix_algebra(Q, 2);
    let emb = SemisimpleEmbedding::new(&m2, vec![units(&m2, &[0, 1, 2, 3], 2)]).unwrap();
    assert!(verify_embedding(&m2, &emb).passed());
    assert!(emb.is_unital_in(&m2));

    let (m3, emb) = m3_corner();
    assert!(verify_embedding(&m3, &emb).passed());
    assert!(!emb.is_unital_in(&m3));

    let swapped = SemisimpleEmbedding::new(&m2, vec![units(&m2, &[0, 2, 1, 3], 2)]).unwrap();
    let report = verify_embedding(&m2, &swapped);
    assert!(matches!(report.violation, Some(EmbeddingViolation::UnitRelation { .. })));
}

#[test]
fn embedding_rejects_foreign_parent() {
    let m2 = matrix_algebra(Q, 2);
    let other = matrix_algebra(Q, 2);
    let emb = SemisimpleEmbedding::new(&m2, vec![units(&m2, &[0, 1, 2, 3], 2)]).unwrap();
    assert_eq!(verify_embedding(&other, &emb).violation, Some(EmbeddingViolation::Parent));
    assert_eq!(decompose(&other, &emb).unwrap_err(), Error::ParentMismatch);
}

#[test]
fn zero_idempotent_is_orthogonal() {
    let (m3, emb) = m3_corner();
    let hat = m3.unitalize();
    let f = emb.zero_idempotent();
    assert_eq!(hat.mul(&f, &f), f);
    let one_s = hat.embed(&emb.identity());
    assert!(is_zero_vector(&hat.mul(&f, &one_s)));
    assert!(is_zero_vector(&hat.mul(&one_s, &f)));
}

#[test]
fn decompose_examples() {
    let m2 = matrix_algebra(Q, 2);
    let emb = SemisimpleEmbedding::new(&m2, vec![units(&m2, &[0, 1, 2, 3], 2)]).unwrap();
    let d = decompose(&m2, &emb).unwrap();
    assert_eq!(d.lambda_dims(), vec![vec![0, 0], vec![0, 1]]);

    let (m3, emb) = m3_corner();
    let d = decompose(&m3, &emb).unwrap();
    assert_eq!(d.lambda_dims(), vec![vec![1, 1], vec![1, 1]]);
    assert_eq!(d.sizes(), &[1, 2]);

    let (a, emb) = local();
    let d = decompose(&a, &emb).unwrap();
    assert_eq!(d.lambda_dims(), vec![vec![0, 0], vec![0, 2]]);
    let lam = d.lambda_algebra();
    assert_eq!(lam.dim(), 2);
    assert!(lam.verify_associativity().passed());
    let one = d.lambda_identity(1).unwrap();
    assert_eq!(one, &a.basis_vector(0));
}

#[test]
fn lambda_products_respect_indices() {
    let (m3, emb) = m3_corner();
    let d = decompose(&m3, &emb).unwrap();
    let r = d.index_count();
    for i in 0..r {
        for j in 0..r {
            for s in 0..r {
                for t in 0..r {
                    let p = m3.subspace_product(d.lambda(i, j), d.lambda(s, t)).unwrap();
                    if j != s {
                        assert!(p.is_zero());
                    } else {
                        assert!(d.lambda(i, t).contains(&p).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn theta_examples() {
    let (m3, emb) = m3_corner();
    let d = decompose(&m3, &emb).unwrap();
    let one = Q.one();
    let zero = Q.zero();
    let x = vec![one.clone(), zero.clone(), zero.clone(), zero.clone()];
    let l1 = d.lambda_identity(1).unwrap().clone();
    assert_eq!(d.theta_apply(1, 1, &x, &l1).unwrap(), m3.basis_vector(0));

    // Λ(1,0) is spanned by a multiple of e13; θ(e_21 ⊗ λ) lands on e23
    let lam = d.lambda(1, 0).basis()[0].clone();
    let c = lam[2].clone();
    assert!(!c.is_zero());
    let img = d.theta_apply(1, 0, &[zero.clone(), one.clone()], &lam).unwrap();
    assert_eq!(img, scale_vector(&c, &m3.basis_vector(5)));
    let img = d.theta_apply(1, 0, &[one.clone(), zero.clone()], &lam).unwrap();
    assert_eq!(img, scale_vector(&c, &m3.basis_vector(2)));

    assert!(matches!(d.theta_apply(3, 0, std::slice::from_ref(&one), &lam), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn theta_is_an_algebra_isomorphism() {
    for (a, emb) in [m3_corner(), local(), m2_plus_f()] {
        let d = decompose(&a, &emb).unwrap();
        let report = d.check_theta(100, 7).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.dimension_sum, a.dim());
        for k in 0..a.dim() {
            let e = a.basis_vector(k);
            assert_eq!(d.theta(&d.theta_inverse(&e).unwrap()), e);
        }
    }
}

#[test]
fn tensor_indices_round_trip() {
    let (a, emb) = m3_corner();
    let d = decompose(&a, &emb).unwrap();
    for flat in 0..d.tensor_dim() {
        assert_eq!(d.tensor_flat(d.tensor_index(flat)), flat);
    }
}

#[test]
fn sub_bimodule_examples() {
    let (a, emb) = local();
    let d = decompose(&a, &emb).unwrap();
    let whole = sub_bimodule_lambda(&d, &Subspace::full(Q, a.dim())).unwrap();
    assert_eq!(whole.parts[1][1], *d.lambda(1, 1));

    let rad = span(&a, &[1, 3, 5, 7]);
    let lb = sub_bimodule_lambda(&d, &rad).unwrap();
    assert_eq!(lb.parts[1][1], span(&a, &[1]));
    assert!(lb.b_is_ideal && lb.lambda_ideal && lb.lambda_closed);

    let s = emb.span();
    let lb = sub_bimodule_lambda(&d, &s).unwrap();
    assert_eq!(lb.parts[1][1].dim(), 1);
    assert!(lb.parts[1][1].contains_vector(d.lambda_identity(1).unwrap()).unwrap());
    assert!(lb.parts[0][0].is_zero() && lb.parts[0][1].is_zero() && lb.parts[1][0].is_zero());

    let bad = span(&a, &[1]);
    assert!(matches!(sub_bimodule_lambda(&d, &bad), Err(Error::NotBimodule(_))));
}

#[test]
fn bs_examples() {
    let (m3, emb) = m3_corner();
    let d = decompose(&m3, &emb).unwrap();
    let r = bs_subalgebra(&d, &Subspace::full(Q, 9)).unwrap();
    assert!(r.bs.is_full());
    assert!(r.zero_corner_identity && r.is_ideal_of_b);

    let (a, emb) = m2_plus_f();
    let d = decompose(&a, &emb).unwrap();
    let r = bs_subalgebra(&d, &Subspace::full(Q, 5)).unwrap();
    assert_eq!(r.bs, emb.span());
    assert!(r.is_ideal_of_b);

    let s = emb.span();
    assert_eq!(bs_subalgebra(&d, &s).unwrap().bs, s);
}

#[test]
fn modgenerated_examples() {
    let (m3, emb) = m3_corner();
    let r = modgenerated_check(&decompose(&m3, &emb).unwrap()).unwrap();
    assert!(r.modgenerated && r.via_bs && r.via_lambda && r.via_ideal);
    assert!(r.witness.is_none());

    let (a, emb) = m2_plus_f();
    let r = modgenerated_check(&decompose(&a, &emb).unwrap()).unwrap();
    assert!(!r.modgenerated && !r.via_bs && !r.via_lambda && !r.via_ideal);
    let w = r.witness.unwrap();
    assert!(!a.ideal_closure(&emb.span()).unwrap().contains_vector(&w).unwrap());

    let m2 = matrix_algebra(Q, 2);
    let emb = SemisimpleEmbedding::new(&m2, vec![units(&m2, &[0, 1, 2, 3], 2)]).unwrap();
    assert!(modgenerated_check(&decompose(&m2, &emb).unwrap()).unwrap().modgenerated);
}

#[test]
fn trivial_component_is_annihilated() {
    let (a, emb) = m2_plus_f();
    let d = decompose(&a, &emb).unwrap();
    let m0 = d.lambda(0, 0);
    assert_eq!(m0.dim(), 1);
    let s = emb.span();
    assert!(a.subspace_product(&s, m0).unwrap().is_zero());
    assert!(a.subspace_product(m0, &s).unwrap().is_zero());
}
