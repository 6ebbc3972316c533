use super::*;
use crate::algcore::constructions::*;
use crate::exact::Matrix;

const Q: Field = Field::Rationals;

fn span(a: &StructureAlgebra, idx: &[usize]) -> Subspace {
    Subspace::span(a.field(), a.dim(), idx.iter().map(|&i| a.basis_vector(i)).collect::<Vec<_>>()).unwrap()
}

fn units(a: &StructureAlgebra, offset: usize, n: usize) -> MatrixUnits {
    MatrixUnits::new(n, (0..n * n).map(|k| a.basis_vector(offset + k)).collect()).unwrap()
}

/// Basis change `b'_k = c_k b_{π(k)} + Σ shears`, with shears `(k, j, c)`
/// adding `c b_j` to `b'_k`.
fn scramble(a: &StructureAlgebra, perm: &[usize], shears: &[(usize, usize, i64)]) -> StructureAlgebra {
    let n = a.dim();
    let f = a.field();
    let mut p = Matrix::zeros(f, n, n);
    for (k, &src) in perm.iter().enumerate() {
        p[(src, k)] = f.from_i64(1 + (k % 3) as i64);
    }
    for &(k, j, c) in shears {
        let v = &p[(j, k)] + &f.from_i64(c);
        p[(j, k)] = v;
    }
    a.change_basis(&p).unwrap()
}

fn reversed(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

#[test]
fn radical_of_matrix_algebra_is_zero() {
    let r = radical(&matrix_algebra(Q, 2), None).unwrap();
    assert!(r.radical().is_zero());
    assert_eq!(r.nilpotency_index(), 1);
    assert_eq!(r.method(), RadicalMethod::TraceForm);
}

#[test]
fn radical_of_triangular() {
    let t2 = upper_triangular(Q, 2);
    let r = radical(&t2, None).unwrap();
    assert_eq!(r.radical(), &span(&t2, &[1]));
    assert_eq!(r.nilpotency_index(), 2);
}

#[test]
fn radical_of_truncated_polynomial() {
    let a = truncated_polynomial(Q, 3);
    let r = radical(&a, None).unwrap();
    assert_eq!(r.radical(), &span(&a, &[1, 2]));
    assert_eq!(r.nilpotency_index(), 3);
    assert_eq!(r.powers().len(), 3);
}

#[test]
fn small_characteristic_needs_planted_radical() {
    let f = Field::prime(2).unwrap();
    let t2 = upper_triangular(f, 2);
    assert!(matches!(radical(&t2, None), Err(Error::RadicalUnsupported(_))));
    let r = radical(&t2, Some(&span(&t2, &[1]))).unwrap();
    assert_eq!(r.method(), RadicalMethod::Planted);
    assert_eq!(split_blocks(&t2, &r).block_sizes(), vec![1, 1]);
    assert!(matches!(radical(&t2, Some(&span(&t2, &[0]))), Err(Error::InvalidStructure(_))));
}

#[test]
fn planted_radical_must_match() {
    let t2 = upper_triangular(Q, 2);
    assert!(radical(&t2, Some(&span(&t2, &[1]))).is_ok());
    assert!(matches!(radical(&t2, Some(&span(&t2, &[0, 1]))), Err(Error::InvalidStructure(_))));
}

#[test]
fn block_sizes_of_examples() {
    let m23 = direct_sum(&matrix_algebra(Q, 2), &matrix_algebra(Q, 3)).unwrap();
    let r = radical(&m23, None).unwrap();
    assert_eq!(split_blocks(&m23, &r).block_sizes(), vec![2, 3]);

    let t2 = upper_triangular(Q, 2);
    let r = radical(&t2, None).unwrap();
    assert_eq!(split_blocks(&t2, &r).block_sizes(), vec![1, 1]);

    let a = tensor_product(&matrix_algebra(Q, 2), &truncated_polynomial(Q, 2)).unwrap();
    let r = radical(&a, None).unwrap();
    assert_eq!(r.radical().dim(), 4);
    assert_eq!(split_blocks(&a, &r).block_sizes(), vec![2]);
}

#[test]
fn scrambled_blocks_are_found() {
    let m23 = direct_sum(&matrix_algebra(Q, 2), &matrix_algebra(Q, 3)).unwrap();
    let m23s = scramble(&m23, &reversed(13), &[(12, 1, 2), (0, 11, -1), (3, 10, 1), (5, 0, 3)]);
    let local = tensor_product(&matrix_algebra(Q, 2), &truncated_polynomial(Q, 2)).unwrap();
    let locals = scramble(&local, &[1, 0, 3, 2, 5, 4, 7, 6], &[(1, 3, 1), (3, 7, -2), (5, 1, 1), (7, 5, 4), (0, 2, 1)]);
    let t3 = upper_triangular(Q, 3);
    let t3s = scramble(&t3, &[5, 3, 0, 1, 2, 4], &[(0, 1, 1), (1, 4, -1), (2, 2, 2), (3, 1, 1)]);
    for (a, s) in [(m23, m23s), (local, locals), (t3, t3s)] {
        assert!(s.verify_associativity().passed());
        let r0 = radical(&a, None).unwrap();
        let r = radical(&s, None).unwrap();
        assert_eq!(r.radical().dim(), r0.radical().dim());
        assert_eq!(r.nilpotency_index(), r0.nilpotency_index());
        assert_eq!(split_blocks(&s, &r).block_sizes(), split_blocks(&a, &r0).block_sizes());
        let levi = levi_lift(&s, &r).unwrap();
        assert!(levi.check(&s, r.radical()).unwrap().passed());
        assert!(verify_embedding(&s, levi.embedding()).passed());
    }
}

#[test]
fn levi_of_triangular_and_local() {
    let t2 = upper_triangular(Q, 2);
    let r = radical(&t2, None).unwrap();
    let levi = levi_lift(&t2, &r).unwrap();
    assert_eq!(levi.levi().dim(), 2);
    assert!(levi.check(&t2, r.radical()).unwrap().passed());

    let a = tensor_product(&matrix_algebra(Q, 2), &truncated_polynomial(Q, 2)).unwrap();
    let r = radical(&a, None).unwrap();
    let levi = levi_lift(&a, &r).unwrap();
    assert_eq!(levi.levi().dim(), 4);
    assert!(levi.check(&a, r.radical()).unwrap().passed());
    assert_eq!(levi.embedding().block_sizes(), vec![2]);
}

#[test]
fn levi_over_gf2_with_planted_radical() {
    let f = Field::prime(2).unwrap();
    let a = tensor_product(&matrix_algebra(f, 3), &truncated_polynomial(f, 2)).unwrap();
    let planted = Subspace::span(f, a.dim(), (0..9).map(|k| a.basis_vector(2 * k + 1))).unwrap();
    let r = radical(&a, Some(&planted)).unwrap();
    let levi = levi_lift(&a, &r).unwrap();
    assert!(levi.check(&a, r.radical()).unwrap().passed());
    assert_eq!(levi.embedding().block_sizes(), vec![3]);
}

#[test]
fn k_perfect_examples() {
    let m2 = matrix_algebra(Q, 2);
    assert!(k_perfect_check(&m2, 1, None).unwrap().is_k_perfect);
    let r = k_perfect_check(&m2, 4, None).unwrap();
    assert!(!r.is_k_perfect);
    let w = r.witness.unwrap();
    assert!(w.is_zero());
    assert!(m2.is_ideal(&w).unwrap());

    assert!(k_perfect_check(&matrix_algebra(Q, 3), 4, None).unwrap().is_k_perfect);
    assert!(k_perfect_check(&m2, 0, None).unwrap().is_k_perfect);

    let t2 = upper_triangular(Q, 2);
    let r = k_perfect_check(&t2, 1, None).unwrap();
    assert!(!r.is_k_perfect);
    assert!(r.square_is_full);
    let w = r.witness.unwrap();
    assert_eq!(w.dim(), 2);
    assert!(t2.is_ideal(&w).unwrap());
    assert!(w.contains(&span(&t2, &[1])).unwrap());
}

#[test]
fn k_perfect_fails_on_non_idempotent_algebra() {
    let a = truncated_polynomial(Q, 3);
    let n = StructureAlgebra::from_triples(Q, 2, [(0, 0, 1, Q.one())]).unwrap();
    let r = k_perfect_check(&n, 1, None).unwrap();
    assert!(!r.square_is_full);
    let w = r.witness.unwrap();
    assert_eq!(w.dim(), 1);
    assert!(n.is_ideal(&w).unwrap());
    assert!(!k_perfect_check(&a, 1, None).unwrap().is_k_perfect);
}

#[test]
fn semisimple_thresholds() {
    assert!(semisimple_k_perfect(&[2, 3], 1));
    assert!(!semisimple_k_perfect(&[2, 3], 4));
    assert!(semisimple_k_perfect(&[3, 3], 4));
    assert!(!semisimple_k_perfect(&[1], 1));
    assert!(semisimple_k_perfect(&[], 4));
}

#[test]
fn corner_subalgebra_examples() {
    let m3 = matrix_algebra(Q, 3);
    let emb = SemisimpleEmbedding::new(&m3, vec![units(&m3, 0, 3)]).unwrap();
    let c = corner_subalgebra(&m3, &emb, 2).unwrap();
    assert_eq!(c.span, span(&m3, &[0, 1, 3, 4]));
    assert!(m3.is_subalgebra(&c.span).unwrap());
    assert!(c.generates_s);

    let m23 = direct_sum(&matrix_algebra(Q, 2), &m3).unwrap();
    let emb = SemisimpleEmbedding::new(&m23, vec![units(&m23, 0, 2), units(&m23, 4, 3)]).unwrap();
    let c = corner_subalgebra(&m23, &emb, 2).unwrap();
    assert_eq!(c.span.dim(), 4);
    assert!(c.generates_s);
    assert_eq!(corner_subalgebra(&m23, &emb, 3).unwrap_err(), Error::BlockTooSmall { size: 2, required: 3 });
}
