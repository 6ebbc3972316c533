use super::constructions::*;
use super::*;
use crate::exact::Field;

const Q: Field = Field::Rationals;

fn span(a: &StructureAlgebra, idx: &[usize]) -> Subspace {
    Subspace::span(a.field(), a.dim(), idx.iter().map(|&i| a.basis_vector(i)).collect::<Vec<_>>()).unwrap()
}

#[test]
fn matrix_unit_products() {
    let m2 = matrix_algebra(Q, 2);
    let e = |i| m2.basis_element(i);
    assert_eq!(m2.multiply(&e(1), &e(2)).unwrap(), e(0));
    assert!(m2.multiply(&e(0), &e(3)).unwrap().is_zero());
    let t2 = truncated_polynomial(Q, 2);
    let t = t2.basis_element(1);
    assert!(t2.multiply(&t, &t).unwrap().is_zero());
}

#[test]
fn commutators_in_m2() {
    let m2 = matrix_algebra(Q, 2);
    let e = |i| m2.basis_element(i);
    assert_eq!(m2.commutator(&e(1), &e(2)).unwrap(), e(0).sub(&e(3)).unwrap());
    assert!(m2.commutator(&e(1), &e(1)).unwrap().is_zero());
    assert_eq!(m2.commutator(&e(0), &e(1)).unwrap(), e(1));
}

#[test]
fn parent_mismatch_is_reported() {
    let a = matrix_algebra(Q, 2);
    let b = matrix_algebra(Q, 2);
    assert_eq!(a.multiply(&a.basis_element(0), &b.basis_element(0)), Err(Error::ParentMismatch));
    assert_eq!(a.commutator(&b.basis_element(0), &a.basis_element(0)), Err(Error::ParentMismatch));
}

#[test]
fn associativity_checks() {
    assert!(matrix_algebra(Q, 3).verify_associativity().passed());
    assert!(StructureAlgebra::zero_product(Q, 3).verify_associativity().passed());
    let m2 = matrix_algebra(Q, 2);
    let perturbed = StructureAlgebra::from_triples(
        Q,
        4,
        m2.nonzero_constants()
            .map(|(i, j, k, c)| if (i, j, k) == (0, 0, 0) { (i, j, k, Q.from_i64(2)) } else { (i, j, k, c.clone()) })
            .collect::<Vec<_>>(),
    )
    .unwrap();
    assert!(matches!(perturbed.verify_associativity(), AssociativityReport::Violation { .. }));
}

#[test]
fn unitalize_zero_algebra_is_dual_numbers() {
    let z = StructureAlgebra::zero_product(Q, 1);
    let u = z.unitalize();
    let hat = u.hat();
    assert_eq!(hat.dim(), 2);
    let t = u.embed(&[Q.one()]);
    let one = u.one();
    assert!(is_zero_vector(&hat.mul_vec(&t, &t)));
    assert_eq!(hat.mul_vec(&one, &t), t);
    assert_eq!(hat.mul_vec(&one, &one), one);
    let dual = truncated_polynomial(Q, 2);
    assert_eq!(dual.structure_constant(1, 1, 0), hat.structure_constant(0, 0, 1));
}

#[test]
fn unitalize_m2_keeps_internal_unit_idempotent() {
    let m2 = matrix_algebra(Q, 2);
    let u = m2.unitalize();
    let hat = u.hat();
    assert_eq!(hat.dim(), 5);
    assert!(hat.verify_associativity().passed());
    let one = u.one();
    for i in 0..5 {
        let b = hat.basis_vector(i);
        assert_eq!(hat.mul_vec(&one, &b), b);
        assert_eq!(hat.mul_vec(&b, &one), b);
    }
    let inner = u.embed(&add_vectors(&m2.basis_vector(0), &m2.basis_vector(3)));
    assert_eq!(hat.mul_vec(&inner, &inner), inner);
    assert_ne!(inner, one);
    assert!(hat.is_ideal(&u.base_image()).unwrap());
}

use crate::exact::add_vectors;

#[test]
fn subspace_products() {
    let m2 = matrix_algebra(Q, 2);
    let sl2 = Subspace::span(Q, 4, vec![m2.basis_vector(1), m2.basis_vector(2), sub_vectors(&m2.basis_vector(0), &m2.basis_vector(3))]).unwrap();
    assert!(m2.subspace_product(&sl2, &sl2).unwrap().is_full());
    let zero = Subspace::zero(Q, 4);
    assert!(m2.subspace_product(&zero, &sl2).unwrap().is_zero());
    let t2 = upper_triangular(Q, 2);
    let e12 = span(&t2, &[1]);
    assert!(t2.subspace_product(&e12, &e12).unwrap().is_zero());
    assert!(m2.subspace_product(&Subspace::zero(Q, 3), &sl2).is_err());
}

#[test]
fn algebra_squares() {
    assert!(matrix_algebra(Q, 2).algebra_square().is_full());
    assert!(StructureAlgebra::zero_product(Q, 3).algebra_square().is_zero());
    assert!(StructureAlgebra::zero_product(Q, 1).algebra_square().is_zero());
}

#[test]
fn ideal_closures() {
    let m3 = matrix_algebra(Q, 3);
    let corner = span(&m3, &[0, 1, 3, 4]);
    assert!(m3.ideal_closure(&corner).unwrap().is_full());
    let t2 = upper_triangular(Q, 2);
    let e12 = span(&t2, &[1]);
    assert_eq!(t2.ideal_closure(&e12).unwrap(), e12);
    assert!(m3.ideal_closure(&Subspace::zero(Q, 9)).unwrap().is_zero());
}

#[test]
fn tensor_and_sum_shapes() {
    let a = tensor_product(&matrix_algebra(Q, 2), &truncated_polynomial(Q, 2)).unwrap();
    assert_eq!(a.dim(), 8);
    assert!(a.verify_associativity().passed());
    let b = direct_sum(&matrix_algebra(Q, 2), &matrix_algebra(Q, 1)).unwrap();
    assert_eq!(b.dim(), 5);
    assert!(b.verify_associativity().passed());
    assert!(upper_triangular(Q, 3).verify_associativity().passed());
    assert!(truncated_polynomial(Field::Prime(2), 4).verify_associativity().passed());
}

#[test]
fn with_unit_rejects_non_identity() {
    assert!(matrix_algebra(Q, 2).with_unit(0).is_err());
    assert!(truncated_polynomial(Q, 3).with_unit(1).is_err());
}

#[test]
fn from_triples_validates() {
    assert!(StructureAlgebra::from_triples(Q, 2, vec![(0, 0, 2, Q.one())]).is_err());
    assert!(StructureAlgebra::from_triples(Q, 2, vec![(0, 0, 0, Field::Prime(3).one())]).is_err());
    let a = StructureAlgebra::from_triples(Q, 1, vec![(0, 0, 0, Q.one()), (0, 0, 0, -Q.one())]).unwrap();
    assert_eq!(a.nonzero_constants().count(), 0);
}

#[test]
fn path_and_incidence_algebras() {
    use super::basic::BasicAlgebra;
    let local = BasicAlgebra::path(Q, 1, &[(0, 0)], 3).unwrap();
    assert_eq!(local.algebra(), &truncated_polynomial(Q, 3).with_unit(0).unwrap());
    let inf = local.inflate(&[2], &[]).unwrap();
    assert_eq!(inf.algebra().dim(), 12);
    assert!(inf.algebra().verify_associativity().passed());

    let tri = BasicAlgebra::incidence(Q, 2, &[(0, 1)]).unwrap();
    let inf = tri.inflate(&[2, 2], &[]).unwrap();
    assert_eq!(inf.algebra().dim(), 12);
    assert!(inf.algebra().verify_associativity().passed());
    assert_eq!(inf.radical().dim(), 4);
    assert_eq!(inf.levi().dim(), 8);
    assert!(inf.algebra().is_ideal(&inf.radical()).unwrap());
    assert!(inf.algebra().is_subalgebra(&inf.levi()).unwrap());

    let chain = BasicAlgebra::incidence(Q, 3, &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(chain.corner_dims()[0][2], 1);
    assert!(matches!(BasicAlgebra::incidence(Q, 2, &[(0, 1), (1, 0)]), Err(Error::InvalidStructure(_))));
}

#[test]
fn quiver_inflation_with_dropped_identity() {
    use super::basic::BasicAlgebra;
    let quiver = BasicAlgebra::path(Q, 2, &[(0, 1), (1, 0), (1, 1)], 3).unwrap().tensor_local(2).unwrap();
    assert!(quiver.algebra().verify_associativity().passed());
    let inf = quiver.inflate(&[1, 2], &[0]).unwrap();
    let a = inf.algebra();
    assert!(a.verify_associativity().passed());
    assert!(a.is_ideal(&inf.radical()).unwrap());
    assert_eq!(inf.radical().dim() + inf.levi().dim(), a.dim());
    let units = inf.corner_units(1, 2).unwrap();
    assert_eq!(units.size(), 2);
    assert!(inf.corner_units(0, 1).is_err());
    assert_eq!(inf.corner_units(1, 3).unwrap_err(), Error::BlockTooSmall { size: 2, required: 3 });
}

#[test]
fn change_of_basis_preserves_products() {
    let t2 = upper_triangular(Q, 2);
    let p = Matrix::from_i64(Q, &[&[1, 1, 0], &[0, 1, 0], &[2, 0, 1]]);
    let b = t2.change_basis(&p).unwrap();
    assert!(b.verify_associativity().passed());
    let singular = Matrix::from_i64(Q, &[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
    assert!(t2.change_basis(&singular).is_err());
    let inv = p.inverse().unwrap();
    assert_eq!(p.mul(&inv).unwrap(), Matrix::identity(Q, 3));
}
