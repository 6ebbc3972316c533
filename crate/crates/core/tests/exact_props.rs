use assoclie::exact::{
    is_canonical, kernel_basis, rref, solve_linear, Field, Matrix, Poly, Rational, Scalar, Subspace, Vector,
};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(7).unwrap()),
        Just(Field::prime(1_000_003).unwrap()),
    ]
}

fn scalar(field: Field, num: i64, den: i64) -> Scalar {
    match field {
        Field::Rationals => field.from_rational(&Rational::new(num, den)).unwrap(),
        _ => field.from_i64(num),
    }
}

fn matrix(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let rows: Vec<Vector> =
        (0..rows).map(|i| (0..cols).map(|j| field.from_i64(entries[(i * cols + j) % entries.len()])).collect()).collect();
    Matrix::from_rows(field, cols, rows).unwrap()
}

fn subspace(field: Field, ambient: usize, count: usize, entries: &[i64]) -> Subspace {
    let vecs: Vec<Vector> =
        (0..count).map(|i| (0..ambient).map(|j| field.from_i64(entries[(i * ambient + j) % entries.len()])).collect()).collect();
    Subspace::span(field, ambient, vecs).unwrap()
}

proptest! {
    #[test]
    fn field_axioms(field in field_strategy(), a in -50i64..50, b in -50i64..50, c in -50i64..50, d in 1i64..20) {
        let x = scalar(field, a, d);
        let y = scalar(field, b, 1);
        let z = scalar(field, c, d + 1);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, field.zero());
        prop_assert_eq!(&x * &field.one(), x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        } else {
            prop_assert!(x.inv().is_none());
        }
    }

    #[test]
    fn rationals_stay_canonical(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i32>(), d in 1i32..i32::MAX) {
        let x = Rational::new(a, b);
        let y = Rational::new(c as i64, d as i64);
        for r in [x.add(&y), x.mul(&y), x.sub(&y), x.mul(&x).mul(&x)] {
            prop_assert!(is_canonical(&r));
        }
        if let Some(inv) = x.inv() {
            prop_assert!(is_canonical(&inv));
            prop_assert!(x.mul(&inv).is_one());
        }
        let parsed: Rational = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn rref_is_idempotent(field in field_strategy(), r in 1usize..6, c in 1usize..6, e in prop::collection::vec(-3i64..4, 1..36)) {
        let m = matrix(field, r, c, &e);
        let (red, piv) = rref(&m);
        let (red2, piv2) = rref(&red);
        prop_assert_eq!(&red, &red2);
        prop_assert_eq!(piv, piv2);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_and_rank(field in field_strategy(), r in 1usize..6, c in 1usize..6, e in prop::collection::vec(-3i64..4, 1..36)) {
        let m = matrix(field, r, c, &e);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + m.rank(), c);
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solutions_solve(field in field_strategy(), r in 1usize..6, c in 1usize..6, e in prop::collection::vec(-3i64..4, 1..36), x in prop::collection::vec(-3i64..4, 6)) {
        let m = matrix(field, r, c, &e);
        let x: Vector = x[..c].iter().map(|&v| field.from_i64(v)).collect();
        let rhs = m.mul_vec(&x).unwrap();
        let sol = solve_linear(&m, &rhs).unwrap().unwrap();
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), rhs);
    }

    #[test]
    fn inverse_of_unipotent(field in field_strategy(), n in 1usize..6, e in prop::collection::vec(-3i64..4, 1..36)) {
        let mut u = Matrix::identity(field, n);
        let mut l = Matrix::identity(field, n);
        for i in 0..n {
            for j in i + 1..n {
                u[(i, j)] = field.from_i64(e[(i * n + j) % e.len()]);
                l[(j, i)] = field.from_i64(e[(j * n + i + 1) % e.len()]);
            }
        }
        let m = l.mul(&u).unwrap();
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(field, n));
        prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(field, n));
    }

    #[test]
    fn dimension_formula(field in field_strategy(), n in 1usize..7, a in 0usize..5, b in 0usize..5, e in prop::collection::vec(-2i64..3, 1..50), f in prop::collection::vec(-2i64..3, 1..50)) {
        let u = subspace(field, n, a, &e);
        let v = subspace(field, n, b, &f);
        let s = u.sum(&v).unwrap();
        let i = u.intersection(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(s.contains(&u).unwrap() && s.contains(&v).unwrap());
        prop_assert!(u.contains(&i).unwrap() && v.contains(&i).unwrap());
    }

    #[test]
    fn modular_law(field in field_strategy(), n in 1usize..7, e in prop::collection::vec(-2i64..3, 1..50), f in prop::collection::vec(-2i64..3, 1..50), g in prop::collection::vec(-2i64..3, 1..50)) {
        let u = subspace(field, n, 3, &e);
        let v = subspace(field, n, 3, &f);
        let w = u.intersection(&subspace(field, n, 4, &g)).unwrap();
        let left = u.intersection(&v.sum(&w).unwrap()).unwrap();
        let right = u.intersection(&v).unwrap().sum(&w).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn coordinates_recombine(field in field_strategy(), n in 1usize..7, e in prop::collection::vec(-2i64..3, 1..50), c in prop::collection::vec(-2i64..3, 7)) {
        let u = subspace(field, n, 4, &e);
        let coeffs: Vector = c[..u.dim()].iter().map(|&x| field.from_i64(x)).collect();
        let v = u.combine(&coeffs);
        prop_assert_eq!(u.coordinates(&v).unwrap(), Some(coeffs));
        prop_assert!(u.reduce(&v).iter().all(Scalar::is_zero));
    }

    #[test]
    fn polynomial_roots(field in field_strategy(), roots in prop::collection::vec(-5i64..6, 0..5)) {
        let mut p = Poly::constant(field.one());
        for r in &roots {
            p = p.mul(&Poly::linear_root(&field.from_i64(*r)));
        }
        let mut expected: Vec<Scalar> = roots.iter().map(|&r| field.from_i64(r)).collect();
        expected.sort_by_key(|s| s.to_string());
        expected.dedup();
        let mut found = p.roots().unwrap();
        found.sort_by_key(|s| s.to_string());
        prop_assert_eq!(found, expected);
    }
}

/// All subspaces of `GF(2)^3`, found by spanning every set of vectors.
#[test]
fn gf2_subspace_lattice() {
    let f = Field::prime(2).unwrap();
    let vectors: Vec<Vector> = (0..8u32).map(|m| (0..3).map(|k| f.from_i64(((m >> k) & 1) as i64)).collect()).collect();
    let mut all: Vec<Subspace> = Vec::new();
    for mask in 0..256u32 {
        let vs: Vec<Vector> = (0..8).filter(|k| mask & (1 << k) != 0).map(|k| vectors[k].clone()).collect();
        let s = Subspace::span(f, 3, vs.clone()).unwrap();
        for v in &vectors {
            let inside = vs.iter().any(|w| w == v) || s.contains_vector(v).unwrap();
            assert_membership(&s, v, inside);
        }
        if !all.contains(&s) {
            all.push(s);
        }
    }
    let mut by_dim = [0usize; 4];
    for s in &all {
        by_dim[s.dim()] += 1;
    }
    assert_eq!(by_dim, [1, 7, 7, 1]);
    for u in &all {
        for v in &all {
            let members = |s: &Subspace| vectors.iter().filter(|x| s.contains_vector(x).unwrap()).count();
            assert_eq!(members(&u.intersection(v).unwrap()), vectors.iter().filter(|x| u.contains_vector(x).unwrap() && v.contains_vector(x).unwrap()).count());
            assert_eq!(members(u), 1 << u.dim());
        }
    }
}

fn assert_membership(s: &Subspace, v: &[Scalar], inside: bool) {
    assert_eq!(s.contains_vector(v).unwrap(), inside);
}
