//! Standard algebras used as building blocks and test fixtures.

use super::StructureAlgebra;
use crate::error::Result;
use crate::exact::{Field, Scalar};

/// `M_n(F)` with basis `e_st` at index `s*n + t` (0-based).
pub fn matrix_algebra(field: Field, n: usize) -> StructureAlgebra {
    let one = field.one();
    let mut triples = Vec::with_capacity(n * n * n);
    for s in 0..n {
        for t in 0..n {
            for v in 0..n {
                triples.push((s * n + t, t * n + v, s * n + v, one.clone()));
            }
        }
    }
    let labels = (0..n * n).map(|i| format!("e{}{}", i / n + 1, i % n + 1)).collect();
    let a = StructureAlgebra::from_triples(field, n * n, triples).expect("matrix units are well formed");
    let a = a.with_labels(labels).expect("label count");
    if n == 1 {
        a.with_unit(0).expect("1x1 identity")
    } else {
        a
    }
}

/// Upper-triangular `n × n` matrices, basis `e_st` for `s ≤ t` in row order.
pub fn upper_triangular(field: Field, n: usize) -> StructureAlgebra {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (s..n).map(move |t| (s, t))).collect();
    let index = |s: usize, t: usize| pairs.iter().position(|&p| p == (s, t)).expect("upper pair");
    let one = field.one();
    let mut triples = Vec::new();
    for (a, &(s, t)) in pairs.iter().enumerate() {
        for v in t..n {
            triples.push((a, index(t, v), index(s, v), one.clone()));
        }
    }
    let labels = pairs.iter().map(|(s, t)| format!("e{}{}", s + 1, t + 1)).collect();
    StructureAlgebra::from_triples(field, pairs.len(), triples)
        .expect("well formed")
        .with_labels(labels)
        .expect("label count")
}

/// `F[t]/(t^m)` with basis `1, t, …, t^(m-1)`.
pub fn truncated_polynomial(field: Field, m: usize) -> StructureAlgebra {
    let one = field.one();
    let mut triples = Vec::new();
    for i in 0..m {
        for j in 0..m - i {
            triples.push((i, j, i + j, one.clone()));
        }
    }
    let labels = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect();
    let a = StructureAlgebra::from_triples(field, m, triples).expect("well formed").with_labels(labels).expect("label count");
    if m > 0 {
        a.with_unit(0).expect("1 is the identity")
    } else {
        a
    }
}

/// `F[x]/(x² - d)` with basis `1, x`; a field when `d` is not a square.
pub fn quadratic_extension(field: Field, d: &Scalar) -> StructureAlgebra {
    let one = field.one();
    let triples = vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one), (1, 1, 0, d.clone())];
    StructureAlgebra::from_triples(field, 2, triples).expect("well formed").with_unit(0).expect("1 is the identity")
}

/// `A ⊗ B` with basis `a_i ⊗ b_k` at index `i * dim B + k`.
pub fn tensor_product(a: &StructureAlgebra, b: &StructureAlgebra) -> Result<StructureAlgebra> {
    if a.field() != b.field() {
        return Err(crate::Error::FieldMismatch { expected: a.field(), found: b.field() });
    }
    let (na, nb) = (a.dim(), b.dim());
    let mut triples = Vec::new();
    for i in 0..na {
        for j in 0..na {
            for (m, c) in a.basis_product(i, j) {
                for k in 0..nb {
                    for l in 0..nb {
                        for (q, d) in b.basis_product(k, l) {
                            triples.push((i * nb + k, j * nb + l, m * nb + q, c * d));
                        }
                    }
                }
            }
        }
    }
    let mut out = StructureAlgebra::from_triples(a.field(), na * nb, triples)?;
    if let (Some(la), Some(lb)) = (a.labels(), b.labels()) {
        let labels = (0..na * nb).map(|x| format!("{}⊗{}", la[x / nb], lb[x % nb])).collect();
        out = out.with_labels(labels)?;
    }
    if let (Some(ua), Some(ub)) = (a.unit_index(), b.unit_index()) {
        out = out.with_unit(ua * nb + ub)?;
    }
    Ok(out)
}

/// `A ⊕ B` with the basis of `A` first.
pub fn direct_sum(a: &StructureAlgebra, b: &StructureAlgebra) -> Result<StructureAlgebra> {
    if a.field() != b.field() {
        return Err(crate::Error::FieldMismatch { expected: a.field(), found: b.field() });
    }
    let na = a.dim();
    let triples = a
        .nonzero_constants()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .chain(b.nonzero_constants().map(|(i, j, k, c)| (i + na, j + na, k + na, c.clone())))
        .collect::<Vec<_>>();
    let mut out = StructureAlgebra::from_triples(a.field(), na + b.dim(), triples)?;
    if let (Some(la), Some(lb)) = (a.labels(), b.labels()) {
        out = out.with_labels(la.iter().chain(lb).cloned().collect())?;
    }
    Ok(out)
}
