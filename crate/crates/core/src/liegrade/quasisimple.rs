use crate::algcore::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exact::{axpy, is_zero_vector, kernel_basis, Field, Matrix, Scalar, Subspace, Vector};
use crate::sdecomp::SemisimpleEmbedding;

use super::derived_subalgebra;

/// Largest quotient dimension enumerated exhaustively.
const MAX_ENUMERATION: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasisimpleReport {
    pub block: usize,
    pub q_dim: usize,
    pub centre_dim: usize,
    pub perfect: bool,
    /// Every nonzero element of `Q_i / Z(Q_i)` generates it as a Lie ideal.
    pub simple_quotient: bool,
    pub vectors_checked: u64,
}

impl QuasisimpleReport {
    pub fn passed(&self) -> bool {
        self.perfect && self.simple_quotient
    }
}

/// Small Lie algebra on `F^m` with a dense bracket table.
struct SmallLie {
    field: Field,
    m: usize,
    table: Vec<Vector>,
}

impl SmallLie {
    fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = vec![self.field.zero(); self.m];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.table[i * self.m + j]);
            }
        }
        out
    }

    fn ideal_is_everything(&self, v: Vector) -> bool {
        let basis: Vec<Vector> = (0..self.m).map(|i| crate::exact::unit_vector(self.field, self.m, i)).collect();
        let closure = crate::algcore::fixed_point(self.field, self.m, vec![v], |x, _, out| {
            for b in &basis {
                out.push(self.bracket(b, x));
            }
        });
        closure.is_full()
    }
}

/// For a block with `p | n_i`: `Q_i = [S_i, S_i]` is perfect and
/// `Q_i / Z(Q_i)` has no proper nonzero Lie ideals, checked by enumerating
/// every nonzero vector of the quotient up to scalars.
pub fn quasisimple_check(a: &StructureAlgebra, emb: &SemisimpleEmbedding, block: usize) -> Result<QuasisimpleReport> {
    emb.check_parent(a)?;
    let field = a.field();
    let p = field.order().ok_or_else(|| Error::TooLarge("exhaustive enumeration needs a finite field".into()))?;
    let si = emb.block_span(block);
    let q = derived_subalgebra(a, &si)?;
    let perfect = derived_subalgebra(a, &q)? == q;
    let m = q.dim();
    let mut table = Vec::with_capacity(m * m);
    for x in q.basis() {
        for y in q.basis() {
            table.push(q.coordinates(&a.bracket_vec(x, y))?.ok_or(Error::NotLieClosed)?);
        }
    }
    let full = SmallLie { field, m, table };
    // centre: kernel of x ↦ ([x, b_1], …, [x, b_m])
    let mut rows = Vec::new();
    for j in 0..m {
        for k in 0..m {
            rows.push((0..m).map(|i| full.table[i * m + j][k].clone()).collect::<Vector>());
        }
    }
    let centre = if m == 0 { Subspace::zero(field, 0) } else { kernel_basis(&Matrix::from_rows(field, m, rows)?) };
    let comp = centre.standard_complement();
    let d = comp.len();
    let mut qtable = Vec::with_capacity(d * d);
    for &c in &comp {
        for &e in &comp {
            let r = centre.reduce(&full.table[c * m + e]);
            qtable.push(comp.iter().map(|&k| r[k].clone()).collect());
        }
    }
    let quotient = SmallLie { field, m: d, table: qtable };
    let count = (p as f64).powi(d as i32);
    if count > MAX_ENUMERATION as f64 * p as f64 {
        return Err(Error::TooLarge(format!("{d}-dimensional quotient over a field of order {p}")));
    }
    let mut checked = 0u64;
    let mut simple = d > 0;
    // Projective representatives: leading nonzero coordinate equal to 1.
    'lead: for lead in 0..d {
        let tail = d - lead - 1;
        let total = p.pow(tail as u32);
        for code in 0..total {
            let mut v = vec![field.zero(); d];
            v[lead] = field.one();
            let mut c = code;
            for k in 0..tail {
                v[lead + 1 + k] = field.from_i64((c % p) as i64);
                c /= p;
            }
            debug_assert!(!is_zero_vector(&v));
            checked += 1;
            if !quotient.ideal_is_everything(v) {
                simple = false;
                break 'lead;
            }
        }
    }
    Ok(QuasisimpleReport { block, q_dim: m, centre_dim: centre.dim(), perfect, simple_quotient: simple, vectors_checked: checked })
}
