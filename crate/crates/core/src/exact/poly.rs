//! Univariate polynomials over the base field, with root finding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rational::Rational;
use super::scalar::{Field, Scalar};

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

/// Largest integer magnitude whose divisors are enumerated for rational roots.
const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000_000;

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let f = c.field();
        Self::new(f, vec![c])
    }

    /// `t - r`
    pub fn linear_root(r: &Scalar) -> Self {
        let f = r.field();
        Self::new(f, vec![-r, f.one()])
    }

    pub fn x(field: Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                Self::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Poly::new(self.field, c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &(&c * dc);
                }
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Scalar::is_zero) {
                r.pop();
            }
        }
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, u, v)` with `u*self + v*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(f.one()), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::constant(f.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = Poly::constant(l.inv().unwrap());
                (r0.mul(&inv), s0.mul(&inv), t0.mul(&inv))
            }
        }
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::constant(self.field.one()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Scalar) -> usize {
        let lin = Poly::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }

    /// Distinct roots in the base field, in ascending order of representation.
    ///
    /// Over the rationals this uses the rational root theorem and returns
    /// `None` when the integer coefficients are too large to enumerate
    /// divisors; over prime fields it always succeeds.
    pub fn roots(&self) -> Option<Vec<Scalar>> {
        if self.is_zero() {
            return None;
        }
        match self.field {
            Field::Rationals => rational_roots(self),
            Field::Prime(p) => Some(prime_field_roots(self, p)),
        }
    }
}

fn rational_roots(f: &Poly) -> Option<Vec<Scalar>> {
    // Clear denominators.
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        let r = c.as_rational().expect("rational coefficients");
        lcm = lcm.lcm(&r.denom());
    }
    let mut ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(Rational::ZERO);
        while ints.first().is_some_and(|c| c.is_zero()) {
            ints.remove(0);
        }
    }
    if ints.len() > 1 {
        let a0 = ints[0].abs().to_u64().filter(|&x| x <= RATIONAL_ROOT_LIMIT)?;
        let an = ints.last().unwrap().abs().to_u64().filter(|&x| x <= RATIONAL_ROOT_LIMIT)?;
        let eval_zero = |num: i64, den: i64| -> bool {
            // Σ c_k num^k den^(n-k) = 0
            let n = ints.len() - 1;
            let mut acc = BigInt::zero();
            let mut np = BigInt::one();
            let dens: Vec<BigInt> = {
                let mut v = vec![BigInt::one(); n + 1];
                for k in 1..=n {
                    v[k] = &v[k - 1] * den;
                }
                v
            };
            for (k, c) in ints.iter().enumerate() {
                acc += c * &np * &dens[n - k];
                np *= num;
            }
            acc.is_zero()
        };
        let mut cands = Vec::new();
        for d in divisors(a0) {
            for e in divisors(an) {
                if num_integer::gcd(d, e) != 1 {
                    continue;
                }
                for s in [1i64, -1] {
                    let num = s * d as i64;
                    if eval_zero(num, e as i64) {
                        cands.push(Rational::new(num, e as i64));
                    }
                }
            }
        }
        roots.extend(cands);
    }
    roots.sort();
    roots.dedup();
    Some(roots.into_iter().map(Scalar::Rat).collect())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

const BRUTE_FORCE_PRIME_LIMIT: u64 = 4096;

fn prime_field_roots(f: &Poly, p: u64) -> Vec<Scalar> {
    let field = f.field();
    if p <= BRUTE_FORCE_PRIME_LIMIT {
        return field.elements().unwrap().into_iter().filter(|x| f.eval(x).is_zero()).collect();
    }
    // Product of the distinct linear factors: gcd(f, x^p - x).
    let monic = f.monic();
    let xp = Poly::x(field).pow_mod(p, &monic);
    let g = monic.gcd(&xp.sub(&Poly::x(field)));
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    split_linear(&g, p, &mut rng, &mut out);
    out.sort_by_key(|s| s.as_i64());
    out
}

/// Cantor–Zassenhaus splitting of a squarefree product of linear factors.
fn split_linear(g: &Poly, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Scalar>) {
    let field = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(-&m.coeffs()[0]);
        }
        Some(_) => loop {
            let a = field.from_i64(rng.random_range(0..p as i64));
            let shifted = Poly::new(field, vec![a, field.one()]);
            let h = shifted.pow_mod((p - 1) / 2, g).sub(&Poly::constant(field.one()));
            let d = g.gcd(&h);
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && Some(dd) < g.degree() {
                let (q, _) = g.div_rem(&d);
                split_linear(&d, p, rng, out);
                split_linear(&q.monic(), p, rng, out);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: Field, c: &[i64]) -> Poly {
        Poly::new(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn rational_roots_of_split_cubic() {
        let q = Field::Rationals;
        // (2t - 1)(t + 3) t = 2t^3 + 5t^2 - 3t
        let f = poly(q, &[0, -3, 5, 2]);
        let r = f.roots().unwrap();
        assert_eq!(r, vec![q.from_i64(-3), q.zero(), q.parse_scalar("1/2").unwrap()]);
    }

    #[test]
    fn irreducible_quadratic_has_no_rational_roots() {
        let q = Field::Rationals;
        assert_eq!(poly(q, &[1, 0, 1]).roots().unwrap(), vec![]);
    }

    #[test]
    fn large_prime_roots_match_brute_force() {
        let f = Field::Prime(10007);
        // (t - 5)(t - 9000)(t^2 + 1): 10007 ≡ 3 mod 4, so t^2+1 is irreducible.
        let g = poly(f, &[-5, 1]).mul(&poly(f, &[-9000, 1])).mul(&poly(f, &[1, 0, 1]));
        let r = g.roots().unwrap();
        assert_eq!(r, vec![f.from_i64(5), f.from_i64(9000)]);
    }

    #[test]
    fn ext_gcd_bezout() {
        let q = Field::Rationals;
        let a = poly(q, &[-1, 0, 1]);
        let b = poly(q, &[-1, 1, 0, 3]);
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn multiplicity() {
        let q = Field::Rationals;
        let f = poly(q, &[0, 0, -1, 1]); // t^2 (t - 1)
        assert_eq!(f.root_multiplicity(&q.zero()), 2);
        assert_eq!(f.root_multiplicity(&q.one()), 1);
        assert_eq!(f.root_multiplicity(&q.from_i64(2)), 0);
    }
}
