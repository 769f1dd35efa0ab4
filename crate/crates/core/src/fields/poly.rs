//! Univariate polynomials `F_q[x]` over a finite field.

use rand::Rng;

use super::finite::{FieldElem, FiniteField};
use super::{Ring, RingKind};
use crate::error::{Error, Result};

/// Dense polynomial, low degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    c: Vec<FieldElem>,
}

impl Poly {
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.c.last()
    }
}

/// `F_q[v]` for a coefficient field `F_{p^r}` and a variable name.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing {
    field: FiniteField,
    var: char,
}

impl PolyRing {
    pub fn new(field: FiniteField) -> Self {
        PolyRing { field, var: 'x' }
    }

    pub fn with_var(field: FiniteField, var: char) -> Self {
        PolyRing { field, var }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn from_coeffs(&self, c: Vec<FieldElem>) -> Poly {
        let mut p = Poly { c };
        self.trim(&mut p);
        p
    }

    /// Polynomial with prime-field coefficients, low degree first.
    pub fn from_ints(&self, c: &[i64]) -> Poly {
        self.from_coeffs(c.iter().map(|&x| self.field.from_int(x)).collect())
    }

    pub fn constant(&self, a: FieldElem) -> Poly {
        self.from_coeffs(vec![a])
    }

    pub fn variable(&self) -> Poly {
        self.from_coeffs(vec![self.field.zero(), self.field.one()])
    }

    pub fn monomial(&self, a: FieldElem, deg: usize) -> Poly {
        let mut c = vec![self.field.zero(); deg];
        c.push(a);
        self.from_coeffs(c)
    }

    fn trim(&self, p: &mut Poly) {
        while p.c.last().is_some_and(|x| self.field.is_zero(x)) {
            p.c.pop();
        }
    }

    pub fn coeff(&self, a: &Poly, i: usize) -> FieldElem {
        a.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, a: &Poly, s: &FieldElem) -> Poly {
        self.from_coeffs(a.c.iter().map(|x| self.field.mul(x, s)).collect())
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.lead() {
            None => a.clone(),
            Some(l) => {
                let li = self.field.inv(l).expect("nonzero lead");
                self.scale(a, &li)
            }
        }
    }

    pub fn is_monic(&self, a: &Poly) -> bool {
        a.lead().is_some_and(|l| self.field.is_one(l))
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let k = &self.field;
        let li = k.inv(b.lead().unwrap())?;
        let mut r = a.c.clone();
        if r.len() <= db {
            return Ok((self.zero(), a.clone()));
        }
        let mut q = vec![k.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            if k.is_zero(&r[i]) {
                continue;
            }
            let c = k.mul(&r[i], &li);
            for j in 0..=db {
                let t = k.mul(&c, &b.c[j]);
                r[i - db + j] = k.sub(&r[i - db + j], &t);
            }
            q[i - db] = c;
        }
        r.truncate(db);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Exact quotient; errors if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(a, b)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `g = s·a + t·b` monic.
    pub fn ext_gcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("nonzero divisor");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.field.inv(l).expect("nonzero lead");
                (
                    self.scale(&r0, &li),
                    self.scale(&s0, &li),
                    self.scale(&t0, &li),
                )
            }
        }
    }

    pub fn eval(&self, a: &Poly, x: &FieldElem) -> FieldElem {
        let k = &self.field;
        a.c.iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        let k = &self.field;
        self.from_coeffs(
            a.c.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.mul(c, &k.from_int(i as i64)))
                .collect(),
        )
    }

    /// Applies a coefficient map, keeping exponents.
    pub fn map_coeffs(&self, a: &Poly, f: impl Fn(&FieldElem) -> FieldElem) -> Poly {
        self.from_coeffs(a.c.iter().map(f).collect())
    }

    pub fn mul_mod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, a: &Poly, mut e: u128, m: &Poly) -> Poly {
        let mut acc = self.rem(&self.one(), m).expect("nonzero modulus");
        let mut b = self.rem(a, m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_mod(&b, &b, m);
            }
        }
        acc
    }

    pub fn random_of_degree<G: Rng + ?Sized>(&self, rng: &mut G, max_deg: usize) -> Poly {
        let d = rng.gen_range(0..=max_deg);
        self.from_coeffs((0..=d).map(|_| self.field.random(rng)).collect())
    }

    fn format_with(&self, a: &Poly) -> String {
        let k = &self.field;
        let mut terms = Vec::new();
        for i in (0..a.c.len()).rev() {
            let c = &a.c[i];
            if k.is_zero(c) {
                continue;
            }
            let cs = k.format(c);
            let compound = cs.contains('+') || cs.contains('*') || cs.contains('^');
            let cpart = if compound { format!("({cs})") } else { cs };
            let v = self.var;
            terms.push(match i {
                0 => cpart,
                1 if k.is_one(c) => format!("{v}"),
                1 => format!("{cpart}*{v}"),
                _ if k.is_one(c) => format!("{v}^{i}"),
                _ => format!("{cpart}*{v}^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn kind(&self) -> RingKind {
        RingKind::PolyRing
    }

    fn characteristic(&self) -> u32 {
        self.field.p()
    }

    fn base_exp(&self) -> u32 {
        self.field.base_exp()
    }

    fn zero(&self) -> Poly {
        Poly { c: Vec::new() }
    }

    fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    fn from_int(&self, n: i64) -> Poly {
        self.constant(self.field.from_int(n))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let k = &self.field;
        let n = a.c.len().max(b.c.len());
        self.from_coeffs(
            (0..n)
                .map(|i| match (a.c.get(i), b.c.get(i)) {
                    (Some(x), Some(y)) => k.add(x, y),
                    (Some(x), None) | (None, Some(x)) => x.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    fn neg(&self, a: &Poly) -> Poly {
        Poly {
            c: a.c.iter().map(|x| self.field.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let k = &self.field;
        let mut out = vec![k.zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if k.is_zero(y) {
                    continue;
                }
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn contains(&self, a: &Poly) -> bool {
        a.c.iter().all(|c| self.field.contains(c))
    }

    fn frobenius(&self, a: &Poly) -> Poly {
        let k = &self.field;
        let q = self.q() as usize;
        if a.is_zero() {
            return self.zero();
        }
        let mut out = vec![k.zero(); (a.c.len() - 1) * q + 1];
        for (i, c) in a.c.iter().enumerate() {
            out[i * q] = k.frobenius(c);
        }
        self.from_coeffs(out)
    }

    fn inv(&self, a: &Poly) -> Result<Poly> {
        match a.degree() {
            None => Err(Error::DivisionByZero),
            Some(0) => Ok(self.constant(self.field.inv(&a.c[0])?)),
            Some(_) => Err(Error::NotInvertible),
        }
    }

    fn frobenius_basis(&self) -> Vec<Poly> {
        let k = &self.field;
        (0..self.q() as usize)
            .map(|j| self.monomial(k.one(), j))
            .collect()
    }

    fn frobenius_decompose(&self, a: &Poly) -> Vec<Poly> {
        // a = Σ_j x^j c_j^q with c_j = Σ_k (a_{kq+j})^{1/q} x^k
        let k = &self.field;
        let q = self.q() as usize;
        (0..q)
            .map(|j| {
                let c: Vec<FieldElem> = a
                    .c
                    .iter()
                    .skip(j)
                    .step_by(q)
                    .map(|x| k.qth_root(x).expect("finite fields are perfect"))
                    .collect();
                self.from_coeffs(c)
            })
            .collect()
    }

    fn is_field(&self) -> bool {
        false
    }

    fn is_domain(&self) -> bool {
        true
    }

    fn format(&self, a: &Poly) -> String {
        self.format_with(a)
    }

    fn symbol(&self, name: &str) -> Option<Poly> {
        if name.len() == 1 && name.starts_with(self.var) {
            return Some(self.variable());
        }
        self.field.symbol(name).map(|w| self.constant(w))
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> Poly {
        self.random_of_degree(rng, 3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2x() -> PolyRing {
        PolyRing::new(FiniteField::gf(2, 1).unwrap())
    }

    #[test]
    fn frobenius_of_x() {
        let r = f2x();
        assert_eq!(r.frobenius(&r.variable()), r.from_ints(&[0, 0, 1]));
        let r3 = PolyRing::new(FiniteField::gf(3, 1).unwrap());
        assert_eq!(r3.frobenius(&r3.from_ints(&[1, 2])), r3.from_ints(&[1, 0, 0, 2]));
    }

    #[test]
    fn frobenius_basis_is_powers_of_x() {
        let r = f2x();
        assert_eq!(r.frobenius_basis(), vec![r.one(), r.variable()]);
        let r3 = PolyRing::new(FiniteField::gf(3, 1).unwrap());
        assert_eq!(r3.frobenius_basis().len(), 3);
        assert_eq!(r3.frobenius_basis()[2], r3.from_ints(&[0, 0, 1]));
    }

    #[test]
    fn frobenius_decomposition_recomposes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for r in [
            f2x(),
            PolyRing::new(FiniteField::gf(3, 1).unwrap()),
            PolyRing::new(FiniteField::gf(2, 2).unwrap()),
        ] {
            for _ in 0..200 {
                let a = r.random_of_degree(&mut rng, 9);
                let parts = r.frobenius_decompose(&a);
                assert_eq!(r.frobenius_recompose(&parts), a);
            }
        }
    }

    #[test]
    fn division_and_gcd() {
        let r = PolyRing::new(FiniteField::gf(3, 1).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = r.random_of_degree(&mut rng, 6);
            let b = r.random_of_degree(&mut rng, 4);
            if b.is_zero() {
                continue;
            }
            let (q, rem) = r.divrem(&a, &b).unwrap();
            assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
            assert!(rem.degree() < b.degree());
            let (g, s, t) = r.ext_gcd(&a, &b);
            assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
            assert!(r.rem(&a, &g).unwrap().is_zero());
        }
    }

    #[test]
    fn formatting() {
        let r = f2x();
        assert_eq!(r.format(&r.from_ints(&[1, 1, 0, 1])), "x^3+x+1");
        let r4 = PolyRing::new(FiniteField::gf(2, 2).unwrap());
        let w = r4.field().generator();
        let a = r4.from_coeffs(vec![w.clone(), r4.field().add(&w, &r4.field().one())]);
        assert_eq!(r4.format(&a), "(w+1)*x+w");
    }
}
