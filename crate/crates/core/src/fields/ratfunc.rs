//! The rational function field `F_q(t)`, the standard non-perfect field.

use rand::Rng;

use super::finite::FiniteField;
use super::poly::{Poly, PolyRing};
use super::{Ring, RingKind};
use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatElem {
    num: Poly,
    den: Poly,
}

impl RatElem {
    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc {
    poly: PolyRing,
}

impl RatFunc {
    /// `F_q(t)`.
    pub fn new(field: FiniteField) -> Self {
        RatFunc {
            poly: PolyRing::with_var(field, 't'),
        }
    }

    /// Fraction field of a given polynomial ring (keeps its variable name).
    pub fn of(poly: PolyRing) -> Self {
        RatFunc { poly }
    }

    pub fn poly_ring(&self) -> &PolyRing {
        &self.poly
    }

    pub fn field(&self) -> &FiniteField {
        self.poly.field()
    }

    /// `num/den` in normal form.
    pub fn frac(&self, num: Poly, den: Poly) -> Result<RatElem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let pr = &self.poly;
        if num.is_zero() {
            return Ok(self.zero());
        }
        let g = pr.gcd(&num, &den);
        let num = pr.div_exact(&num, &g)?;
        let den = pr.div_exact(&den, &g)?;
        let li = self.field().inv(den.lead().unwrap())?;
        Ok(RatElem {
            num: pr.scale(&num, &li),
            den: pr.scale(&den, &li),
        })
    }

    pub fn from_poly(&self, a: Poly) -> RatElem {
        RatElem {
            num: a,
            den: self.poly.one(),
        }
    }

    /// `a/b = c/d` iff `ad = cb`.
    pub fn cross_equal(&self, a: &RatElem, b: &RatElem) -> bool {
        let pr = &self.poly;
        pr.mul(&a.num, &b.den) == pr.mul(&b.num, &a.den)
    }

    pub fn variable(&self) -> RatElem {
        self.from_poly(self.poly.variable())
    }

    fn wrap(s: String) -> String {
        if s.contains('+') || s.contains('*') {
            format!("({s})")
        } else {
            s
        }
    }
}

impl Ring for RatFunc {
    type Elem = RatElem;

    fn kind(&self) -> RingKind {
        RingKind::RationalFunctions
    }

    fn characteristic(&self) -> u32 {
        self.poly.characteristic()
    }

    fn base_exp(&self) -> u32 {
        self.poly.base_exp()
    }

    fn zero(&self) -> RatElem {
        self.from_poly(self.poly.zero())
    }

    fn one(&self) -> RatElem {
        self.from_poly(self.poly.one())
    }

    fn from_int(&self, n: i64) -> RatElem {
        self.from_poly(self.poly.from_int(n))
    }

    fn add(&self, a: &RatElem, b: &RatElem) -> RatElem {
        let pr = &self.poly;
        if a.den == b.den {
            return self
                .frac(pr.add(&a.num, &b.num), a.den.clone())
                .expect("nonzero denominator");
        }
        let num = pr.add(&pr.mul(&a.num, &b.den), &pr.mul(&b.num, &a.den));
        self.frac(num, pr.mul(&a.den, &b.den))
            .expect("nonzero denominator")
    }

    fn neg(&self, a: &RatElem) -> RatElem {
        RatElem {
            num: self.poly.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RatElem, b: &RatElem) -> RatElem {
        let pr = &self.poly;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        // cross-cancel first to keep degrees small
        let g1 = pr.gcd(&a.num, &b.den);
        let g2 = pr.gcd(&b.num, &a.den);
        let an = pr.div_exact(&a.num, &g1).unwrap();
        let bd = pr.div_exact(&b.den, &g1).unwrap();
        let bn = pr.div_exact(&b.num, &g2).unwrap();
        let ad = pr.div_exact(&a.den, &g2).unwrap();
        self.frac(pr.mul(&an, &bn), pr.mul(&ad, &bd))
            .expect("nonzero denominator")
    }

    fn is_zero(&self, a: &RatElem) -> bool {
        a.num.is_zero()
    }

    fn contains(&self, a: &RatElem) -> bool {
        self.poly.contains(&a.num) && self.poly.contains(&a.den)
    }

    fn frobenius(&self, a: &RatElem) -> RatElem {
        // q-th powers of coprime polynomials stay coprime and monic
        RatElem {
            num: self.poly.frobenius(&a.num),
            den: self.poly.frobenius(&a.den),
        }
    }

    fn inv(&self, a: &RatElem) -> Result<RatElem> {
        if a.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.frac(a.den.clone(), a.num.clone())
    }

    fn frobenius_basis(&self) -> Vec<RatElem> {
        self.poly
            .frobenius_basis()
            .into_iter()
            .map(|b| self.from_poly(b))
            .collect()
    }

    fn frobenius_decompose(&self, a: &RatElem) -> Vec<RatElem> {
        // n/d = n·d^{q-1} / d^q; split the numerator over q-th powers
        let pr = &self.poly;
        let q = self.q();
        let lifted = pr.mul(&a.num, &pr.pow(&a.den, q - 1));
        pr.frobenius_decompose(&lifted)
            .into_iter()
            .map(|c| self.frac(c, a.den.clone()).expect("nonzero denominator"))
            .collect()
    }

    fn is_field(&self) -> bool {
        true
    }

    fn is_domain(&self) -> bool {
        true
    }

    fn format(&self, a: &RatElem) -> String {
        let pr = &self.poly;
        let n = pr.format(&a.num);
        if pr.is_one(&a.den) {
            return n;
        }
        format!("{}/{}", Self::wrap(n), Self::wrap(pr.format(&a.den)))
    }

    fn symbol(&self, name: &str) -> Option<RatElem> {
        self.poly.symbol(name).map(|p| self.from_poly(p))
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> RatElem {
        let pr = &self.poly;
        let num = pr.random_of_degree(rng, 2);
        let den = loop {
            let d = pr.random_of_degree(rng, 2);
            if !d.is_zero() {
                break d;
            }
        };
        self.frac(num, den).expect("nonzero denominator")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2t() -> RatFunc {
        RatFunc::new(FiniteField::gf(2, 1).unwrap())
    }

    #[test]
    fn t_squared_and_no_square_root() {
        let k = f2t();
        let t = k.variable();
        assert_eq!(k.frobenius(&t), k.mul(&t, &t));
        assert_eq!(k.qth_root(&t), Err(Error::NotPerfect));
        assert!(!k.is_perfect());
    }

    #[test]
    fn normal_form_equality_matches_cross_multiplication() {
        let k = f2t();
        let pr = k.poly_ring().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let a = k.random(&mut rng);
            let b = k.random(&mut rng);
            assert_eq!(a == b, k.cross_equal(&a, &b));
            // scaling numerator and denominator by the same factor
            let s = pr.random_of_degree(&mut rng, 2);
            if !s.is_zero() {
                let scaled = k
                    .frac(pr.mul(a.num(), &s), pr.mul(a.den(), &s))
                    .unwrap();
                assert_eq!(scaled, a);
            }
        }
    }

    #[test]
    fn decomposition_recomposes() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in [f2t(), RatFunc::new(FiniteField::gf(3, 1).unwrap())] {
            for _ in 0..200 {
                let a = k.random(&mut rng);
                let parts = k.frobenius_decompose(&a);
                assert_eq!(parts.len() as u64, k.q());
                assert_eq!(k.frobenius_recompose(&parts), a);
            }
        }
    }

    #[test]
    fn formatting() {
        let k = f2t();
        let pr = k.poly_ring();
        let a = k.frac(pr.from_ints(&[1, 1]), pr.from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(k.format(&a), "(t+1)/t^2");
        assert_eq!(k.format(&k.inv(&k.variable()).unwrap()), "1/t");
    }
}
