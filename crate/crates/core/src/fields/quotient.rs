//! `F_q[x]/(f)` for a monic nonconstant `f`.

use rand::Rng;

use super::poly::{Poly, PolyRing};
use super::{Ring, RingKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRing {
    poly: PolyRing,
    modulus: Poly,
}

impl QuotientRing {
    pub fn new(poly: PolyRing, modulus: Poly) -> Result<Self> {
        match modulus.degree() {
            None | Some(0) => Err(Error::InvalidParams(
                "quotient modulus must be nonconstant".into(),
            )),
            _ => {
                let modulus = poly.monic(&modulus);
                Ok(QuotientRing { poly, modulus })
            }
        }
    }

    pub fn poly_ring(&self) -> &PolyRing {
        &self.poly
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        self.poly.rem(a, &self.modulus).expect("nonzero modulus")
    }
}

impl Ring for QuotientRing {
    type Elem = Poly;

    fn kind(&self) -> RingKind {
        RingKind::QuotientRing
    }

    fn characteristic(&self) -> u32 {
        self.poly.characteristic()
    }

    fn base_exp(&self) -> u32 {
        self.poly.base_exp()
    }

    fn zero(&self) -> Poly {
        self.poly.zero()
    }

    fn one(&self) -> Poly {
        self.poly.one()
    }

    fn from_int(&self, n: i64) -> Poly {
        self.poly.from_int(n)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly.add(a, b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        self.poly.neg(a)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&self.poly.mul(a, b))
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn contains(&self, a: &Poly) -> bool {
        self.poly.contains(a) && a.degree() < self.modulus.degree()
    }

    fn frobenius(&self, a: &Poly) -> Poly {
        self.reduce(&self.poly.frobenius(a))
    }

    fn inv(&self, a: &Poly) -> Result<Poly> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.poly.ext_gcd(a, &self.modulus);
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible);
        }
        Ok(self.reduce(&s))
    }

    fn frobenius_basis(&self) -> Vec<Poly> {
        self.poly
            .frobenius_basis()
            .into_iter()
            .map(|b| self.reduce(&b))
            .collect()
    }

    fn frobenius_decompose(&self, a: &Poly) -> Vec<Poly> {
        self.poly
            .frobenius_decompose(a)
            .into_iter()
            .map(|c| self.reduce(&c))
            .collect()
    }

    fn is_field(&self) -> bool {
        false
    }

    fn is_domain(&self) -> bool {
        false
    }

    fn format(&self, a: &Poly) -> String {
        self.poly.format(a)
    }

    fn symbol(&self, name: &str) -> Option<Poly> {
        self.poly.symbol(name).map(|p| self.reduce(&p))
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> Poly {
        let d = self.modulus.degree().unwrap();
        self.poly.from_coeffs(
            (0..d)
                .map(|_| self.poly.field().random(rng))
                .collect(),
        )
    }
}
