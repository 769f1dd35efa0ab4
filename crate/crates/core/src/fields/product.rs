//! Finite products of finite fields: the reduced Artinian `F_q`-algebras.

use rand::Rng;

use super::finite::{FieldElem, FiniteField};
use super::{Ring, RingKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductElem(pub Vec<FieldElem>);

#[derive(Debug, Clone, PartialEq)]
pub struct ProductRing {
    factors: Vec<FiniteField>,
}

impl ProductRing {
    /// All factors must share `p` and `q`.
    pub fn new(factors: Vec<FiniteField>) -> Result<Self> {
        let first = factors.first().ok_or(Error::EmptyInput)?;
        let (p, e) = (first.p(), first.base_exp());
        if factors.iter().any(|k| k.p() != p || k.base_exp() != e) {
            return Err(Error::InvalidParams(
                "product factors must share p and q".into(),
            ));
        }
        Ok(ProductRing { factors })
    }

    pub fn factors(&self) -> &[FiniteField] {
        &self.factors
    }

    pub fn idempotent(&self, i: usize) -> ProductElem {
        ProductElem(
            self.factors
                .iter()
                .enumerate()
                .map(|(j, k)| if i == j { k.one() } else { k.zero() })
                .collect(),
        )
    }

    fn zip(
        &self,
        a: &ProductElem,
        b: &ProductElem,
        f: impl Fn(&FiniteField, &FieldElem, &FieldElem) -> FieldElem,
    ) -> ProductElem {
        ProductElem(
            self.factors
                .iter()
                .zip(a.0.iter().zip(&b.0))
                .map(|(k, (x, y))| f(k, x, y))
                .collect(),
        )
    }

    fn map(
        &self,
        a: &ProductElem,
        f: impl Fn(&FiniteField, &FieldElem) -> FieldElem,
    ) -> ProductElem {
        ProductElem(self.factors.iter().zip(&a.0).map(|(k, x)| f(k, x)).collect())
    }
}

impl Ring for ProductRing {
    type Elem = ProductElem;

    fn kind(&self) -> RingKind {
        RingKind::ProductOfFiniteFields
    }

    fn characteristic(&self) -> u32 {
        self.factors[0].p()
    }

    fn base_exp(&self) -> u32 {
        self.factors[0].base_exp()
    }

    fn zero(&self) -> ProductElem {
        ProductElem(self.factors.iter().map(|k| k.zero()).collect())
    }

    fn one(&self) -> ProductElem {
        ProductElem(self.factors.iter().map(|k| k.one()).collect())
    }

    fn from_int(&self, n: i64) -> ProductElem {
        ProductElem(self.factors.iter().map(|k| k.from_int(n)).collect())
    }

    fn add(&self, a: &ProductElem, b: &ProductElem) -> ProductElem {
        self.zip(a, b, |k, x, y| k.add(x, y))
    }

    fn neg(&self, a: &ProductElem) -> ProductElem {
        self.map(a, |k, x| k.neg(x))
    }

    fn mul(&self, a: &ProductElem, b: &ProductElem) -> ProductElem {
        self.zip(a, b, |k, x, y| k.mul(x, y))
    }

    fn is_zero(&self, a: &ProductElem) -> bool {
        self.factors.iter().zip(&a.0).all(|(k, x)| k.is_zero(x))
    }

    fn contains(&self, a: &ProductElem) -> bool {
        a.0.len() == self.factors.len()
            && self.factors.iter().zip(&a.0).all(|(k, x)| k.contains(x))
    }

    fn frobenius(&self, a: &ProductElem) -> ProductElem {
        self.map(a, |k, x| k.frobenius(x))
    }

    fn inv(&self, a: &ProductElem) -> Result<ProductElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let parts: Result<Vec<_>> = self
            .factors
            .iter()
            .zip(&a.0)
            .map(|(k, x)| k.inv(x).map_err(|_| Error::NotInvertible))
            .collect();
        Ok(ProductElem(parts?))
    }

    fn qth_root(&self, a: &ProductElem) -> Result<ProductElem> {
        Ok(self.map(a, |k, x| k.qth_root(x).expect("finite fields are perfect")))
    }

    fn frobenius_basis(&self) -> Vec<ProductElem> {
        vec![self.one()]
    }

    fn frobenius_decompose(&self, a: &ProductElem) -> Vec<ProductElem> {
        vec![self.qth_root(a).expect("products of finite fields are perfect")]
    }

    fn is_field(&self) -> bool {
        self.factors.len() == 1
    }

    fn is_domain(&self) -> bool {
        self.factors.len() == 1
    }

    fn format(&self, a: &ProductElem) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .zip(&a.0)
            .map(|(k, x)| k.format(x))
            .collect();
        format!("[{}]", parts.join(", "))
    }

    fn symbol(&self, _name: &str) -> Option<ProductElem> {
        None
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> ProductElem {
        ProductElem(self.factors.iter().map(|k| k.random(rng)).collect())
    }
}
