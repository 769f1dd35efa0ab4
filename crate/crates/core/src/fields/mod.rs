//! Base rings: finite fields, finite products of finite fields, `F_q[x]`,
//! `F_q[x]/(f)` and the rational function field `F_q(t)`.
//!
//! Every ring is an `F_q`-algebra for a fixed `q = p^e`; the `q`-power
//! Frobenius `a ↦ a^q` is the endomorphism twisting the skew ring `R[F]`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

pub mod factor;
pub mod finite;
pub mod poly;
pub mod prime;
pub mod product;
pub mod quotient;
pub mod ratfunc;

pub use finite::{FieldElem, FieldSpec, FiniteField};
pub use poly::{Poly, PolyRing};
pub use product::{ProductElem, ProductRing};
pub use quotient::QuotientRing;
pub use ratfunc::{RatElem, RatFunc};

/// Which family a base ring belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    FiniteField,
    ProductOfFiniteFields,
    PolyRing,
    RationalFunctions,
    QuotientRing,
}

impl RingKind {
    pub fn is_perfect(self) -> bool {
        matches!(self, RingKind::FiniteField | RingKind::ProductOfFiniteFields)
    }

    /// All supported rings are finitely generated over their `q`-th powers.
    pub fn is_f_finite(self) -> bool {
        true
    }

    pub fn is_finite_dimensional(self) -> bool {
        matches!(
            self,
            RingKind::FiniteField | RingKind::ProductOfFiniteFields | RingKind::QuotientRing
        )
    }
}

/// A commutative `F_q`-algebra together with its arithmetic.
///
/// Rings are cheap-to-clone context objects; elements are plain values and
/// all operations go through the ring.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn kind(&self) -> RingKind;
    fn characteristic(&self) -> u32;
    /// `e` such that `q = p^e`.
    fn base_exp(&self) -> u32;

    fn q(&self) -> u64 {
        (self.characteristic() as u64).pow(self.base_exp())
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Whether `a` was produced by this ring (same field tags).
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^q`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;

    /// `a^{q^n}`.
    fn frobenius_iter(&self, a: &Self::Elem, n: usize) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..n {
            x = self.frobenius(&x);
        }
        x
    }

    /// `a^{q^n - 1}`, computed as `∏_{j<n} (a^{q-1})^{q^j}` so that the
    /// exponent never has to be materialized.
    fn pow_q_minus_one(&self, a: &Self::Elem, n: usize) -> Self::Elem {
        if n == 0 {
            return self.one();
        }
        let base = self.pow(a, self.q() - 1);
        let mut acc = base.clone();
        let mut cur = base;
        for _ in 1..n {
            cur = self.frobenius(&cur);
            acc = self.mul(&acc, &cur);
        }
        acc
    }

    /// Multiplicative inverse; `DivisionByZero` for zero, `NotInvertible`
    /// for other non-units.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// The unique `b` with `b^q = a`; only perfect rings have one.
    fn qth_root(&self, _a: &Self::Elem) -> Result<Self::Elem> {
        Err(Error::NotPerfect)
    }

    /// `a^{1/q^n}`.
    fn qth_root_iter(&self, a: &Self::Elem, n: usize) -> Result<Self::Elem> {
        let mut x = a.clone();
        for _ in 0..n {
            x = self.qth_root(&x)?;
        }
        Ok(x)
    }

    /// A finite list `B` spanning the ring over its subring of `q`-th powers.
    fn frobenius_basis(&self) -> Vec<Self::Elem>;

    /// Coefficients `c_b` with `a = Σ_b b·c_b^q`, aligned with
    /// [`Ring::frobenius_basis`].
    fn frobenius_decompose(&self, a: &Self::Elem) -> Vec<Self::Elem>;

    fn is_field(&self) -> bool;
    fn is_domain(&self) -> bool;

    fn is_perfect(&self) -> bool {
        self.kind().is_perfect()
    }

    fn is_f_finite(&self) -> bool {
        self.kind().is_f_finite()
    }

    fn is_finite_dimensional(&self) -> bool {
        self.kind().is_finite_dimensional()
    }

    /// Canonical text form, parseable by the expression front-end.
    fn format(&self, a: &Self::Elem) -> String;

    /// Value of a named generator (`w`, `x` or `t`) if the ring has one.
    fn symbol(&self, name: &str) -> Option<Self::Elem>;

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    fn random_nonzero<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// Recomposes `Σ_b b·c_b^q`.
    fn frobenius_recompose(&self, coeffs: &[Self::Elem]) -> Self::Elem {
        self.frobenius_basis()
            .iter()
            .zip(coeffs)
            .fold(self.zero(), |acc, (b, c)| {
                self.add(&acc, &self.mul(b, &self.frobenius(c)))
            })
    }
}

/// `a^q` in any supported ring.
pub fn frobenius<R: Ring>(ring: &R, a: &R::Elem) -> R::Elem {
    ring.frobenius(a)
}

/// The unique `q`-th root, or `NotPerfect`.
pub fn qth_root<R: Ring>(ring: &R, a: &R::Elem) -> Result<R::Elem> {
    ring.qth_root(a)
}

pub fn frobenius_basis<R: Ring>(ring: &R) -> Vec<R::Elem> {
    ring.frobenius_basis()
}
