//! The skew field `D = Quot(k[F])` for a perfect field `k`.

use crate::error::{Error, Result};
use crate::fields::Ring;
use crate::skew::{SkewPoly, SkewRing};

/// A right fraction `num·den⁻¹`, reduced (`gcrd(num, den) = 1`) with monic
/// denominator, so structural equality is equality in `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewFraction<E> {
    num: SkewPoly<E>,
    den: SkewPoly<E>,
}

impl<E: Clone> SkewFraction<E> {
    pub fn num(&self) -> &SkewPoly<E> {
        &self.num
    }

    pub fn den(&self) -> &SkewPoly<E> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Arithmetic in `D` over `k[F]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewField<R: Ring> {
    ring: SkewRing<R>,
}

impl<R: Ring> SkewField<R> {
    pub fn new(base: R) -> Result<Self> {
        if !base.is_field() {
            return Err(Error::NotAField);
        }
        if !base.is_perfect() {
            return Err(Error::NotPerfect);
        }
        Ok(SkewField {
            ring: SkewRing::new(base),
        })
    }

    pub fn ring(&self) -> &SkewRing<R> {
        &self.ring
    }

    /// `num·den⁻¹` in normal form.
    pub fn frac(
        &self,
        num: SkewPoly<R::Elem>,
        den: SkewPoly<R::Elem>,
    ) -> Result<SkewFraction<R::Elem>> {
        let sr = &self.ring;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(self.zero());
        }
        let g = sr.gcrd_lclm(&num, &den)?.gcrd;
        let (n, _) = sr.div_right(&num, &g)?;
        let (d, _) = sr.div_right(&den, &g)?;
        let c = sr.right_normalizer(&d)?;
        Ok(SkewFraction {
            num: sr.scale_right(&n, &c),
            den: sr.scale_right(&d, &c),
        })
    }

    pub fn from_poly(&self, a: SkewPoly<R::Elem>) -> SkewFraction<R::Elem> {
        if a.is_zero() {
            return self.zero();
        }
        SkewFraction {
            num: a,
            den: self.ring.one(),
        }
    }

    pub fn zero(&self) -> SkewFraction<R::Elem> {
        SkewFraction {
            num: self.ring.zero(),
            den: self.ring.one(),
        }
    }

    pub fn one(&self) -> SkewFraction<R::Elem> {
        self.from_poly(self.ring.one())
    }

    pub fn is_one(&self, a: &SkewFraction<R::Elem>) -> bool {
        *a == self.one()
    }

    /// `a·b⁻¹ + c·d⁻¹ = (a·u + c·v)·m⁻¹` with `m = b·u = d·v` the lcrm.
    pub fn d_add(
        &self,
        x: &SkewFraction<R::Elem>,
        y: &SkewFraction<R::Elem>,
    ) -> Result<SkewFraction<R::Elem>> {
        let sr = &self.ring;
        let l = sr.gcld_lcrm(&x.den, &y.den)?;
        let num = sr.add(&sr.mul(&x.num, &l.u), &sr.mul(&y.num, &l.v));
        self.frac(num, l.lcrm)
    }

    pub fn d_neg(&self, x: &SkewFraction<R::Elem>) -> SkewFraction<R::Elem> {
        SkewFraction {
            num: self.ring.neg(&x.num),
            den: x.den.clone(),
        }
    }

    pub fn d_sub(
        &self,
        x: &SkewFraction<R::Elem>,
        y: &SkewFraction<R::Elem>,
    ) -> Result<SkewFraction<R::Elem>> {
        self.d_add(x, &self.d_neg(y))
    }

    /// `(a·b⁻¹)(c·d⁻¹) = (a·c')(d·b')⁻¹` where `b·c' = c·b'`.
    pub fn d_mul(
        &self,
        x: &SkewFraction<R::Elem>,
        y: &SkewFraction<R::Elem>,
    ) -> Result<SkewFraction<R::Elem>> {
        if x.is_zero() || y.is_zero() {
            return Ok(self.zero());
        }
        let sr = &self.ring;
        let l = sr.gcld_lcrm(&x.den, &y.num)?;
        let num = sr.mul(&x.num, &l.u);
        let den = sr.mul(&y.den, &l.v);
        self.frac(num, den)
    }

    pub fn d_inv(&self, x: &SkewFraction<R::Elem>) -> Result<SkewFraction<R::Elem>> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.frac(x.den.clone(), x.num.clone())
    }

    pub fn d_div(
        &self,
        x: &SkewFraction<R::Elem>,
        y: &SkewFraction<R::Elem>,
    ) -> Result<SkewFraction<R::Elem>> {
        self.d_mul(x, &self.d_inv(y)?)
    }

    /// The same element as a left fraction `s⁻¹·r`, for display.
    pub fn to_left_fraction(
        &self,
        x: &SkewFraction<R::Elem>,
    ) -> Result<(SkewPoly<R::Elem>, SkewPoly<R::Elem>)> {
        let sr = &self.ring;
        if x.is_zero() {
            return Ok((sr.one(), sr.zero()));
        }
        // a·b⁻¹ = s⁻¹·r  iff  s·a = r·b
        let l = sr.gcrd_lclm(&x.num, &x.den)?;
        Ok((l.u, l.v))
    }

    pub fn format(&self, x: &SkewFraction<R::Elem>) -> String {
        let sr = &self.ring;
        if sr.is_monic(&x.den) && x.den.degree().finite() == Some(0) {
            return sr.format(&x.num);
        }
        format!("({})*({})^-1", sr.format(&x.num), sr.format(&x.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FiniteField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(p: u32, r: u32) -> SkewField<FiniteField> {
        SkewField::new(FiniteField::gf(p, r).unwrap()).unwrap()
    }

    #[test]
    fn small_identities() {
        let d = field(2, 1);
        let sr = d.ring().clone();
        let f = d.from_poly(sr.f_pow(1));
        assert!(d.is_one(&d.d_mul(&f, &d.d_inv(&f).unwrap()).unwrap()));
        let inv_f = d.d_inv(&f).unwrap();
        assert!(d.d_add(&inv_f, &inv_f).unwrap().is_zero());
        assert_eq!(d.d_inv(&d.zero()), Err(Error::DivisionByZero));

        let d4 = field(2, 2);
        let sr4 = d4.ring().clone();
        let g = d4.from_poly(sr4.add(&sr4.f_pow(1), &sr4.one()));
        let prod = d4.d_mul(&d4.d_inv(&g).unwrap(), &g).unwrap();
        assert!(d4.is_one(&prod));
    }

    #[test]
    fn left_fraction_agrees() {
        let d = field(3, 2);
        let sr = d.ring().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let a = sr.random(&mut rng, 3);
            let b = sr.random_of_degree(&mut rng, 2);
            let x = d.frac(a, b).unwrap();
            let (s, r) = d.to_left_fraction(&x).unwrap();
            assert_eq!(sr.mul(&s, x.num()), sr.mul(&r, x.den()));
        }
    }

    #[test]
    fn rejects_non_perfect() {
        let k = crate::fields::RatFunc::new(FiniteField::gf(2, 1).unwrap());
        assert_eq!(SkewField::new(k).unwrap_err(), Error::NotPerfect);
    }
}
