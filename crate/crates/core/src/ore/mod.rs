//! Ore conditions for `R[F]`: explicit witnesses, localization at
//! multiplicative subsets of `R`, fractions in the skew field `D`, and a
//! bounded search for common right multiples.

mod fraction;
mod search;

pub use fraction::{SkewField, SkewFraction};
pub use search::{common_right_multiple_search, SearchOutcome};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Poly, PolyRing, RatElem, RatFunc, Ring};
use crate::skew::{SkewPoly, SkewRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// `Left`: `r̃·s = s̃·r`. `Right`: `s·r̃ = r·s̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct OreWitness<E> {
    pub r_tilde: SkewPoly<E>,
    pub s_tilde: E,
    pub side: Side,
}

/// `r̃ = Σ r_i s^{q^n - q^i} F^i` and `s̃ = s^{q^n}` where `n = deg r`.
pub fn left_ore_witness<R: Ring>(
    sr: &SkewRing<R>,
    s: &R::Elem,
    r: &SkewPoly<R::Elem>,
) -> Result<OreWitness<R::Elem>> {
    let k = sr.base();
    if k.is_zero(s) {
        return Err(Error::ZeroDenominator);
    }
    let n = r.degree().finite().unwrap_or(0);
    // s^{q^n - q^i} = (s^{q^{n-i} - 1})^{q^i}
    let r_tilde = sr.map_coeffs(r, |i, c| {
        k.mul(c, &k.frobenius_iter(&k.pow_q_minus_one(s, n - i), i))
    });
    let s_tilde = k.frobenius_iter(s, n);
    let lhs = sr.mul(&r_tilde, &sr.constant(s.clone()));
    if lhs != sr.scale_left(&s_tilde, r) {
        return Err(Error::Internal("left Ore witness identity failed".into()));
    }
    Ok(OreWitness {
        r_tilde,
        s_tilde,
        side: Side::Left,
    })
}

/// `r̃ = Σ r_i s^{q^i - 1} F^i` and `s̃ = s`.
pub fn right_ore_witness<R: Ring>(
    sr: &SkewRing<R>,
    s: &R::Elem,
    r: &SkewPoly<R::Elem>,
) -> Result<OreWitness<R::Elem>> {
    let k = sr.base();
    if k.is_zero(s) {
        return Err(Error::ZeroDenominator);
    }
    let r_tilde = sr.map_coeffs(r, |i, c| k.mul(c, &k.pow_q_minus_one(s, i)));
    let lhs = sr.scale_left(s, &r_tilde);
    if lhs != sr.mul(r, &sr.constant(s.clone())) {
        return Err(Error::Internal("right Ore witness identity failed".into()));
    }
    Ok(OreWitness {
        r_tilde,
        s_tilde: s.clone(),
        side: Side::Right,
    })
}

/// A multiplicative subset of `F_q[x]`.
#[derive(Debug, Clone, PartialEq)]
pub enum MultSet {
    /// `{c·f^n : n ≥ 0, c ≠ 0 constant}`.
    Powers(Poly),
    /// All nonzero polynomials (the generic point).
    NonZero,
}

/// A right fraction `num·den⁻¹` with `num ∈ R[F]` and `den ∈ S`.
#[derive(Debug, Clone, PartialEq)]
pub struct RightFraction {
    pub num: SkewPoly<<PolyRing as Ring>::Elem>,
    pub den: Poly,
}

/// Elements of `(S⁻¹R)[F]`, stored with coefficients in `Frac(R)`.
pub type LocalizedSkewPoly = SkewPoly<RatElem>;

/// `S⁻¹R[F] ≅ (S⁻¹R)[F]` for `R = F_q[x]`.
#[derive(Debug, Clone)]
pub struct Localization {
    skew: SkewRing<PolyRing>,
    local: SkewRing<RatFunc>,
    set: MultSet,
}

impl Localization {
    pub fn new(poly: PolyRing, set: MultSet) -> Result<Self> {
        if let MultSet::Powers(f) = &set {
            if f.is_zero() {
                return Err(Error::InvalidParams("cannot invert 0".into()));
            }
        }
        Ok(Localization {
            skew: SkewRing::new(poly.clone()),
            local: SkewRing::new(RatFunc::of(poly)),
            set,
        })
    }

    pub fn skew(&self) -> &SkewRing<PolyRing> {
        &self.skew
    }

    pub fn local(&self) -> &SkewRing<RatFunc> {
        &self.local
    }

    pub fn set(&self) -> &MultSet {
        &self.set
    }

    pub fn in_set(&self, d: &Poly) -> bool {
        let pr = self.skew.base();
        if d.is_zero() {
            return false;
        }
        match &self.set {
            MultSet::NonZero => true,
            MultSet::Powers(f) => {
                let mut d = d.clone();
                if f.degree() != Some(0) {
                    loop {
                        let (q, r) = pr.divrem(&d, f).expect("nonzero f");
                        if !r.is_zero() {
                            break;
                        }
                        d = q;
                    }
                }
                d.degree() == Some(0)
            }
        }
    }

    /// Whether every coefficient of `a` has its denominator in `S`.
    pub fn contains(&self, a: &LocalizedSkewPoly) -> bool {
        a.terms().all(|(_, c)| self.in_set(c.den()))
    }

    /// Coefficient-wise inclusion `R[F] → (S⁻¹R)[F]`.
    pub fn include(&self, a: &SkewPoly<Poly>) -> LocalizedSkewPoly {
        let frac = self.local.base();
        self.local
            .from_terms(a.terms().map(|(i, c)| (i, frac.from_poly(c.clone()))))
    }

    /// Image of `num·den⁻¹`: with `r̃·den = s̃·num`, it equals `s̃⁻¹·r̃`.
    pub fn normal_form(&self, num: &SkewPoly<Poly>, den: &Poly) -> Result<LocalizedSkewPoly> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !self.in_set(den) {
            return Err(Error::DenominatorNotInS);
        }
        let w = left_ore_witness(&self.skew, den, num)?;
        let frac = self.local.base();
        let inv = frac.inv(&frac.from_poly(w.s_tilde))?;
        let out = self.local.from_terms(
            w.r_tilde
                .terms()
                .map(|(i, c)| (i, frac.mul(&inv, &frac.from_poly(c.clone())))),
        );
        debug_assert!(self.contains(&out));
        Ok(out)
    }

    /// `(n₁d₁⁻¹)(n₂d₂⁻¹) = (n₁ρ)(d₂d₁)⁻¹` where `d₁ρ = n₂d₁`.
    pub fn mul_fractions(&self, a: &RightFraction, b: &RightFraction) -> Result<RightFraction> {
        let w = right_ore_witness(&self.skew, &a.den, &b.num)?;
        let pr = self.skew.base();
        Ok(RightFraction {
            num: self.skew.mul(&a.num, &w.r_tilde),
            den: pr.mul(&b.den, &a.den),
        })
    }
}
