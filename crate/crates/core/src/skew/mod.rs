//! The Frobenius skew ring `R[F]`, with `F·r = r^q·F`.
//!
//! Elements are kept as left polynomials `Σ r_i F^i`. Over a field there are
//! two Euclidean divisions: [`SkewRing::div_right`] (`A = Q·B + R`) only
//! needs inverses, while [`SkewRing::div_left`] (`A = B·Q + R`) needs `q`-th
//! roots and therefore a perfect field.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::Ring;

/// Degree of a skew polynomial; the zero polynomial has degree `-∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `Σ r_i F^i` with only nonzero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewPoly<E> {
    coeffs: BTreeMap<usize, E>,
}

impl<E: Clone> SkewPoly<E> {
    pub fn degree(&self) -> Degree {
        self.coeffs
            .keys()
            .next_back()
            .map_or(Degree::MinusInfinity, |&d| Degree::Finite(d))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.values().next_back()
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.coeffs.get(&i)
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &E)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }
}

/// Result of the right Euclidean algorithm.
///
/// `gcrd = s·a + t·b` and `lclm = u·a = v·b`.
#[derive(Debug, Clone, PartialEq)]
pub struct GcrdLclm<E> {
    pub gcrd: SkewPoly<E>,
    pub lclm: SkewPoly<E>,
    pub s: SkewPoly<E>,
    pub t: SkewPoly<E>,
    pub u: SkewPoly<E>,
    pub v: SkewPoly<E>,
}

/// Result of the left Euclidean algorithm.
///
/// `gcld = a·s + b·t` and `lcrm = a·u = b·v`.
#[derive(Debug, Clone, PartialEq)]
pub struct GcldLcrm<E> {
    pub gcld: SkewPoly<E>,
    pub lcrm: SkewPoly<E>,
    pub s: SkewPoly<E>,
    pub t: SkewPoly<E>,
    pub u: SkewPoly<E>,
    pub v: SkewPoly<E>,
}

/// Arithmetic context for `R[F]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewRing<R: Ring> {
    base: R,
}

impl<R: Ring> SkewRing<R> {
    pub fn new(base: R) -> Self {
        SkewRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn zero(&self) -> SkewPoly<R::Elem> {
        SkewPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> SkewPoly<R::Elem> {
        self.constant(self.base.one())
    }

    pub fn constant(&self, c: R::Elem) -> SkewPoly<R::Elem> {
        self.monomial(c, 0)
    }

    /// `F^i`.
    pub fn f_pow(&self, i: usize) -> SkewPoly<R::Elem> {
        self.monomial(self.base.one(), i)
    }

    /// `c·F^i`.
    pub fn monomial(&self, c: R::Elem, i: usize) -> SkewPoly<R::Elem> {
        let mut coeffs = BTreeMap::new();
        if !self.base.is_zero(&c) {
            coeffs.insert(i, c);
        }
        SkewPoly { coeffs }
    }

    /// From coefficients `[r_0, r_1, …]` of `Σ r_i F^i`.
    pub fn from_coeffs(&self, cs: Vec<R::Elem>) -> SkewPoly<R::Elem> {
        self.from_terms(cs.into_iter().enumerate())
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (usize, R::Elem)>) -> SkewPoly<R::Elem> {
        let mut coeffs: BTreeMap<usize, R::Elem> = BTreeMap::new();
        for (i, c) in terms {
            let e = coeffs.entry(i).or_insert_with(|| self.base.zero());
            *e = self.base.add(e, &c);
        }
        coeffs.retain(|_, c| !self.base.is_zero(c));
        SkewPoly { coeffs }
    }

    /// Dense coefficient list up to the degree.
    pub fn to_coeffs(&self, a: &SkewPoly<R::Elem>) -> Vec<R::Elem> {
        match a.degree().finite() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.coeff(a, i)).collect(),
        }
    }

    pub fn coeff(&self, a: &SkewPoly<R::Elem>, i: usize) -> R::Elem {
        a.coeffs.get(&i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_monic(&self, a: &SkewPoly<R::Elem>) -> bool {
        a.lead().is_some_and(|l| self.base.is_one(l))
    }

    pub fn add(&self, a: &SkewPoly<R::Elem>, b: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        let mut coeffs = a.coeffs.clone();
        for (&i, c) in &b.coeffs {
            match coeffs.get_mut(&i) {
                Some(x) => {
                    *x = self.base.add(x, c);
                    if self.base.is_zero(x) {
                        coeffs.remove(&i);
                    }
                }
                None => {
                    coeffs.insert(i, c.clone());
                }
            }
        }
        SkewPoly { coeffs }
    }

    pub fn neg(&self, a: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        SkewPoly {
            coeffs: a
                .coeffs
                .iter()
                .map(|(&i, c)| (i, self.base.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, a: &SkewPoly<R::Elem>, b: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        self.add(a, &self.neg(b))
    }

    /// `r F^i · s F^j = r·s^{q^i} F^{i+j}`.
    pub fn mul(&self, a: &SkewPoly<R::Elem>, b: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        let k = &self.base;
        let mut acc: BTreeMap<usize, R::Elem> = BTreeMap::new();
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut twisted: Vec<(usize, R::Elem)> =
            b.coeffs.iter().map(|(&j, c)| (j, c.clone())).collect();
        let mut level = 0;
        for (&i, r) in &a.coeffs {
            while level < i {
                for (_, c) in twisted.iter_mut() {
                    *c = k.frobenius(c);
                }
                level += 1;
            }
            for (j, s) in &twisted {
                let t = k.mul(r, s);
                let e = acc.entry(i + j).or_insert_with(|| k.zero());
                *e = k.add(e, &t);
            }
        }
        acc.retain(|_, c| !k.is_zero(c));
        SkewPoly { coeffs: acc }
    }

    /// Whether every coefficient belongs to the base ring.
    pub fn contains(&self, a: &SkewPoly<R::Elem>) -> bool {
        a.coeffs.values().all(|c| self.base.contains(c))
    }

    /// [`SkewRing::mul`] with operands checked against the base ring.
    pub fn skew_mul(
        &self,
        a: &SkewPoly<R::Elem>,
        b: &SkewPoly<R::Elem>,
    ) -> Result<SkewPoly<R::Elem>> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &SkewPoly<R::Elem>, e: u32) -> SkewPoly<R::Elem> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `c·a`.
    pub fn scale_left(&self, c: &R::Elem, a: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        self.from_terms(a.coeffs.iter().map(|(&i, x)| (i, self.base.mul(c, x))))
    }

    /// `a·c = Σ a_i c^{q^i} F^i`.
    pub fn scale_right(&self, a: &SkewPoly<R::Elem>, c: &R::Elem) -> SkewPoly<R::Elem> {
        let k = &self.base;
        self.from_terms(
            a.coeffs
                .iter()
                .map(|(&i, x)| (i, k.mul(x, &k.frobenius_iter(c, i)))),
        )
    }

    /// `a·F^n`: exponents shift, coefficients stay.
    pub fn shift(&self, a: &SkewPoly<R::Elem>, n: usize) -> SkewPoly<R::Elem> {
        SkewPoly {
            coeffs: a.coeffs.iter().map(|(&i, c)| (i + n, c.clone())).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(
        &self,
        a: &SkewPoly<R::Elem>,
        f: impl Fn(usize, &R::Elem) -> R::Elem,
    ) -> SkewPoly<R::Elem> {
        self.from_terms(a.coeffs.iter().map(|(&i, c)| (i, f(i, c))))
    }

    fn require_field(&self) -> Result<()> {
        if self.base.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField)
        }
    }

    fn require_perfect_field(&self) -> Result<()> {
        self.require_field()?;
        if self.base.is_perfect() {
            Ok(())
        } else {
            Err(Error::NotPerfect)
        }
    }

    /// `a = Q·b + R` with `deg R < deg b`.
    pub fn div_right(
        &self,
        a: &SkewPoly<R::Elem>,
        b: &SkewPoly<R::Elem>,
    ) -> Result<(SkewPoly<R::Elem>, SkewPoly<R::Elem>)> {
        self.require_field()?;
        let m = b.degree().finite().ok_or(Error::DivisionByZero)?;
        let k = &self.base;
        let bm = b.lead().unwrap();
        let mut q = self.zero();
        let mut r = a.clone();
        while let Some(n) = r.degree().finite().filter(|&n| n >= m) {
            let c = k.mul(r.lead().unwrap(), &k.inv(&k.frobenius_iter(bm, n - m))?);
            let term = self.monomial(c, n - m);
            r = self.sub(&r, &self.mul(&term, b));
            q = self.add(&q, &term);
        }
        Ok((q, r))
    }

    /// `a = b·Q + R` with `deg R < deg b`.
    pub fn div_left(
        &self,
        a: &SkewPoly<R::Elem>,
        b: &SkewPoly<R::Elem>,
    ) -> Result<(SkewPoly<R::Elem>, SkewPoly<R::Elem>)> {
        self.require_perfect_field()?;
        let m = b.degree().finite().ok_or(Error::DivisionByZero)?;
        let k = &self.base;
        let bi = k.inv(b.lead().unwrap())?;
        let mut q = self.zero();
        let mut r = a.clone();
        while let Some(n) = r.degree().finite().filter(|&n| n >= m) {
            let c = k.qth_root_iter(&k.mul(r.lead().unwrap(), &bi), m)?;
            let term = self.monomial(c, n - m);
            r = self.sub(&r, &self.mul(b, &term));
            q = self.add(&q, &term);
        }
        Ok((q, r))
    }

    /// `lead^{-1}·a`, monic.
    pub fn monic_left(&self, a: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        match a.lead() {
            None => Ok(a.clone()),
            Some(l) => Ok(self.scale_left(&self.base.inv(l)?, a)),
        }
    }

    /// The scalar `c` with `a·c` monic: `c = (lead^{-1})^{1/q^d}`.
    pub fn right_normalizer(&self, a: &SkewPoly<R::Elem>) -> Result<R::Elem> {
        let d = a.degree().finite().ok_or(Error::DivisionByZero)?;
        let li = self.base.inv(a.lead().unwrap())?;
        self.base.qth_root_iter(&li, d)
    }

    /// `a·c`, monic; needs `q`-th roots.
    pub fn monic_right(&self, a: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        if a.is_zero() {
            return Ok(a.clone());
        }
        Ok(self.scale_right(a, &self.right_normalizer(a)?))
    }

    /// Monic greatest common right divisor and least common left multiple,
    /// with cofactors, by Euclid on [`SkewRing::div_right`].
    pub fn gcrd_lclm(
        &self,
        a: &SkewPoly<R::Elem>,
        b: &SkewPoly<R::Elem>,
    ) -> Result<GcrdLclm<R::Elem>> {
        self.require_perfect_field()?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidParams("both operands are zero".into()));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_right(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let k = &self.base;
        // r0 = s0·a + t0·b is the gcrd; 0 = s1·a + t1·b gives the lclm
        let g_inv = k.inv(r0.lead().unwrap())?;
        let (u, v) = if s1.is_zero() {
            (s1, self.neg(&t1))
        } else {
            let lclm = self.mul(&s1, a);
            match lclm.lead() {
                Some(l) => {
                    let c = k.inv(l)?;
                    (self.scale_left(&c, &s1), self.scale_left(&c, &self.neg(&t1)))
                }
                // a = 0: lclm is 0
                None => (self.zero(), self.one()),
            }
        };
        Ok(GcrdLclm {
            gcrd: self.scale_left(&g_inv, &r0),
            lclm: self.mul(&u, a),
            s: self.scale_left(&g_inv, &s0),
            t: self.scale_left(&g_inv, &t0),
            u,
            v,
        })
    }

    /// Monic greatest common left divisor and least common right multiple,
    /// by Euclid on [`SkewRing::div_left`].
    pub fn gcld_lcrm(
        &self,
        a: &SkewPoly<R::Elem>,
        b: &SkewPoly<R::Elem>,
    ) -> Result<GcldLcrm<R::Elem>> {
        self.require_perfect_field()?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidParams("both operands are zero".into()));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_left(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.mul(&s1, &q));
            let t2 = self.sub(&t0, &self.mul(&t1, &q));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let c = self.right_normalizer(&r0)?;
        let (u, v) = if a.is_zero() {
            (self.one(), self.zero())
        } else if b.is_zero() {
            (self.zero(), self.one())
        } else {
            let lcrm = self.mul(a, &s1);
            let e = self.right_normalizer(&lcrm)?;
            (self.scale_right(&s1, &e), self.scale_right(&self.neg(&t1), &e))
        };
        Ok(GcldLcrm {
            gcld: self.scale_right(&r0, &c),
            lcrm: self.mul(a, &u),
            s: self.scale_right(&s0, &c),
            t: self.scale_right(&t0, &c),
            u,
            v,
        })
    }

    /// Monic `g` with `Σ g_i·R[F] = g·R[F]`.
    pub fn right_ideal_generator(&self, gens: &[SkewPoly<R::Elem>]) -> Result<SkewPoly<R::Elem>> {
        self.require_perfect_field()?;
        let (first, rest) = gens.split_first().ok_or(Error::EmptyInput)?;
        let mut g = first.clone();
        for h in rest {
            if h.is_zero() {
                continue;
            }
            g = if g.is_zero() {
                h.clone()
            } else {
                self.gcld_lcrm(&g, h)?.gcld
            };
        }
        self.monic_right(&g)
    }

    /// Coefficients drawn independently up to `max_deg`.
    pub fn random<G: Rng + ?Sized>(&self, rng: &mut G, max_deg: usize) -> SkewPoly<R::Elem> {
        let d = rng.gen_range(0..=max_deg);
        self.from_coeffs((0..=d).map(|_| self.base.random(rng)).collect())
    }

    /// Random polynomial of exact degree `d`.
    pub fn random_of_degree<G: Rng + ?Sized>(&self, rng: &mut G, d: usize) -> SkewPoly<R::Elem> {
        let mut cs: Vec<R::Elem> = (0..d).map(|_| self.base.random(rng)).collect();
        cs.push(self.base.random_nonzero(rng));
        self.from_coeffs(cs)
    }

    /// Random monic polynomial of degree `d`.
    pub fn random_monic<G: Rng + ?Sized>(&self, rng: &mut G, d: usize) -> SkewPoly<R::Elem> {
        let mut cs: Vec<R::Elem> = (0..d).map(|_| self.base.random(rng)).collect();
        cs.push(self.base.one());
        self.from_coeffs(cs)
    }

    /// Descending in `F`-degree, e.g. `x^3*F^2 + (w+1)*F + 1`.
    pub fn format(&self, a: &SkewPoly<R::Elem>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let k = &self.base;
        let terms: Vec<String> = a
            .coeffs
            .iter()
            .rev()
            .map(|(&i, c)| {
                let fpart = match i {
                    0 => String::new(),
                    1 => "F".into(),
                    _ => format!("F^{i}"),
                };
                if i > 0 && k.is_one(c) {
                    return fpart;
                }
                let cs = k.format(c);
                let cs = if i > 0 && (cs.contains('+') || cs.contains('/')) {
                    format!("({cs})")
                } else {
                    cs
                };
                if i == 0 {
                    cs
                } else {
                    format!("{cs}*{fpart}")
                }
            })
            .collect();
        terms.join(" + ")
    }
}
