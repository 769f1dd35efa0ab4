//! Finite fields `F_{p^r} = F_p[w]/(m(w))`.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::prime;
use super::{Ring, RingKind};
use crate::error::{Error, Result};

/// Defining data of `F_{p^r}` together with the fixed `q = p^{base_exp}`.
///
/// The modulus is monic irreducible of degree `r` over `F_p`; when none is
/// supplied the least one (see [`prime::least_irreducible`]) is used, so
/// every run picks the same generator `w`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    r: u32,
    base_exp: u32,
    modulus: Vec<u32>,
    id: u64,
    /// Row `i` holds the coordinates of `(w^i)^q`.
    frob_q: Vec<Vec<u32>>,
    /// Row `i` holds the coordinates of `(w^i)^p`.
    frob_p: Vec<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}, q={}^{}, modulus={:?})",
            self.p, self.r, self.p, self.base_exp, self.modulus
        )
    }
}

#[derive(Serialize, Deserialize)]
struct FieldSpecJson {
    p: u32,
    r: u32,
    #[serde(default, rename = "baseExp", skip_serializing_if = "Option::is_none")]
    base_exp: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u32>>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecJson {
            p: self.p,
            r: self.r,
            base_exp: (self.base_exp != 1).then_some(self.base_exp),
            modulus: Some(self.modulus.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FieldSpecJson::deserialize(d)?;
        let spec = match j.modulus {
            Some(m) => FieldSpec::with_modulus(j.p, j.r, m),
            None => FieldSpec::new(j.p, j.r),
        }
        .and_then(|s| s.with_base_exp(j.base_exp.unwrap_or(1)))
        .map_err(serde::de::Error::custom)?;
        Ok(spec)
    }
}

impl FieldSpec {
    /// `F_{p^r}` with the deterministic modulus and `q = p`.
    pub fn new(p: u32, r: u32) -> Result<Self> {
        Self::check_params(p, r)?;
        Self::build(p, r, 1, prime::least_irreducible(p, r))
    }

    /// `F_{p^r}` with an explicit modulus, verified to be irreducible.
    pub fn with_modulus(p: u32, r: u32, modulus: Vec<u32>) -> Result<Self> {
        Self::check_params(p, r)?;
        if modulus.len() != r as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients",
                r + 1
            )));
        }
        if modulus.iter().any(|&c| c >= p) || modulus[r as usize] != 1 {
            return Err(Error::InvalidField(
                "modulus must be monic with coefficients in 0..p".into(),
            ));
        }
        if !prime::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is not irreducible".into()));
        }
        Self::build(p, r, 1, modulus)
    }

    /// Re-targets the Frobenius to `q = p^e`; `e` must divide `r`.
    pub fn with_base_exp(self, e: u32) -> Result<Self> {
        if e == 0 || !self.r.is_multiple_of(e) {
            return Err(Error::InvalidField(format!(
                "baseExp {e} does not divide r = {}",
                self.r
            )));
        }
        Self::build(self.p, self.r, e, self.modulus)
    }

    fn check_params(p: u32, r: u32) -> Result<()> {
        if !prime::is_prime(p as u64) || p >= (1 << 31) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        if r == 0 || r > 64 {
            return Err(Error::InvalidField(format!("unsupported degree {r}")));
        }
        Ok(())
    }

    fn build(p: u32, r: u32, base_exp: u32, modulus: Vec<u32>) -> Result<Self> {
        let mut h = DefaultHasher::new();
        (p, r, &modulus).hash(&mut h);
        let id = h.finish();
        let n = r as usize;
        let frob_rows = |exp: u64| -> Vec<Vec<u32>> {
            let xp = prime::poly_powmod(&[0, 1], exp, &modulus, p);
            let mut rows = Vec::with_capacity(n);
            let mut cur = vec![1u32];
            for _ in 0..n {
                let mut row = cur.clone();
                row.resize(n, 0);
                rows.push(row);
                cur = prime::poly_mulmod(&cur, &xp, &modulus, p);
            }
            rows
        };
        let frob_p = frob_rows(p as u64);
        // (w^i)^q: iterate the p-power map base_exp times on each row
        let mut frob_q: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = vec![0u32; n];
                v[i] = 1;
                v
            })
            .collect();
        for _ in 0..base_exp {
            frob_q = frob_q.iter().map(|v| apply_rows(v, &frob_p, p)).collect();
        }
        Ok(FieldSpec {
            p,
            r,
            base_exp,
            modulus,
            id,
            frob_q,
            frob_p,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn base_exp(&self) -> u32 {
        self.base_exp
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.base_exp)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.r)
    }
}

fn apply_rows(v: &[u32], rows: &[Vec<u32>], p: u32) -> Vec<u32> {
    let n = rows.len();
    let mut out = vec![0u64; n];
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for j in 0..n {
            out[j] = (out[j] + c as u64 * rows[i][j] as u64) % p as u64;
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

/// An element of a finite field: coordinates in the basis `1, w, …, w^{r-1}`
/// tagged with the identifier of its field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    field: u64,
    c: SmallVec<[u32; 4]>,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c.as_slice())
    }
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn field_id(&self) -> u64 {
        self.field
    }
}

impl Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.c.as_slice().serialize(s)
    }
}

/// Ring context for `F_{p^r}`.
#[derive(Clone)]
pub struct FiniteField {
    spec: Arc<FieldSpec>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.spec.id == other.spec.id && self.spec.base_exp == other.spec.base_exp
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    pub fn new(spec: FieldSpec) -> Self {
        FiniteField {
            spec: Arc::new(spec),
        }
    }

    /// `F_{p^r}` with `q = p`.
    pub fn gf(p: u32, r: u32) -> Result<Self> {
        Ok(Self::new(FieldSpec::new(p, r)?))
    }

    /// `F_{p^r}` with `q = p^e`.
    pub fn gf_q(p: u32, r: u32, e: u32) -> Result<Self> {
        Ok(Self::new(FieldSpec::new(p, r)?.with_base_exp(e)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> usize {
        self.spec.r as usize
    }

    #[inline]
    fn check(&self, a: &FieldElem) {
        assert_eq!(
            a.field, self.spec.id,
            "cross-field arithmetic: element does not belong to {:?}",
            self.spec
        );
    }

    /// Element from prime-field coordinates (reduced mod `p`, padded).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElem {
        let n = self.degree();
        let p = self.spec.p;
        let mut c: SmallVec<[u32; 4]> = SmallVec::from_elem(0, n);
        for (i, &x) in coeffs.iter().enumerate() {
            if i < n {
                c[i] = x % p;
            } else {
                // fold higher powers through the modulus
                let mut poly = vec![0u32; i + 1];
                poly[i] = x % p;
                let red = prime::poly_rem(&poly, &self.spec.modulus, p);
                for (j, &y) in red.iter().enumerate() {
                    c[j] = prime::add(c[j], y, p);
                }
            }
        }
        FieldElem {
            field: self.spec.id,
            c,
        }
    }

    pub fn from_prime(&self, x: u32) -> FieldElem {
        self.from_coeffs(&[x])
    }

    /// The class of `w`.
    pub fn generator(&self) -> FieldElem {
        self.from_coeffs(&[0, 1])
    }

    /// Prime-field value of an element lying in `F_p`.
    pub fn as_prime(&self, a: &FieldElem) -> Option<u32> {
        self.check(a);
        a.c[1..].iter().all(|&x| x == 0).then(|| a.c[0])
    }

    /// All elements, in counting order; only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let n = self.degree();
        let p = self.spec.p as u64;
        let total = self.spec.order().expect("field too large to enumerate");
        (0..total).map(move |mut idx| {
            let mut c = vec![0u32; n];
            for slot in c.iter_mut() {
                *slot = (idx % p) as u32;
                idx /= p;
            }
            self.from_coeffs(&c)
        })
    }

    /// Absolute Frobenius `a ↦ a^p`.
    pub fn frobenius_p(&self, a: &FieldElem) -> FieldElem {
        self.check(a);
        if self.degree() == 1 {
            return a.clone();
        }
        FieldElem {
            field: self.spec.id,
            c: apply_rows(&a.c, &self.spec.frob_p, self.spec.p).into(),
        }
    }

    /// Absolute trace `Σ_{i<r} a^{p^i}` to the prime field.
    pub fn trace_to_prime(&self, a: &FieldElem) -> u32 {
        let mut acc = self.zero();
        let mut cur = a.clone();
        for _ in 0..self.degree() {
            acc = self.add(&acc, &cur);
            cur = self.frobenius_p(&cur);
        }
        self.as_prime(&acc)
            .expect("trace of a finite field element lies in the prime field")
    }

    /// Order of the `q`-Frobenius on this field, `r / e`.
    pub fn frobenius_order(&self) -> usize {
        (self.spec.r / self.spec.base_exp) as usize
    }
}

/// `Σ_{i<m} a^{p^i}` for `a ∈ F_{p^m}`.
pub fn trace_to_prime(field: &FiniteField, a: &FieldElem) -> u32 {
    field.trace_to_prime(a)
}

impl Ring for FiniteField {
    type Elem = FieldElem;

    fn kind(&self) -> RingKind {
        RingKind::FiniteField
    }

    fn characteristic(&self) -> u32 {
        self.spec.p
    }

    fn base_exp(&self) -> u32 {
        self.spec.base_exp
    }

    fn zero(&self) -> FieldElem {
        FieldElem {
            field: self.spec.id,
            c: SmallVec::from_elem(0, self.degree()),
        }
    }

    fn one(&self) -> FieldElem {
        self.from_prime(1)
    }

    fn from_int(&self, n: i64) -> FieldElem {
        self.from_prime(prime::from_i64(n, self.spec.p))
    }

    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let p = self.spec.p;
        FieldElem {
            field: self.spec.id,
            c: a.c.iter().zip(&b.c).map(|(&x, &y)| prime::add(x, y, p)).collect(),
        }
    }

    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let p = self.spec.p;
        FieldElem {
            field: self.spec.id,
            c: a.c.iter().zip(&b.c).map(|(&x, &y)| prime::sub(x, y, p)).collect(),
        }
    }

    fn neg(&self, a: &FieldElem) -> FieldElem {
        self.check(a);
        let p = self.spec.p;
        FieldElem {
            field: self.spec.id,
            c: a.c.iter().map(|&x| prime::neg(x, p)).collect(),
        }
    }

    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let p = self.spec.p;
        let n = self.degree();
        if n == 1 {
            let mut c = SmallVec::new();
            c.push(prime::mul(a.c[0], b.c[0], p));
            return FieldElem {
                field: self.spec.id,
                c,
            };
        }
        let pp = p as u64;
        let mut prod = [0u64; 128];
        let prod = &mut prod[..2 * n - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % pp;
            }
        }
        let m = &self.spec.modulus;
        for i in (n..2 * n - 1).rev() {
            let t = prod[i];
            if t == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..n {
                // x^i = x^{i-n}·x^n and x^n = -Σ m_j x^j
                let k = i - n + j;
                prod[k] = (prod[k] + (pp - t) * m[j] as u64) % pp;
            }
        }
        FieldElem {
            field: self.spec.id,
            c: prod[..n].iter().map(|&x| x as u32).collect(),
        }
    }

    fn is_zero(&self, a: &FieldElem) -> bool {
        self.check(a);
        a.c.iter().all(|&x| x == 0)
    }

    fn contains(&self, a: &FieldElem) -> bool {
        a.field == self.spec.id
    }

    fn frobenius(&self, a: &FieldElem) -> FieldElem {
        self.check(a);
        if self.degree() == 1 {
            return a.clone();
        }
        FieldElem {
            field: self.spec.id,
            c: apply_rows(&a.c, &self.spec.frob_q, self.spec.p).into(),
        }
    }

    fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let p = self.spec.p;
        if self.degree() == 1 {
            return Ok(self.from_prime(prime::inv(a.c[0], p)));
        }
        let mut v: Vec<u32> = a.c.to_vec();
        prime::trim(&mut v);
        let s = prime::poly_inv_mod(&v, &self.spec.modulus, p)
            .ok_or_else(|| Error::Internal("field modulus not irreducible".into()))?;
        Ok(self.from_coeffs(&s))
    }

    fn qth_root(&self, a: &FieldElem) -> Result<FieldElem> {
        Ok(self.frobenius_iter(a, self.frobenius_order() - 1))
    }

    fn frobenius_basis(&self) -> Vec<FieldElem> {
        vec![self.one()]
    }

    fn frobenius_decompose(&self, a: &FieldElem) -> Vec<FieldElem> {
        vec![self.qth_root(a).expect("finite fields are perfect")]
    }

    fn is_field(&self) -> bool {
        true
    }

    fn is_domain(&self) -> bool {
        true
    }

    fn format(&self, a: &FieldElem) -> String {
        self.check(a);
        let mut terms = Vec::new();
        for i in (0..a.c.len()).rev() {
            let c = a.c[i];
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, _) => format!("{c}*w"),
                (_, 1) => format!("w^{i}"),
                _ => format!("{c}*w^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    fn symbol(&self, name: &str) -> Option<FieldElem> {
        (name == "w" && self.degree() > 1).then(|| self.generator())
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> FieldElem {
        let p = self.spec.p;
        let c: Vec<u32> = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
        self.from_coeffs(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> FiniteField {
        FiniteField::gf(2, 2).unwrap()
    }

    #[test]
    fn omega_squared_is_omega_plus_one() {
        let k = f4();
        let w = k.generator();
        assert_eq!(k.frobenius(&w), k.add(&w, &k.one()));
        assert_eq!(k.qth_root(&k.add(&w, &k.one())).unwrap(), w);
        assert_eq!(k.qth_root(&k.one()).unwrap(), k.one());
    }

    #[test]
    fn prime_field_frobenius_is_identity() {
        let k = FiniteField::gf(5, 1).unwrap();
        for a in k.elements() {
            assert_eq!(k.frobenius(&a), a);
        }
    }

    #[test]
    fn traces_in_f4() {
        let k = f4();
        assert_eq!(k.trace_to_prime(&k.one()), 0);
        assert_eq!(k.trace_to_prime(&k.generator()), 1);
        assert_eq!(k.trace_to_prime(&k.zero()), 0);
    }

    #[test]
    fn trace_is_additive_and_surjective() {
        let k = FiniteField::gf(3, 3).unwrap();
        let els: Vec<_> = k.elements().collect();
        let mut hit = [false; 3];
        for a in &els {
            hit[k.trace_to_prime(a) as usize] = true;
            for b in els.iter().step_by(5) {
                assert_eq!(
                    k.trace_to_prime(&k.add(a, b)),
                    (k.trace_to_prime(a) + k.trace_to_prime(b)) % 3
                );
            }
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn inverses_and_frobenius_order() {
        let k = FiniteField::gf(3, 2).unwrap();
        for a in k.elements().skip(1) {
            assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            assert_eq!(k.frobenius_iter(&a, 2), a);
        }
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn base_exp_changes_frobenius() {
        let k = FiniteField::gf_q(2, 4, 2).unwrap();
        let w = k.generator();
        assert_eq!(k.frobenius(&w), k.pow(&w, 4));
        assert_eq!(k.frobenius_order(), 2);
        assert!(FieldSpec::new(2, 4).unwrap().with_base_exp(3).is_err());
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k = FiniteField::gf(3, 4).unwrap();
        for _ in 0..1000 {
            let a = k.random(&mut rng);
            let b = k.random(&mut rng);
            assert_eq!(
                k.frobenius(&k.add(&a, &b)),
                k.add(&k.frobenius(&a), &k.frobenius(&b))
            );
            assert_eq!(
                k.frobenius(&k.mul(&a, &b)),
                k.mul(&k.frobenius(&a), &k.frobenius(&b))
            );
            assert_eq!(k.frobenius(&a), k.pow(&a, 3));
            assert_eq!(k.frobenius(&k.qth_root(&a).unwrap()), a);
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let s = FieldSpec::new(2, 2).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"p":2,"r":2,"modulus":[1,1,1]}"#);
        let back: FieldSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"r":2,"modulus":[1,0,1]}"#).is_err());
    }

    #[test]
    #[should_panic(expected = "cross-field")]
    fn cross_field_arithmetic_panics() {
        let a = f4();
        let b = FiniteField::gf(3, 2).unwrap();
        let _ = a.add(&a.one(), &b.one());
    }
}
