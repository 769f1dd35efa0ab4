//! K₀-level invariants: classes of Cartier crystals, the trace to functions
//! on rational points, and the skew-field rank at a point.

mod quillen;

pub use quillen::{
    chow_frobenius_demo, k0_pushforward_defect, qd_rank, scramble, ChowDemo, DPresentation,
};

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::cartier::{
    delta_with, random_module, simple_factors, Block, CartierModule, FactorKey, PointSet,
};
use crate::error::{Error, Result};
use crate::fields::{FieldElem, FiniteField, Ring};
use crate::linalg::Echelon;

/// A formal `ℤ`-combination of simple crystals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct K0Class {
    terms: BTreeMap<FactorKey, i64>,
}

impl K0Class {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FactorKey, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn add_term(&mut self, key: FactorKey, n: i64) {
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k.clone(), v);
        }
        out
    }

    pub fn scale(&self, n: i64) -> K0Class {
        let mut out = K0Class::zero();
        for (k, v) in self.terms() {
            out.add_term(k.clone(), n * v);
        }
        out
    }

    pub fn sub(&self, other: &K0Class) -> K0Class {
        self.add(&other.scale(-1))
    }
}

pub fn k0_class(m: &CartierModule) -> Result<K0Class> {
    let mut out = K0Class::zero();
    for f in simple_factors(m)? {
        let n = f.multiplicity as i64;
        out.add_term(f.key(), n);
    }
    Ok(out)
}

/// A function `X(F_q) → F_q`; non-rational points carry no value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFunction {
    field: FiniteField,
    values: Vec<Option<FieldElem>>,
}

impl TraceFunction {
    pub fn zero(points: &PointSet) -> Result<Self> {
        let field = points.base_field()?;
        let values = points
            .degrees
            .iter()
            .map(|&d| (d == 1).then(|| field.zero()))
            .collect();
        Ok(TraceFunction { field, values })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn values(&self) -> &[Option<FieldElem>] {
        &self.values
    }

    pub fn value(&self, x: usize) -> Option<&FieldElem> {
        self.values[x].as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|v| self.field.is_zero(v))
    }

    pub fn add(&self, other: &TraceFunction) -> TraceFunction {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(self.field.add(a, b)),
                _ => None,
            })
            .collect();
        TraceFunction {
            field: self.field.clone(),
            values,
        }
    }

    /// Prime-field coordinates of all rational values, concatenated.
    pub fn flatten(&self) -> Vec<u32> {
        self.values.iter().flatten().flat_map(|v| v.coeffs().to_vec()).collect()
    }
}

impl Serialize for TraceFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

/// `F_q`-trace of `C` on a block at a rational point.
fn block_trace(b: &Block) -> Result<FieldElem> {
    let k = b.field();
    if b.dim() == 0 {
        return Ok(k.zero());
    }
    let (_, c) = b.as_fmodule()?.c_matrix();
    Ok((0..c.len()).fold(k.zero(), |acc, j| k.add(&acc, &c[j][j])))
}

/// `x ↦ tr(C | M_x)` on rational points.
pub fn taelman_trace(m: &CartierModule) -> Result<TraceFunction> {
    let mut out = TraceFunction::zero(&m.points())?;
    for (x, b) in m.blocks.iter().enumerate() {
        if b.is_rational() {
            out.values[x] = Some(block_trace(b)?);
        }
    }
    Ok(out)
}

/// The trace of a class, from its simple constituents: `C` acts on the
/// simple `F_q[y]/(f)` at a rational point as `y`, with trace `-f_{d-1}`.
pub fn class_trace(points: &PointSet, class: &K0Class) -> Result<TraceFunction> {
    let mut out = TraceFunction::zero(points)?;
    let k = out.field.clone();
    for (key, n) in class.terms() {
        if key.point >= points.len() {
            return Err(Error::InvalidParams(format!("class refers to point {}", key.point)));
        }
        if key.scalar_degree != 1 {
            continue;
        }
        let sub = key
            .coefficients
            .get(key.degree.wrapping_sub(1))
            .map(|c| k.from_coeffs(c))
            .unwrap_or_else(|| k.zero());
        let contrib = k.mul(&k.neg(&sub), &k.from_int(n));
        if let Some(v) = out.values[key.point].as_mut() {
            *v = k.add(v, &contrib);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SesReport {
    pub points: usize,
    /// `dim_{F_p}` of the span of traces of `(x_*F_q, c)` for `c ≠ 0`.
    pub image_dim: usize,
    pub expected_dim: usize,
    pub surjective: bool,
    /// `tr(x_*1) = δ_x` for every point.
    pub deltas_ok: bool,
    pub relations_checked: usize,
    pub relations_zero: usize,
    pub p_multiples_checked: usize,
    pub p_multiples_zero: usize,
    /// Module traces agree with class traces on every sample.
    pub factors_through_k0: bool,
    pub exact: bool,
}

/// Evidence for `0 → R → K₀(Crys) → Map(X(F_q), F_q) → 0` on rational points.
pub fn verify_taelman_ses<G: Rng + ?Sized>(points: &PointSet, samples: usize, rng: &mut G) -> Result<SesReport> {
    if points.degrees.iter().any(|&d| d != 1) {
        return Err(Error::InvalidParams("all points must be rational".into()));
    }
    let fq = points.base_field()?;
    let n = points.len();
    let mut image = Echelon::new(fq.p(), n * fq.degree());
    let mut deltas_ok = true;
    let mut factors_through_k0 = true;
    for x in 0..n {
        for c in fq.elements().filter(|c| !fq.is_zero(c)) {
            let d = delta_with(points, x, Some(c.clone()))?;
            let tr = taelman_trace(&d)?;
            image.insert(&tr.flatten());
            factors_through_k0 &= class_trace(points, &k0_class(&d)?)? == tr;
            if fq.is_one(&c) {
                deltas_ok &= (0..n).all(|y| {
                    let want = if y == x { fq.one() } else { fq.zero() };
                    tr.value(y) == Some(&want)
                });
            }
        }
    }
    let mut relations_zero = 0;
    for _ in 0..samples {
        let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let a = random_module(points, &dims, rng)?;
        let b = random_module(points, &dims, rng)?;
        let blocks = a
            .blocks
            .iter()
            .zip(&b.blocks)
            .map(|(x, y)| x.with_c(x.c().add(y.c())))
            .collect();
        let sum = CartierModule::new(points.p, points.base_exp, blocks)?;
        let rel = k0_class(&a)?.add(&k0_class(&b)?).sub(&k0_class(&sum)?);
        if class_trace(points, &rel)?.is_zero() {
            relations_zero += 1;
        }
        for m in [&a, &b, &sum] {
            factors_through_k0 &= class_trace(points, &k0_class(m)?)? == taelman_trace(m)?;
        }
    }
    let mut p_multiples_zero = 0;
    for _ in 0..samples {
        let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let m = random_module(points, &dims, rng)?;
        let class = k0_class(&m)?.scale(points.p as i64);
        if class_trace(points, &class)?.is_zero() {
            p_multiples_zero += 1;
        }
    }
    let expected_dim = n * fq.degree();
    let surjective = image.dim() == expected_dim;
    Ok(SesReport {
        points: n,
        image_dim: image.dim(),
        expected_dim,
        surjective,
        deltas_ok,
        relations_checked: samples,
        relations_zero,
        p_multiples_checked: samples,
        p_multiples_zero,
        factors_through_k0,
        exact: surjective
            && deltas_ok
            && factors_through_k0
            && relations_zero == samples
            && p_multiples_zero == samples,
    })
}
