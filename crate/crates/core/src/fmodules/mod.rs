//! Right `k[F]`-modules that are finite dimensional over a finite field `k`.
//!
//! A module is stored at the `F_p` level: an `N×N` matrix for the action of
//! the field generator `w` and one for the action of `F`, both acting on
//! row vectors from the right. The relation `F·r = r^q·F` becomes
//! `M_{w^q}·M_F = M_F·M_w`.

mod filtration;
mod koszul;

pub use filtration::{
    cokernel_f_dim, emerton_reduce, ideal_filtration, reduction_identity_holds, CokernelDims,
    EmertonReduction, FilteredIdeal, ReductionStep,
};
pub use koszul::{check_exactness, koszul_presentation, DegreeReport, ExactnessReport, KoszulPresentation};

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FiniteField, Ring};
use crate::linalg::{Echelon, FpMatrix};
use crate::skew::{SkewPoly, SkewRing};

#[derive(Debug, Clone, PartialEq)]
pub struct FModule {
    field: FiniteField,
    act_w: FpMatrix,
    act_f: FpMatrix,
}

/// `M[X] = M ⊗_k k[F]`, free of the given rank.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeSkewModule {
    pub rank: usize,
    pub ring: SkewRing<FiniteField>,
}

impl FreeSkewModule {
    /// `(Σ e_k h_k)·s = Σ e_k (h_k·s)`, i.e. `(m X^i)·rF^j = m r^{q^i} X^{i+j}`.
    pub fn act(
        &self,
        elem: &[SkewPoly<FieldElem>],
        s: &SkewPoly<FieldElem>,
    ) -> Vec<SkewPoly<FieldElem>> {
        elem.iter().map(|h| self.ring.mul(h, s)).collect()
    }
}

impl FModule {
    /// Validates the `k`-structure and the twisted commutation rule.
    pub fn new(field: FiniteField, act_w: FpMatrix, act_f: FpMatrix) -> Result<Self> {
        let n = act_w.rows();
        if !act_w.is_square() || !act_f.is_square() || act_f.rows() != n {
            return Err(Error::InvalidModule("action matrices must be square of equal size".into()));
        }
        if act_w.p() != field.p() || act_f.p() != field.p() {
            return Err(Error::InvalidModule("matrices over the wrong prime".into()));
        }
        let m = FModule {
            field,
            act_w,
            act_f,
        };
        let modulus = m.field.spec().modulus().to_vec();
        if !m.eval_prime_poly(&modulus).is_zero() {
            return Err(Error::NotFree(
                "generator action does not satisfy the field modulus".into(),
            ));
        }
        let wq = m.field.frobenius(&m.field.generator());
        let lhs = m.scalar_matrix(&wq).mul(&m.act_f);
        if lhs != m.act_f.mul(&m.act_w) {
            return Err(Error::InvalidModule("F does not satisfy F·r = r^q·F".into()));
        }
        Ok(m)
    }

    /// `k^n` with `e_j·F = Σ_l c[j][l]·e_l` (row `j` of `c` holds `e_j·F`).
    pub fn from_k_matrix(field: FiniteField, c: &[Vec<FieldElem>]) -> Result<Self> {
        let n = c.len();
        if c.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidModule("matrix must be square".into()));
        }
        let r = field.degree();
        let p = field.p();
        let dim = n * r;
        let mut act_w = FpMatrix::zeros(p, dim, dim);
        let mut act_f = FpMatrix::zeros(p, dim, dim);
        let w = field.generator();
        let mut wa = field.one();
        for a in 0..r {
            let next = field.mul(&wa, &w);
            // (e_j w^a) F = Σ_l e_l c_{jl} (w^a)^{1/q}
            let root = field.qth_root(&wa)?;
            for j in 0..n {
                let row = j * r + a;
                for (i, &x) in next.coeffs().iter().enumerate() {
                    act_w.set(row, j * r + i, x);
                }
                for (l, cjl) in c[j].iter().enumerate() {
                    let v = field.mul(cjl, &root);
                    for (i, &x) in v.coeffs().iter().enumerate() {
                        act_f.set(row, l * r + i, x);
                    }
                }
            }
            wa = next;
        }
        Self::new(field, act_w, act_f)
    }

    /// `F_p`-dimension of the zero-based basis `e_j w^a ↦ j·r + a`.
    pub fn dim(&self) -> usize {
        self.act_w.rows()
    }

    pub fn k_dim(&self) -> usize {
        self.dim() / self.field.degree()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn act_w(&self) -> &FpMatrix {
        &self.act_w
    }

    pub fn act_f(&self) -> &FpMatrix {
        &self.act_f
    }

    fn eval_prime_poly(&self, c: &[u32]) -> FpMatrix {
        let p = self.field.p();
        let n = self.dim();
        let mut acc = FpMatrix::zeros(p, n, n);
        let mut pw = FpMatrix::identity(p, n);
        for &x in c {
            acc = acc.add(&pw.scale(x));
            pw = pw.mul(&self.act_w);
        }
        acc
    }

    /// Matrix of `m ↦ m·a`.
    pub fn scalar_matrix(&self, a: &FieldElem) -> FpMatrix {
        self.eval_prime_poly(a.coeffs())
    }

    /// `M̃`: scalars act through their `q`-th powers; `F` is unchanged.
    pub fn twist(&self) -> FModule {
        let wq = self.field.frobenius(&self.field.generator());
        FModule {
            field: self.field.clone(),
            act_w: self.scalar_matrix(&wq),
            act_f: self.act_f.clone(),
        }
    }

    /// A `k`-basis, found by spinning standard vectors under `w`.
    pub fn k_basis(&self) -> Vec<Vec<u32>> {
        let n = self.dim();
        let r = self.field.degree();
        let mut span = Echelon::new(self.field.p(), n);
        let mut basis = Vec::new();
        for i in 0..n {
            let mut v = vec![0u32; n];
            v[i] = 1;
            if span.contains(&v) {
                continue;
            }
            basis.push(v.clone());
            for _ in 0..r {
                span.insert(&v);
                v = self.act_w.vec_mul(&v);
            }
        }
        basis
    }

    /// `F_p` matrix whose rows are `e_j w^a` for a `k`-basis `e`.
    pub fn k_frame(&self, basis: &[Vec<u32>]) -> FpMatrix {
        let mut rows = Vec::new();
        for e in basis {
            let mut v = e.clone();
            for _ in 0..self.field.degree() {
                rows.push(v.clone());
                v = self.act_w.vec_mul(&v);
            }
        }
        FpMatrix::from_rows(self.field.p(), self.dim(), &rows)
    }

    /// Coordinates in `k^n` of an `F_p` vector, relative to a `k`-basis.
    pub fn k_coords(&self, frame: &FpMatrix, v: &[u32]) -> Vec<FieldElem> {
        let r = self.field.degree();
        let c = frame.solve_left(v).expect("frame spans the module");
        c.chunks(r).map(|ch| self.field.from_coeffs(ch)).collect()
    }

    /// `F_p` vector of `Σ e_j α_j`.
    pub fn from_k_coords(&self, basis: &[Vec<u32>], alpha: &[FieldElem]) -> Vec<u32> {
        let p = self.field.p();
        let mut out = vec![0u32; self.dim()];
        for (e, a) in basis.iter().zip(alpha) {
            let img = self.scalar_matrix(a).vec_mul(e);
            for (o, x) in out.iter_mut().zip(img) {
                *o = crate::fields::prime::add(*o, x, p);
            }
        }
        out
    }

    /// `v·h = Σ (v·α_i)·F^i` for `h = Σ α_i F^i`.
    pub fn act_poly(&self, v: &[u32], h: &SkewPoly<FieldElem>) -> Vec<u32> {
        let p = self.field.p();
        let mut out = vec![0u32; self.dim()];
        for (i, a) in h.terms() {
            let mut img = self.scalar_matrix(a).vec_mul(v);
            for _ in 0..i {
                img = self.act_f.vec_mul(&img);
            }
            for (o, x) in out.iter_mut().zip(img) {
                *o = crate::fields::prime::add(*o, x, p);
            }
        }
        out
    }

    /// `c[l][j]` with `e_j·F = Σ_l e_l c[l][j]`, together with the basis.
    pub fn c_matrix(&self) -> (Vec<Vec<u32>>, Vec<Vec<FieldElem>>) {
        let basis = self.k_basis();
        let frame = self.k_frame(&basis);
        let n = basis.len();
        let mut c = vec![vec![self.field.zero(); n]; n];
        for (j, e) in basis.iter().enumerate() {
            let img = self.act_f.vec_mul(e);
            for (l, x) in self.k_coords(&frame, &img).into_iter().enumerate() {
                c[l][j] = x;
            }
        }
        (basis, c)
    }

    /// `M[X]` as a free `k[F]`-module.
    pub fn extend_mx(&self) -> Result<FreeSkewModule> {
        let r = self.field.degree();
        if !self.dim().is_multiple_of(r) || self.k_basis().len() * r != self.dim() {
            return Err(Error::NotFree("dimension is not a multiple of [k:F_p]".into()));
        }
        Ok(FreeSkewModule {
            rank: self.k_dim(),
            ring: SkewRing::new(self.field.clone()),
        })
    }

    pub fn random<G: Rng + ?Sized>(field: &FiniteField, n: usize, rng: &mut G) -> FModule {
        let c: Vec<Vec<FieldElem>> = (0..n)
            .map(|_| (0..n).map(|_| field.random(rng)).collect())
            .collect();
        Self::from_k_matrix(field.clone(), &c).expect("random module is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn twist_of_f4_over_itself() {
        let k = FiniteField::gf(2, 2).unwrap();
        let m = FModule::from_k_matrix(k.clone(), &[vec![k.one()]]).unwrap();
        let t = m.twist();
        let w2 = k.mul(&k.generator(), &k.generator());
        assert_eq!(t.act_w(), &m.scalar_matrix(&w2));
        assert_eq!(t.twist(), m);
    }

    #[test]
    fn twist_order_divides_frobenius_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, r, e) in [(2, 3, 1), (3, 2, 1), (2, 4, 2)] {
            let k = FiniteField::gf_q(p, r, e).unwrap();
            let m = FModule::random(&k, 2, &mut rng);
            let mut t = m.clone();
            for _ in 0..k.frobenius_order() {
                t = t.twist();
            }
            assert_eq!(t, m);
        }
    }

    #[test]
    fn c_matrix_recovers_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let k = FiniteField::gf(3, 2).unwrap();
        for _ in 0..20 {
            let c: Vec<Vec<FieldElem>> = (0..3)
                .map(|_| (0..3).map(|_| k.random(&mut rng)).collect())
                .collect();
            let m = FModule::from_k_matrix(k.clone(), &c).unwrap();
            let (_, cc) = m.c_matrix();
            for j in 0..3 {
                for l in 0..3 {
                    assert_eq!(cc[l][j], c[j][l]);
                }
            }
        }
    }

    #[test]
    fn rejects_non_semilinear_f() {
        let k = FiniteField::gf(2, 2).unwrap();
        let m = FModule::from_k_matrix(k.clone(), &[vec![k.one()]]).unwrap();
        // F acting k-linearly instead of σ⁻¹-semilinearly
        let bad = FModule::new(k, m.act_w().clone(), m.act_w().clone());
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
    }

    #[test]
    fn extension_ranks() {
        let k = FiniteField::gf(2, 2).unwrap();
        let zero = FModule::from_k_matrix(k.clone(), &[]).unwrap();
        assert_eq!(zero.extend_mx().unwrap().rank, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = FModule::random(&k, 2, &mut rng);
        let mx = m.extend_mx().unwrap();
        assert_eq!(mx.rank, 2);
        let sr = &mx.ring;
        let x = sr.monomial(k.generator(), 0);
        let elem = vec![sr.f_pow(1), sr.one()];
        assert_eq!(mx.act(&elem, &x), vec![sr.monomial(k.mul(&k.generator(), &k.generator()), 1), x.clone()]);
    }
}
