//! Cartier modules over a finite disjoint union of points.
//!
//! The point `x` carries scalars `k_x = F_{q^{m_x}}`, or `k_x[x]/(x^e)` for a
//! non-reduced point. The block at `x` is an `F_p`-space with matrices for
//! the scalar generators and for `C`, all acting on row vectors:
//! `v ↦ v·S_w` is multiplication by `w` and `v ↦ v·C` is `C(v)`. The Cartier
//! law `C(r^q·m) = r·C(m)` reads `S_{r^q}·C = C·S_r`.

mod json;
mod simple;

pub use json::{BlockJson, CartierJson};
pub use simple::{endomorphism_algebra, simple_constituent, wedderburn_check, WedderburnReport};

use std::cmp::Ordering;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::factor::{char_poly, factor, SubfieldEmbedding};
use crate::fields::{FieldElem, FiniteField, Poly, PolyRing, Ring};
use crate::fmodules::FModule;
use crate::linalg::{Echelon, FpMatrix};

/// `X = ⊔ Spec k_x` with `k_x = F_{q^{m_x}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    pub p: u32,
    pub base_exp: u32,
    pub degrees: Vec<u32>,
}

impl PointSet {
    /// `count` points, all `F_q`-rational.
    pub fn rational(p: u32, base_exp: u32, count: usize) -> Self {
        PointSet {
            p,
            base_exp,
            degrees: vec![1; count],
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn field_at(&self, x: usize) -> Result<FiniteField> {
        FiniteField::gf_q(self.p, self.base_exp * self.degrees[x], self.base_exp)
    }

    /// The field `F_q` itself.
    pub fn base_field(&self) -> Result<FiniteField> {
        FiniteField::gf_q(self.p, self.base_exp, self.base_exp)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    field: FiniteField,
    nil_exp: usize,
    act_w: FpMatrix,
    act_x: Option<FpMatrix>,
    c: FpMatrix,
}

fn elem_matrix_rows(field: &FiniteField, a: &FieldElem) -> Vec<Vec<u32>> {
    // row i: coordinates of w^i·a
    let mut rows = Vec::with_capacity(field.degree());
    let mut cur = a.clone();
    for _ in 0..field.degree() {
        rows.push(cur.coeffs().to_vec());
        cur = field.mul(&cur, &field.generator());
    }
    rows
}

impl Block {
    /// `C` on `(k[x]/(x^e))^n` in the basis `e_j w^a x^b ↦ (j·e + b)·[k:F_p] + a`.
    pub fn standard(field: FiniteField, nil_exp: usize, c: FpMatrix) -> Result<Block> {
        let r = field.degree();
        let p = field.p();
        let nil_exp = nil_exp.max(1);
        let dim = c.rows();
        if !c.is_square() || c.p() != p {
            return Err(Error::InvalidModule("C must be a square matrix over F_p".into()));
        }
        if !dim.is_multiple_of(r * nil_exp) {
            return Err(Error::InvalidModule(format!(
                "block dimension {dim} is not a multiple of {}",
                r * nil_exp
            )));
        }
        let mut act_w = FpMatrix::zeros(p, dim, dim);
        let mut act_x = FpMatrix::zeros(p, dim, dim);
        let w_rows = elem_matrix_rows(&field, &field.generator());
        for row in 0..dim {
            let a = row % r;
            let cell = row / r;
            for (i, &v) in w_rows[a].iter().enumerate() {
                act_w.set(row, cell * r + i, v);
            }
            if (cell % nil_exp) + 1 < nil_exp {
                act_x.set(row, (cell + 1) * r + a, 1);
            }
        }
        Ok(Block {
            field,
            nil_exp,
            act_w,
            act_x: (nil_exp > 1).then_some(act_x),
            c,
        })
    }

    /// Reduced block `k^n` with `C(e_j) = Σ_l e_l c[l][j]`.
    pub fn from_k_matrix(field: FiniteField, c: &[Vec<FieldElem>]) -> Result<Block> {
        let n = c.len();
        let rows: Vec<Vec<FieldElem>> = (0..n).map(|j| (0..n).map(|l| c[l][j].clone()).collect()).collect();
        let m = FModule::from_k_matrix(field, &rows)?;
        Ok(Block::from_fmodule(&m))
    }

    pub fn from_fmodule(m: &FModule) -> Block {
        Block {
            field: m.field().clone(),
            nil_exp: 1,
            act_w: m.act_w().clone(),
            act_x: None,
            c: m.act_f().clone(),
        }
    }

    pub fn zero(field: FiniteField) -> Block {
        let p = field.p();
        Block {
            field,
            nil_exp: 1,
            act_w: FpMatrix::zeros(p, 0, 0),
            act_x: None,
            c: FpMatrix::zeros(p, 0, 0),
        }
    }

    pub fn random<G: Rng + ?Sized>(field: &FiniteField, n: usize, rng: &mut G) -> Block {
        Block::from_fmodule(&FModule::random(field, n, rng))
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.c.rows()
    }

    /// Dimension over the residue field `k_x`.
    pub fn k_dim(&self) -> usize {
        self.dim() / self.field.degree()
    }

    pub fn nil_exp(&self) -> usize {
        self.nil_exp
    }

    pub fn is_reduced(&self) -> bool {
        self.act_x.is_none()
    }

    /// `m_x = [k_x : F_q]`.
    pub fn scalar_degree(&self) -> usize {
        self.field.frobenius_order()
    }

    pub fn is_rational(&self) -> bool {
        self.scalar_degree() == 1
    }

    pub fn c(&self) -> &FpMatrix {
        &self.c
    }

    pub fn act_w(&self) -> &FpMatrix {
        &self.act_w
    }

    pub fn act_x(&self) -> Option<&FpMatrix> {
        self.act_x.as_ref()
    }

    /// Same block with `C` replaced (scalars kept).
    pub fn with_c(&self, c: FpMatrix) -> Block {
        Block { c, ..self.clone() }
    }

    /// Matrix of multiplication by an element of `k_x`.
    pub fn scalar_matrix(&self, a: &FieldElem) -> FpMatrix {
        let p = self.field.p();
        let n = self.dim();
        let mut acc = FpMatrix::zeros(p, n, n);
        let mut pw = FpMatrix::identity(p, n);
        for &x in a.coeffs() {
            acc = acc.add(&pw.scale(x));
            pw = pw.mul(&self.act_w);
        }
        acc
    }

    /// The `k_x`-linear operator `C^{m_x}`.
    pub fn untwisted(&self) -> FpMatrix {
        self.c.pow(self.scalar_degree() as u64)
    }

    /// The block as an `F`-module over `k_x`, forgetting `x`.
    pub fn as_fmodule(&self) -> Result<FModule> {
        FModule::new(self.field.clone(), self.act_w.clone(), self.c.clone())
    }

    /// Restriction to an invariant subspace.
    pub fn restrict(&self, basis: &[Vec<u32>]) -> Block {
        if basis.is_empty() {
            return Block {
                nil_exp: self.nil_exp,
                act_x: self.act_x.as_ref().map(|_| FpMatrix::zeros(self.field.p(), 0, 0)),
                ..Block::zero(self.field.clone())
            };
        }
        let res = |m: &FpMatrix| m.restrict(basis).expect("subspace is invariant");
        Block {
            field: self.field.clone(),
            nil_exp: self.nil_exp,
            act_w: res(&self.act_w),
            act_x: self.act_x.as_ref().map(res),
            c: res(&self.c),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Block) -> Result<Block> {
        if self.field != other.field || self.nil_exp != other.nil_exp {
            return Err(Error::InvalidModule("blocks over different scalars".into()));
        }
        let ds = |a: &FpMatrix, b: &FpMatrix| {
            let n = a.rows() + b.rows();
            let mut m = FpMatrix::zeros(a.p(), n, n);
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    m.set(i, j, a.get(i, j));
                }
            }
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m.set(a.rows() + i, a.cols() + j, b.get(i, j));
                }
            }
            m
        };
        Ok(Block {
            field: self.field.clone(),
            nil_exp: self.nil_exp,
            act_w: ds(&self.act_w, &other.act_w),
            act_x: match (&self.act_x, &other.act_x) {
                (Some(a), Some(b)) => Some(ds(a, b)),
                _ => None,
            },
            c: ds(&self.c, &other.c),
        })
    }

    /// Descending chain `M ⊇ C(M) ⊇ C²(M) ⊇ …` until it stabilizes; the
    /// last entry is the stable image.
    pub fn image_chain(&self) -> Vec<Vec<Vec<u32>>> {
        let n = self.dim();
        let p = self.field.p();
        let mut cur: Vec<Vec<u32>> = FpMatrix::identity(p, n).to_rows();
        let mut chain = vec![cur.clone()];
        loop {
            let mut next = Echelon::new(p, n);
            for v in &cur {
                next.insert(&self.c.vec_mul(v));
            }
            let next = next.basis();
            let same = next.len() == cur.len();
            if same {
                return chain;
            }
            chain.push(next.clone());
            cur = next;
        }
    }
}

/// A Cartier module over a point set: one block per point.
#[derive(Debug, Clone, PartialEq)]
pub struct CartierModule {
    pub p: u32,
    pub base_exp: u32,
    pub blocks: Vec<Block>,
}

impl CartierModule {
    pub fn new(p: u32, base_exp: u32, blocks: Vec<Block>) -> Result<Self> {
        for b in &blocks {
            if b.field.p() != p || b.field.spec().base_exp() != base_exp {
                return Err(Error::InvalidModule("block field does not match q".into()));
            }
        }
        Ok(CartierModule { p, base_exp, blocks })
    }

    pub fn points(&self) -> PointSet {
        PointSet {
            p: self.p,
            base_exp: self.base_exp,
            degrees: self.blocks.iter().map(|b| b.scalar_degree() as u32).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn k_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::k_dim).collect()
    }

    /// Pointwise direct sum of two modules on the same points.
    pub fn direct_sum(&self, other: &CartierModule) -> Result<CartierModule> {
        if self.points() != other.points() {
            return Err(Error::InvalidModule("modules live on different point sets".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<_>>()?;
        CartierModule::new(self.p, self.base_exp, blocks)
    }

    /// The whole `C` as one block-diagonal `F_p` matrix.
    pub fn c_matrix(&self) -> FpMatrix {
        let n = self.dim();
        let mut m = FpMatrix::zeros(self.p, n, n);
        let mut off = 0;
        for b in &self.blocks {
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    m.set(off + i, off + j, b.c.get(i, j));
                }
            }
            off += b.dim();
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub block: usize,
    /// `"w"` or `"x"` for the Cartier law, `"modulus"`/`"nilpotent"`/
    /// `"commute"` for the scalar action itself.
    pub generator: String,
    pub basis_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub ok: bool,
    pub violation: Option<Violation>,
}

fn first_diff(a: &FpMatrix, b: &FpMatrix) -> Option<usize> {
    (0..a.rows()).find(|&i| a.row(i) != b.row(i))
}

/// Checks `C(r^q·m) = r·C(m)` for the scalar generators on every basis vector.
pub fn validate_cartier(m: &CartierModule) -> ValidationReport {
    for (bi, b) in m.blocks.iter().enumerate() {
        let bad = |generator: &str, basis_index: usize| ValidationReport {
            ok: false,
            violation: Some(Violation {
                block: bi,
                generator: generator.into(),
                basis_index,
            }),
        };
        let zero = FpMatrix::zeros(m.p, b.dim(), b.dim());
        let modulus = b.field.spec().modulus();
        let mut acc = zero.clone();
        let mut pw = FpMatrix::identity(m.p, b.dim());
        for &x in modulus {
            acc = acc.add(&pw.scale(x));
            pw = pw.mul(&b.act_w);
        }
        if let Some(i) = first_diff(&acc, &zero) {
            return bad("modulus", i);
        }
        if let Some(sx) = &b.act_x {
            if let Some(i) = first_diff(&sx.pow(b.nil_exp as u64), &zero) {
                return bad("nilpotent", i);
            }
            if let Some(i) = first_diff(&sx.mul(&b.act_w), &b.act_w.mul(sx)) {
                return bad("commute", i);
            }
        }
        let wq = b.field.frobenius(&b.field.generator());
        if let Some(i) = first_diff(&b.scalar_matrix(&wq).mul(&b.c), &b.c.mul(&b.act_w)) {
            return bad("w", i);
        }
        if let Some(sx) = &b.act_x {
            let q = b.field.q();
            if let Some(i) = first_diff(&sx.pow(q).mul(&b.c), &b.c.mul(sx)) {
                return bad("x", i);
            }
        }
    }
    ValidationReport {
        ok: true,
        violation: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NilpotenceReport {
    pub nilpotent: bool,
    /// Least `v` with `C^v = 0`, when nilpotent.
    pub v: Option<usize>,
    /// Least `e` with `C^e M = C^{e+1} M`.
    pub stable_step: usize,
    pub stable_dim: usize,
    /// `dim_{F_p} C^i M` for `i = 0..=stable_step`.
    pub chain: Vec<usize>,
}

pub fn is_nilpotent(m: &CartierModule) -> NilpotenceReport {
    let chains: Vec<Vec<usize>> = m
        .blocks
        .iter()
        .map(|b| b.image_chain().iter().map(Vec::len).collect())
        .collect();
    let stable_step = chains.iter().map(|c| c.len() - 1).max().unwrap_or(0);
    let chain: Vec<usize> = (0..=stable_step)
        .map(|i| chains.iter().map(|c| c[i.min(c.len() - 1)]).sum())
        .collect();
    let stable_dim = *chain.last().unwrap();
    NilpotenceReport {
        nilpotent: stable_dim == 0,
        v: (stable_dim == 0).then_some(stable_step),
        stable_step,
        stable_dim,
        chain,
    }
}

/// `C^e M` for the least `e` with `C^e M = C^{e+1} M`.
pub fn minimal_cartier_submodule(m: &CartierModule) -> CartierModule {
    let blocks = m
        .blocks
        .iter()
        .map(|b| b.restrict(b.image_chain().last().unwrap()))
        .collect();
    CartierModule {
        p: m.p,
        base_exp: m.base_exp,
        blocks,
    }
}

/// A simple Cartier crystal at a point, with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleFactor {
    pub point: usize,
    /// Monic irreducible `f ∈ F_q[y]`, `f ≠ y`, with `f(C^{m_x}) = 0` on the simple.
    pub min_poly: Poly,
    pub multiplicity: usize,
    /// `m_x = [k_x : F_q]`.
    pub scalar_degree: usize,
    /// `r(Z)`: the endomorphism algebra is `F_{p^{r(Z)}}`.
    pub endo_field_degree: usize,
}

impl SimpleFactor {
    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap_or(0)
    }

    pub fn coefficients(&self) -> Vec<Vec<u32>> {
        self.min_poly.coeffs().iter().map(|c| c.coeffs().to_vec()).collect()
    }

    /// `(point, deg f, coefficients of f)`; the multiplicity is not part of it.
    pub fn key(&self) -> FactorKey {
        FactorKey {
            point: self.point,
            degree: self.degree(),
            coefficients: self.coefficients(),
            scalar_degree: self.scalar_degree,
            endo_field_degree: self.endo_field_degree,
        }
    }
}

impl PartialOrd for SimpleFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimpleFactor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key()
            .cmp(&other.key())
            .then(self.multiplicity.cmp(&other.multiplicity))
    }
}

/// Isomorphism class of a simple crystal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FactorKey {
    pub point: usize,
    pub degree: usize,
    pub coefficients: Vec<Vec<u32>>,
    pub scalar_degree: usize,
    pub endo_field_degree: usize,
}

impl FactorKey {
    /// `f` printed in the variable `y = C^{m_x}`.
    pub fn format(&self, p: u32, base_exp: u32) -> String {
        let fq = FiniteField::gf(p, base_exp).expect("valid base field");
        let pr = PolyRing::with_var(fq.clone(), 'y');
        let f = pr.from_coeffs(self.coefficients.iter().map(|c| fq.from_coeffs(c)).collect());
        pr.format(&f)
    }
}

/// Composition factors of the crystal of `m`, sorted canonically.
///
/// On `M_min` the operator `C^{m_x}` is `k_x`-linear with characteristic
/// polynomial in `F_q[y]`; a simple of type `f` has `k_x`-dimension
/// `deg f`, so the exponent of `f` is the multiplicity.
pub fn simple_factors(m: &CartierModule) -> Result<Vec<SimpleFactor>> {
    let fq = FiniteField::gf(m.p, m.base_exp)?;
    let pr_q = PolyRing::with_var(fq.clone(), 'y');
    let min = minimal_cartier_submodule(m);
    let mut out = Vec::new();
    for (x, b) in min.blocks.iter().enumerate() {
        if b.dim() == 0 {
            continue;
        }
        if !b.is_reduced() {
            return Err(Error::NonReduced(x));
        }
        let k = b.field().clone();
        let fm = b.as_fmodule()?;
        let basis = fm.k_basis();
        let frame = fm.k_frame(&basis);
        let u = b.untwisted();
        // row j: coordinates of C^m(e_j)
        let mat: Vec<Vec<FieldElem>> = basis.iter().map(|e| fm.k_coords(&frame, &u.vec_mul(e))).collect();
        let chi = char_poly(&PolyRing::new(k.clone()), &mat);
        let emb = SubfieldEmbedding::new(&fq, &k)?;
        let coeffs = chi
            .coeffs()
            .iter()
            .map(|c| emb.restrict(c).ok_or_else(|| Error::Internal("characteristic polynomial not over F_q".into())))
            .collect::<Result<Vec<_>>>()?;
        let chi_q = pr_q.from_coeffs(coeffs);
        for (f, e) in factor(&pr_q, &chi_q) {
            if f == pr_q.variable() {
                return Err(Error::Internal("C is not bijective on the minimal submodule".into()));
            }
            let d = f.degree().unwrap_or(0);
            out.push(SimpleFactor {
                point: x,
                min_poly: f,
                multiplicity: e,
                scalar_degree: b.scalar_degree(),
                endo_field_degree: m.base_exp as usize * d,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// Skyscraper at the rational point `x`: `F_q` with `C = 1`.
pub fn delta_crystal(points: &PointSet, x: usize) -> Result<CartierModule> {
    delta_with(points, x, None)
}

/// Skyscraper at `x` with `C = c·id`; `None` means `c = 1`.
pub fn delta_with(points: &PointSet, x: usize, c: Option<FieldElem>) -> Result<CartierModule> {
    if x >= points.len() {
        return Err(Error::InvalidParams(format!("point {x} is not in a set of {}", points.len())));
    }
    if points.degrees[x] != 1 {
        return Err(Error::PointNotRational(x));
    }
    let blocks = (0..points.len())
        .map(|y| {
            let k = points.field_at(y)?;
            if y == x {
                let c = c.clone().unwrap_or_else(|| k.one());
                Block::from_k_matrix(k, &[vec![c]])
            } else {
                Ok(Block::zero(k))
            }
        })
        .collect::<Result<_>>()?;
    CartierModule::new(points.p, points.base_exp, blocks)
}

/// Random module on `points` with `k_x`-dimension `dims[x]` at each point.
pub fn random_module<G: Rng + ?Sized>(points: &PointSet, dims: &[usize], rng: &mut G) -> Result<CartierModule> {
    let blocks = (0..points.len())
        .map(|x| Ok(Block::random(&points.field_at(x)?, dims[x], rng)))
        .collect::<Result<_>>()?;
    CartierModule::new(points.p, points.base_exp, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2_module(c: &[&[u32]]) -> CartierModule {
        let k = FiniteField::gf(2, 1).unwrap();
        let rows: Vec<Vec<u32>> = c.iter().map(|r| r.to_vec()).collect();
        let block = Block::standard(k, 1, FpMatrix::from_rows(2, rows.len(), &rows)).unwrap();
        CartierModule::new(2, 1, vec![block]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_cartier(&f2_module(&[&[1, 1], &[0, 1]])).ok);

        let k = FiniteField::gf(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let good = CartierModule::new(2, 1, vec![Block::random(&k, 2, &mut rng)]).unwrap();
        assert!(validate_cartier(&good).ok);

        // C = multiplication by w is linear, not semilinear
        let b = Block::standard(k.clone(), 1, FpMatrix::identity(2, 2)).unwrap();
        let bad = CartierModule::new(2, 1, vec![b.with_c(b.act_w().clone())]).unwrap();
        let rep = validate_cartier(&bad);
        assert!(!rep.ok);
        let v = rep.violation.unwrap();
        assert_eq!((v.block, v.generator.as_str()), (0, "w"));
    }

    #[test]
    fn nilpotence_examples() {
        let rep = is_nilpotent(&f2_module(&[&[0, 1], &[0, 0]]));
        assert!(rep.nilpotent);
        assert_eq!(rep.v, Some(2));

        let rep = is_nilpotent(&f2_module(&[&[1, 0], &[0, 1]]));
        assert!(!rep.nilpotent);
        assert_eq!((rep.stable_step, rep.stable_dim), (0, 2));

        let m = f2_module(&[&[1, 1], &[0, 0]]);
        let rep = is_nilpotent(&m);
        assert_eq!((rep.nilpotent, rep.stable_step, rep.stable_dim), (false, 1, 1));
        let min = minimal_cartier_submodule(&m);
        assert_eq!(min.dim(), 1);
        assert_eq!(min.blocks[0].c(), &FpMatrix::identity(2, 1));
    }

    #[test]
    fn nilpotence_matches_matrix_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (p, r) in [(2, 1), (3, 1), (2, 2)] {
            let k = FiniteField::gf(p, r).unwrap();
            for _ in 0..40 {
                let n = rng.gen_range(1..=3);
                let mut b = Block::random(&k, n, &mut rng);
                if rng.gen_bool(0.5) {
                    // strictly triangular k-matrices give nilpotent C
                    let c: Vec<Vec<FieldElem>> = (0..n)
                        .map(|l| (0..n).map(|j| if l < j { k.random(&mut rng) } else { k.zero() }).collect())
                        .collect();
                    b = Block::from_k_matrix(k.clone(), &c).unwrap();
                }
                let m = CartierModule::new(p, 1, vec![b]).unwrap();
                let brute = m.c_matrix().pow(m.dim() as u64).is_zero();
                assert_eq!(is_nilpotent(&m).nilpotent, brute);
            }
        }
    }

    #[test]
    fn companion_factor() {
        // x^3 + x + 1 over F_2
        let m = f2_module(&[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]);
        let fs = simple_factors(&m).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].coefficients(), vec![vec![1], vec![1], vec![0], vec![1]]);
        assert_eq!((fs[0].multiplicity, fs[0].endo_field_degree), (1, 3));
        assert!(simple_factors(&f2_module(&[&[0, 1], &[0, 0]])).unwrap().is_empty());
    }

    #[test]
    fn deltas() {
        let pts = PointSet::rational(2, 1, 3);
        let d = delta_crystal(&pts, 1).unwrap();
        assert_eq!(d.k_dims(), vec![0, 1, 0]);
        let fs = simple_factors(&d).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].key().format(2, 1), "y+1");
        assert_eq!(fs[0].endo_field_degree, 1);
        assert!(!is_nilpotent(&d).nilpotent);

        let mixed = PointSet {
            p: 2,
            base_exp: 1,
            degrees: vec![1, 2],
        };
        assert_eq!(delta_crystal(&mixed, 1).unwrap_err(), Error::PointNotRational(1));
    }

    #[test]
    fn non_reduced_blocks() {
        // F_2[x]/(x^2) with C(1) = C(x) = x
        let k = FiniteField::gf(2, 1).unwrap();
        let c = FpMatrix::from_rows(2, 2, &[vec![0, 1], vec![0, 1]]);
        let b = Block::standard(k.clone(), 2, c).unwrap();
        let m = CartierModule::new(2, 1, vec![b]).unwrap();
        assert!(validate_cartier(&m).ok);
        // C(1) = 1 breaks x·C(1) = C(x^2) = 0
        let bad = Block::standard(k, 2, FpMatrix::from_rows(2, 2, &[vec![1, 0], vec![0, 0]])).unwrap();
        let rep = validate_cartier(&CartierModule::new(2, 1, vec![bad]).unwrap());
        assert_eq!(rep.violation.unwrap().generator, "x");
        assert_eq!(is_nilpotent(&m).stable_dim, 1);
        assert_eq!(simple_factors(&m), Err(Error::NonReduced(0)));
    }
}
