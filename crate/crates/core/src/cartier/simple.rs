//! Simple constituents and their endomorphism algebras.

use rand::Rng;
use serde::Serialize;

use super::{Block, SimpleFactor};
use crate::error::{Error, Result};
use crate::fields::factor::{char_poly, factor, SubfieldEmbedding};
use crate::fields::{FiniteField, Poly, PolyRing};
use crate::linalg::FpMatrix;

/// `F_p`-basis of the matrices commuting with the scalars and with `C`.
pub fn endomorphism_algebra(b: &Block) -> Vec<FpMatrix> {
    let n = b.dim();
    let p = b.field().p();
    if n == 0 {
        return Vec::new();
    }
    let mut ops = vec![b.act_w().clone(), b.c().clone()];
    ops.extend(b.act_x().cloned());
    // X·A − A·X = 0, unknown X_{ab} in column a·n + b
    let mut rows = Vec::with_capacity(ops.len() * n * n);
    for a in &ops {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![0u32; n * n];
                for k in 0..n {
                    let idx = i * n + k;
                    row[idx] = crate::fields::prime::add(row[idx], a.get(k, j), p);
                    let idx = k * n + j;
                    row[idx] = crate::fields::prime::sub(row[idx], a.get(i, k), p);
                }
                rows.push(row);
            }
        }
    }
    FpMatrix::from_rows(p, n * n, &rows)
        .right_kernel()
        .into_iter()
        .map(|v| FpMatrix::from_rows(p, n, &v.chunks(n).map(<[u32]>::to_vec).collect::<Vec<_>>()))
        .collect()
}

fn eval_prime_poly(f: &Poly, x: &FpMatrix) -> FpMatrix {
    let p = x.p();
    let n = x.rows();
    let mut acc = FpMatrix::zeros(p, n, n);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&FpMatrix::identity(p, n).scale(c.coeffs()[0]));
    }
    acc
}

/// A simple subobject of type `f` inside `b`, which must have `C`
/// bijective on it (for instance a block of the minimal submodule).
///
/// `ker f(C^m)` is semisimple, isomorphic to `S^a`, with endomorphism
/// algebra `M_a(F_{p^{r(Z)}})`. While `a > 1` a random endomorphism has a
/// factor of its characteristic polynomial whose value is singular and
/// nonzero; its kernel is a smaller submodule.
pub fn simple_constituent<G: Rng + ?Sized>(b: &Block, f: &SimpleFactor, rng: &mut G) -> Result<Block> {
    let k = b.field().clone();
    let p = k.p();
    let fq = FiniteField::gf(p, k.spec().base_exp())?;
    let emb = SubfieldEmbedding::new(&fq, &k)?;
    let u = b.untwisted();
    let n = b.dim();
    let mut g = FpMatrix::zeros(p, n, n);
    for c in f.min_poly.coeffs().iter().rev() {
        g = g.mul(&u).add(&b.scalar_matrix(&emb.embed(c)));
    }
    let mut cur = b.restrict(&g.left_kernel());
    if cur.dim() == 0 {
        return Err(Error::InvalidParams("factor does not occur in this block".into()));
    }
    let target = f.endo_field_degree;
    let fp = PolyRing::new(FiniteField::gf(p, 1)?);
    for _ in 0..500 {
        let e = endomorphism_algebra(&cur);
        if e.len() == target {
            return Ok(cur);
        }
        let x = e
            .iter()
            .fold(FpMatrix::zeros(p, cur.dim(), cur.dim()), |acc, m| acc.add(&m.scale(rng.gen_range(0..p))));
        let entries: Vec<Vec<_>> = x
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|&v| fp.field().from_prime(v)).collect())
            .collect();
        let chi = char_poly(&fp, &entries);
        for (h, _) in factor(&fp, &chi) {
            let y = eval_prime_poly(&h, &x);
            if !y.is_zero() && y.det() == 0 {
                cur = cur.restrict(&y.left_kernel());
                break;
            }
        }
    }
    Err(Error::Internal("no simple constituent found".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WedderburnReport {
    /// `dim_{F_p}` of the commutant.
    pub dim: usize,
    pub commutative: bool,
    /// Every nonzero element is invertible; `None` when too large to enumerate.
    pub zero_divisor_free: Option<bool>,
}

impl WedderburnReport {
    pub fn is_field_of_degree(&self, r: usize) -> bool {
        self.dim == r && self.commutative && self.zero_divisor_free == Some(true)
    }
}

/// Checks by enumeration that the commutant of `b` is a field.
pub fn wedderburn_check(b: &Block) -> WedderburnReport {
    let e = endomorphism_algebra(b);
    let p = b.field().p() as u64;
    let commutative = e
        .iter()
        .enumerate()
        .all(|(i, x)| e[i + 1..].iter().all(|y| x.mul(y) == y.mul(x)));
    let total = p.checked_pow(e.len() as u32).filter(|&t| t <= 1 << 16);
    let zero_divisor_free = total.map(|total| {
        (1..total).all(|mut idx| {
            let n = b.dim();
            let mut m = FpMatrix::zeros(p as u32, n, n);
            for basis in &e {
                m = m.add(&basis.scale((idx % p) as u32));
                idx /= p;
            }
            m.det() != 0
        })
    });
    WedderburnReport {
        dim: e.len(),
        commutative,
        zero_divisor_free,
    }
}
