//! Rank over the skew field `D`, the pushforward defect at a point, and the
//! action of `1 − F_*` on the Chow groups of projective space.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::cartier::CartierModule;
use crate::error::{Error, Result};
use crate::fields::prime::prime_power;
use crate::fields::Ring;
use crate::fmodules::FModule;
use crate::ore::SkewField;
use crate::skew::{SkewPoly, SkewRing};

/// `k[F]^n` modulo the right submodule spanned by the relation vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DPresentation<E> {
    pub generators: usize,
    pub relations: Vec<Vec<SkewPoly<E>>>,
}

impl<E: Clone> DPresentation<E> {
    pub fn free(generators: usize) -> Self {
        DPresentation {
            generators,
            relations: Vec::new(),
        }
    }
}

impl DPresentation<crate::fields::FieldElem> {
    /// The Koszul presentation of a finite-dimensional module: relations
    /// `ψ(e_j) = e_j·F − Σ_l e_l c_{lj}`.
    pub fn of_module(n: &FModule) -> Result<Self> {
        let k = crate::fmodules::koszul_presentation(n)?;
        Ok(DPresentation {
            generators: k.rank(),
            relations: (0..k.rank()).map(|j| k.psi_column(j)).collect(),
        })
    }
}

/// `n − rank_D(relations)`, by Gaussian elimination over `D`.
pub fn qd_rank<R: Ring>(ring: &SkewRing<R>, pres: &DPresentation<R::Elem>) -> Result<usize> {
    let d = SkewField::new(ring.base().clone())?;
    let n = pres.generators;
    if pres.relations.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParams("relation length differs from generator count".into()));
    }
    let mut rows: Vec<Vec<_>> = pres
        .relations
        .iter()
        .map(|r| r.iter().map(|a| d.from_poly(a.clone())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = d.d_inv(&rows[rank][col])?;
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            // v_i ← v_i − v_rank·(a^{-1}·b)
            let factor = d.d_mul(&inv, &rows[i][col])?;
            for j in col..n {
                let t = d.d_mul(&rows[rank][j], &factor)?;
                rows[i][j] = d.d_sub(&rows[i][j], &t)?;
            }
        }
        rank += 1;
    }
    Ok(n - rank)
}

/// Random elementary operations over `k[F]`: adding a right multiple of one
/// relation to another, swapping relations, and changing the basis of
/// `k[F]^n` by `x_l ← x_l + h·x_m`.
pub fn scramble<R: Ring, G: Rng + ?Sized>(
    ring: &SkewRing<R>,
    pres: &DPresentation<R::Elem>,
    steps: usize,
    rng: &mut G,
) -> DPresentation<R::Elem> {
    let mut out = pres.clone();
    let n = out.generators;
    let m = out.relations.len();
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 if m >= 2 => {
                let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
                if i != j {
                    let h = ring.random(rng, 2);
                    let add: Vec<_> = out.relations[j].iter().map(|a| ring.mul(a, &h)).collect();
                    for (a, b) in out.relations[i].iter_mut().zip(add) {
                        *a = ring.add(a, &b);
                    }
                }
            }
            1 if m >= 2 => {
                let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
                out.relations.swap(i, j);
            }
            _ if n >= 2 => {
                let (l, k) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if l != k {
                    let h = ring.random(rng, 2);
                    for r in out.relations.iter_mut() {
                        let t = ring.mul(&h, &r[k]);
                        r[l] = ring.add(&r[l], &t);
                    }
                }
            }
            _ => {}
        }
    }
    out
}

/// `dim_{F_p} U(M) − dim_{F_p} F_*U(M)` for a module on a single point.
///
/// `F_*` keeps the additive group and lets scalars act through `r ↦ r^q`, so
/// the two dimensions agree and the class of `(1 − F_*)∘U` vanishes.
pub fn k0_pushforward_defect(m: &CartierModule) -> Result<i64> {
    if m.blocks.len() != 1 {
        return Err(Error::MultiplePoints(m.blocks.len()));
    }
    let b = &m.blocks[0];
    let pushed = b.scalar_matrix(&b.field().frobenius(&b.field().generator()));
    if b.dim() > 0 && b.is_reduced() {
        // F_*U(M) is again a vector space over k: the twist is a valid module
        b.as_fmodule()?.twist();
    }
    Ok(b.dim() as i64 - pushed.rows() as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChowDemo {
    pub n: usize,
    pub q: u64,
    /// Diagonal of `1 − F_*` on `⊕_i CH_i(P^n)_Q`: entry `i` is `1 − q^i`.
    pub diagonal: Vec<String>,
    #[serde(rename = "ker")]
    pub kernel_dim: usize,
    #[serde(rename = "coker")]
    pub cokernel_dim: usize,
}

fn rank_over_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &rows[rank][c];
            for j in c..cols {
                let t = &rows[rank][j] * &f;
                rows[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// `F_*` acts on `CH_i(P^n)_Q` as `q^i`; returns the matrix of `1 − F_*`
/// and its kernel and cokernel dimensions over `Q`.
pub fn chow_frobenius_demo(n: usize, q: u64) -> Result<ChowDemo> {
    if q < 2 || prime_power(q).is_none() {
        return Err(Error::InvalidParams(format!("q = {q} is not a prime power")));
    }
    if n > 64 {
        return Err(Error::InvalidParams("n is limited to 64".into()));
    }
    let qb = BigInt::from(q);
    let diag: Vec<BigInt> = (0..=n).map(|i| BigInt::one() - Pow::pow(&qb, i as u32)).collect();
    let rows: Vec<Vec<BigRational>> = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    if i == j {
                        BigRational::from_integer(diag[i].clone())
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let rank = rank_over_q(rows);
    debug_assert!(diag.iter().skip(1).all(|d| d.is_negative()));
    Ok(ChowDemo {
        n,
        q,
        diagonal: diag.iter().map(ToString::to_string).collect(),
        kernel_dim: n + 1 - rank,
        cokernel_dim: n + 1 - rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, RatFunc};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sr() -> SkewRing<FiniteField> {
        SkewRing::new(FiniteField::gf(2, 2).unwrap())
    }

    #[test]
    fn small_presentations() {
        let sr = sr();
        assert_eq!(qd_rank(&sr, &DPresentation::free(2)).unwrap(), 2);
        let p = DPresentation {
            generators: 1,
            relations: vec![vec![sr.f_pow(1)]],
        };
        assert_eq!(qd_rank(&sr, &p).unwrap(), 0);
        let p = DPresentation {
            generators: 2,
            relations: vec![vec![sr.f_pow(1), sr.one()]],
        };
        assert_eq!(qd_rank(&sr, &p).unwrap(), 1);

        let t = SkewRing::new(RatFunc::new(FiniteField::gf(2, 1).unwrap()));
        assert_eq!(qd_rank(&t, &DPresentation::free(1)), Err(Error::NotPerfect));
    }

    #[test]
    fn scrambles_and_modules() {
        let sr = sr();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let k = sr.base().clone();
        for n in 1..=3 {
            let m = FModule::random(&k, n, &mut rng);
            let p = DPresentation::of_module(&m).unwrap();
            assert_eq!(qd_rank(&sr, &p).unwrap(), 0);
            assert_eq!(qd_rank(&sr, &scramble(&sr, &p, 6, &mut rng)).unwrap(), 0);
        }
        let p = DPresentation {
            generators: 3,
            relations: vec![vec![sr.f_pow(1), sr.one(), sr.zero()]],
        };
        for _ in 0..10 {
            assert_eq!(qd_rank(&sr, &scramble(&sr, &p, 8, &mut rng)).unwrap(), 2);
        }
    }

    #[test]
    fn chow() {
        let d = chow_frobenius_demo(2, 3).unwrap();
        assert_eq!(d.diagonal, vec!["0", "-2", "-8"]);
        assert_eq!((d.kernel_dim, d.cokernel_dim), (1, 1));
        assert_eq!(chow_frobenius_demo(0, 5).unwrap().diagonal, vec!["0"]);
        assert!(matches!(chow_frobenius_demo(2, 6), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn pushforward() {
        use crate::cartier::{delta_crystal, PointSet};
        let pts = PointSet::rational(2, 1, 2);
        let d = delta_crystal(&pts, 0).unwrap();
        assert_eq!(k0_pushforward_defect(&d), Err(Error::MultiplePoints(2)));
        let one = delta_crystal(&PointSet::rational(2, 2, 1), 0).unwrap();
        assert_eq!(k0_pushforward_defect(&one).unwrap(), 0);
    }
}
