//! The twisted Koszul sequence `0 → Ñ[X] →ψ N[X] →φ N → 0`.
//!
//! With `N[X] ≅ k[F]^n` on a `k`-basis `e_1, …, e_n`, `ψ(e_j) = e_j X − e_j F`
//! has coordinates `Ψ_{lj} = F·δ_{lj} − c_{lj}` and `φ(Σ e_l h_l) = Σ e_l·h_l`.

use serde::Serialize;

use super::FModule;
use crate::error::{Error, Result};
use crate::fields::{FieldElem, FiniteField, Ring};
use crate::linalg::{Echelon, FpMatrix};
use crate::skew::{SkewPoly, SkewRing};

#[derive(Debug, Clone)]
pub struct KoszulPresentation {
    pub module: FModule,
    /// `k`-basis of `N` as `F_p` vectors.
    pub basis: Vec<Vec<u32>>,
    /// `e_j·F = Σ_l e_l c[l][j]`.
    pub c: Vec<Vec<FieldElem>>,
    /// `ψ(e_j) = Σ_l e_l psi[l][j]`.
    pub psi: Vec<Vec<SkewPoly<FieldElem>>>,
    pub ring: SkewRing<FiniteField>,
}

impl KoszulPresentation {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `φ(Σ_l e_l h_l)`.
    pub fn phi(&self, h: &[SkewPoly<FieldElem>]) -> Vec<u32> {
        let p = self.module.field().p();
        let mut out = vec![0u32; self.module.dim()];
        for (e, hl) in self.basis.iter().zip(h) {
            for (o, x) in out.iter_mut().zip(self.module.act_poly(e, hl)) {
                *o = crate::fields::prime::add(*o, x, p);
            }
        }
        out
    }

    /// Column `j` of the ψ-matrix.
    pub fn psi_column(&self, j: usize) -> Vec<SkewPoly<FieldElem>> {
        self.psi.iter().map(|row| row[j].clone()).collect()
    }

    /// Whether `φ(ψ(e_j)) = 0` for every generator.
    pub fn composes_to_zero(&self) -> bool {
        (0..self.rank()).all(|j| self.phi(&self.psi_column(j)).iter().all(|&x| x == 0))
    }
}

pub fn koszul_presentation(n: &FModule) -> Result<KoszulPresentation> {
    let (basis, c) = n.c_matrix();
    let ring = SkewRing::new(n.field().clone());
    let rank = basis.len();
    let psi = (0..rank)
        .map(|l| {
            (0..rank)
                .map(|j| {
                    let delta = if l == j { ring.f_pow(1) } else { ring.zero() };
                    ring.sub(&delta, &ring.constant(c[l][j].clone()))
                })
                .collect()
        })
        .collect();
    let k = KoszulPresentation {
        module: n.clone(),
        basis,
        c,
        psi,
        ring,
    };
    if !k.composes_to_zero() {
        return Err(Error::Internal("φ∘ψ ≠ 0 on generators".into()));
    }
    Ok(k)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeReport {
    pub degree: usize,
    /// `dim Ñ[X]_{≤d-1}`.
    pub source_dim: usize,
    pub im_psi_dim: usize,
    pub im_psi_increment: usize,
    /// `dim N[X]_{≤d}`.
    pub middle_dim: usize,
    pub ker_phi_dim: usize,
    pub psi_injective: bool,
    pub phi_surjective: bool,
    pub composes_to_zero: bool,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExactnessReport {
    pub exact: bool,
    pub first_failure: Option<usize>,
    pub degrees: Vec<DegreeReport>,
}

/// Checks exactness of the sequence truncated at `X`-degree `≤ bound`.
///
/// `ψ` raises degree by one, so `Ñ[X]_{≤d-1}` is compared with
/// `ker φ ∩ N[X]_{≤d}` for each `1 ≤ d ≤ bound`.
pub fn check_exactness(k: &KoszulPresentation, bound: usize) -> Result<ExactnessReport> {
    if bound < 1 {
        return Err(Error::BoundTooSmall);
    }
    let field = k.module.field();
    let p = field.p();
    let r = field.degree();
    let n = k.rank();
    let total = k.module.dim();
    let width = bound + 1;
    // coordinate of e_l (w^a F^i) in N[X]_{≤bound}
    let index = |l: usize, i: usize, a: usize| (l * width + i) * r + a;
    let ambient = n * width * r;
    let mut phi_rows = vec![vec![0u32; total]; ambient];
    let mut w_pows = vec![field.one()];
    for a in 1..r {
        w_pows.push(field.mul(&w_pows[a - 1], &field.generator()));
    }
    for l in 0..n {
        for i in 0..width {
            for (a, wa) in w_pows.iter().enumerate() {
                phi_rows[index(l, i, a)] = k.module.act_poly(&k.basis[l], &k.ring.monomial(wa.clone(), i));
            }
        }
    }
    let phi_mat = FpMatrix::from_rows(p, total, &phi_rows);
    let mut im = Echelon::new(p, ambient);
    let mut phi_img = Echelon::new(p, total);
    for l in 0..n {
        for a in 0..r {
            phi_img.insert(&phi_rows[index(l, 0, a)]);
        }
    }
    let mut degrees = Vec::new();
    let mut first_failure = None;
    let mut injective_so_far = true;
    let mut zero_so_far = true;
    for d in 1..=bound {
        let before = im.dim();
        for j in 0..n {
            let col = k.psi_column(j);
            for wa in &w_pows {
                let h = k.ring.monomial(wa.clone(), d - 1);
                let mut v = vec![0u32; ambient];
                let mut fits = true;
                for (l, entry) in col.iter().enumerate() {
                    for (i, c) in k.ring.mul(entry, &h).terms() {
                        if i > bound {
                            fits = false;
                            continue;
                        }
                        for (b, &x) in c.coeffs().iter().enumerate() {
                            v[index(l, i, b)] = x;
                        }
                    }
                }
                if !fits || !im.insert(&v) {
                    injective_so_far = false;
                }
                if !fits || phi_mat.vec_mul(&v).iter().any(|&x| x != 0) {
                    zero_so_far = false;
                }
            }
        }
        for l in 0..n {
            for a in 0..r {
                phi_img.insert(&phi_rows[index(l, d, a)]);
            }
        }
        let middle_dim = n * (d + 1) * r;
        let ker_phi_dim = middle_dim - phi_img.dim();
        let phi_surjective = phi_img.dim() == total;
        let exact = injective_so_far && zero_so_far && phi_surjective && im.dim() == ker_phi_dim;
        if !exact && first_failure.is_none() {
            first_failure = Some(d);
        }
        degrees.push(DegreeReport {
            degree: d,
            source_dim: n * d * r,
            im_psi_dim: im.dim(),
            im_psi_increment: im.dim() - before,
            middle_dim,
            ker_phi_dim,
            psi_injective: injective_so_far,
            phi_surjective,
            composes_to_zero: zero_so_far,
            exact,
        });
    }
    Ok(ExactnessReport {
        exact: first_failure.is_none(),
        first_failure,
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn module(p: u32, r: u32, c: &[&[i64]]) -> FModule {
        let k = FiniteField::gf(p, r).unwrap();
        let c: Vec<Vec<FieldElem>> = c
            .iter()
            .map(|row| row.iter().map(|&x| k.from_int(x)).collect())
            .collect();
        FModule::from_k_matrix(k, &c).unwrap()
    }

    #[test]
    fn one_dimensional_presentations() {
        let kp = koszul_presentation(&module(2, 1, &[&[0]])).unwrap();
        assert_eq!(kp.ring.format(&kp.psi[0][0]), "F");
        let rep = check_exactness(&kp, 4).unwrap();
        assert!(rep.exact);
        let inc: Vec<usize> = rep.degrees.iter().map(|d| d.im_psi_increment).collect();
        assert_eq!(inc, vec![1, 1, 1, 1]);

        let kp = koszul_presentation(&module(3, 1, &[&[1]])).unwrap();
        assert_eq!(kp.ring.format(&kp.psi[0][0]), "F + 2");
    }

    #[test]
    fn nilpotent_two_dimensional() {
        let kp = koszul_presentation(&module(2, 1, &[&[0, 1], &[0, 0]])).unwrap();
        let expected = |l: usize, j: usize| {
            let fi = if l == j { kp.ring.f_pow(1) } else { kp.ring.zero() };
            let c = if (l, j) == (1, 0) { kp.ring.one() } else { kp.ring.zero() };
            kp.ring.sub(&fi, &c)
        };
        for l in 0..2 {
            for j in 0..2 {
                assert_eq!(kp.psi[l][j], expected(l, j));
            }
        }
        assert!(check_exactness(&kp, 6).unwrap().exact);
    }

    #[test]
    fn corrupted_psi_fails_at_degree_one() {
        let mut kp = koszul_presentation(&module(2, 1, &[&[0]])).unwrap();
        kp.psi[0][0] = kp.ring.add(&kp.psi[0][0], &kp.ring.one());
        let rep = check_exactness(&kp, 4).unwrap();
        assert!(!rep.exact);
        assert_eq!(rep.first_failure, Some(1));
        assert_eq!(check_exactness(&kp, 0).unwrap_err(), Error::BoundTooSmall);
    }

    #[test]
    fn random_modules_over_extensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (p, r) in [(2, 2), (3, 2)] {
            let k = FiniteField::gf(p, r).unwrap();
            for n in 1..=3 {
                let m = FModule::random(&k, n, &mut rng);
                let kp = koszul_presentation(&m).unwrap();
                assert!(check_exactness(&kp, 2 * n + 4).unwrap().exact);
            }
        }
    }
}
