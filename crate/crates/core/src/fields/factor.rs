//! Factorization in `F_{p^r}[x]`, characteristic polynomials and subfield
//! embeddings.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::finite::{FieldElem, FiniteField};
use super::poly::{Poly, PolyRing};
use super::Ring;
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

fn pth_root_elem(k: &FiniteField, a: &FieldElem) -> FieldElem {
    let mut x = a.clone();
    for _ in 1..k.degree() {
        x = k.frobenius_p(&x);
    }
    x
}

/// `g^p mod f` iterated `n` times.
fn frob_p_iter_mod(pr: &PolyRing, g: &Poly, n: usize, f: &Poly) -> Poly {
    let p = pr.field().p() as u128;
    let mut h = g.clone();
    for _ in 0..n {
        h = pr.pow_mod(&h, p, f);
    }
    h
}

/// Square-free decomposition: pairs `(g_i, i)` with `f = lc · ∏ g_i^i`,
/// each `g_i` monic and square-free.
pub fn squarefree(pr: &PolyRing, f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let k = pr.field();
    let p = k.p() as usize;
    let f = pr.monic(f);
    let mut c = pr.gcd(&f, &pr.derivative(&f));
    let mut w = pr.div_exact(&f, &c).unwrap();
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = pr.gcd(&w, &c);
        let fac = pr.div_exact(&w, &y).unwrap();
        if fac.degree() != Some(0) {
            out.push((fac, i));
        }
        w = y;
        c = pr.div_exact(&c, &w).unwrap();
        i += 1;
    }
    if c.degree() != Some(0) {
        // c is a p-th power
        let root = pr.from_coeffs(
            c.coeffs()
                .iter()
                .step_by(p)
                .map(|a| pth_root_elem(k, a))
                .collect(),
        );
        for (g, m) in squarefree(pr, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial: pairs
/// `(h_d, d)` where `h_d` is the product of all irreducible factors of
/// degree `d`.
pub fn distinct_degree(pr: &PolyRing, f: &Poly) -> Vec<(Poly, usize)> {
    let r = pr.field().degree();
    let mut out = Vec::new();
    let mut f = pr.monic(f);
    let x = pr.variable();
    let mut h = x.clone();
    let mut d = 1;
    while f.degree().unwrap_or(0) >= 2 * d {
        h = frob_p_iter_mod(pr, &h, r, &f);
        let g = pr.gcd(&pr.sub(&h, &x), &f);
        if g.degree() != Some(0) {
            f = pr.div_exact(&f, &g).unwrap();
            h = pr.rem(&h, &f).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = f.degree().filter(|&n| n > 0) {
        out.push((f, n));
    }
    out
}

/// Splits a monic product of distinct irreducibles of degree `d`.
pub fn equal_degree(pr: &PolyRing, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let k = pr.field();
    let p = k.p();
    let rounds = k.degree() * d;
    loop {
        let a = pr.rem(&pr.random_of_degree(rng, n - 1), f).unwrap();
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace to F_2
            let mut acc = pr.zero();
            let mut cur = a.clone();
            for _ in 0..rounds {
                acc = pr.add(&acc, &cur);
                cur = pr.mul_mod(&cur, &cur, f);
            }
            acc
        } else {
            // a^{(p^{rd}-1)/2} = (∏ a^{p^i})^{(p-1)/2}
            let mut norm = pr.one();
            let mut cur = a.clone();
            for _ in 0..rounds {
                norm = pr.mul_mod(&norm, &cur, f);
                cur = pr.pow_mod(&cur, p as u128, f);
            }
            let s = pr.pow_mod(&norm, ((p - 1) / 2) as u128, f);
            pr.sub(&s, &pr.one())
        };
        let g = pr.gcd(&b, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = pr.div_exact(f, &g).unwrap();
            let mut out = equal_degree(pr, &g, d, rng);
            out.extend(equal_degree(pr, &h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by `(degree, coefficients)`.
pub fn factor(pr: &PolyRing, f: &Poly) -> Vec<(Poly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (g, m) in squarefree(pr, f) {
        for (h, d) in distinct_degree(pr, &g) {
            for irr in equal_degree(pr, &h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));
    out
}

pub fn is_irreducible(pr: &PolyRing, f: &Poly) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return false;
    }
    let fs = factor(pr, f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Roots in the coefficient field, sorted.
pub fn roots(pr: &PolyRing, f: &Poly) -> Vec<FieldElem> {
    let k = pr.field();
    let mut rs: Vec<FieldElem> = factor(pr, f)
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| k.neg(&pr.coeff(&g, 0)))
        .collect();
    rs.sort();
    rs
}

/// `det(x·I − A)` for a square matrix over a finite field, by reduction to
/// Hessenberg form.
pub fn char_poly(pr: &PolyRing, a: &[Vec<FieldElem>]) -> Poly {
    let k = pr.field();
    let n = a.len();
    let mut h: Vec<Vec<FieldElem>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !k.is_zero(&h[i][m - 1])) else {
            continue;
        };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = k.inv(&h[m][m - 1]).unwrap();
        for i in m + 1..n {
            let u = k.mul(&h[i][m - 1], &inv);
            if k.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let t = k.mul(&u, &h[m][j]);
                h[i][j] = k.sub(&h[i][j], &t);
            }
            for row in h.iter_mut() {
                let t = k.mul(&u, &row[i]);
                row[m] = k.add(&row[m], &t);
            }
        }
    }
    let x = pr.variable();
    let mut ps: Vec<Poly> = vec![pr.one()];
    for m in 0..n {
        let mut next = pr.mul(&pr.sub(&x, &pr.constant(h[m][m].clone())), &ps[m]);
        let mut prod = k.one();
        for i in (0..m).rev() {
            prod = k.mul(&prod, &h[i + 1][i]);
            let c = k.mul(&h[i][m], &prod);
            next = pr.sub(&next, &pr.scale(&ps[i], &c));
        }
        ps.push(next);
    }
    ps.pop().unwrap()
}

/// An embedding `small ↪ big` of finite fields of the same characteristic,
/// sending `w_small` to the least root of its modulus in `big`.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    small: FiniteField,
    big: FiniteField,
    /// Powers `θ^i` for `i < [small : F_p]`.
    powers: Vec<FieldElem>,
    coords: FpMatrix,
}

impl SubfieldEmbedding {
    pub fn new(small: &FiniteField, big: &FiniteField) -> Result<Self> {
        if small.p() != big.p() || !big.degree().is_multiple_of(small.degree()) {
            return Err(Error::InvalidField(
                "no embedding between these fields".into(),
            ));
        }
        let pr = PolyRing::new(big.clone());
        let m = pr.from_coeffs(
            small
                .spec()
                .modulus()
                .iter()
                .map(|&c| big.from_prime(c))
                .collect(),
        );
        let theta = roots(&pr, &m)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("modulus has no root in the larger field".into()))?;
        let powers: Vec<FieldElem> = (0..small.degree())
            .scan(big.one(), |cur, _| {
                let out = cur.clone();
                *cur = big.mul(cur, &theta);
                Some(out)
            })
            .collect();
        let rows: Vec<Vec<u32>> = powers.iter().map(|e| e.coeffs().to_vec()).collect();
        let coords = FpMatrix::from_rows(big.p(), big.degree(), &rows);
        Ok(SubfieldEmbedding {
            small: small.clone(),
            big: big.clone(),
            powers,
            coords,
        })
    }

    pub fn embed(&self, a: &FieldElem) -> FieldElem {
        a.coeffs()
            .iter()
            .zip(&self.powers)
            .fold(self.big.zero(), |acc, (&c, t)| {
                self.big.add(&acc, &self.big.mul(&self.big.from_prime(c), t))
            })
    }

    /// Preimage of `a`, if it lies in the image.
    pub fn restrict(&self, a: &FieldElem) -> Option<FieldElem> {
        self.coords
            .solve_left(a.coeffs())
            .map(|c| self.small.from_coeffs(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(pr: &PolyRing, f: &Poly) -> bool {
        // no monic factor of degree 1..=deg/2
        let n = f.degree().unwrap();
        let k = pr.field();
        let elems: Vec<FieldElem> = k.elements().collect();
        for d in 1..=n / 2 {
            let total = elems.len().pow(d as u32);
            for idx in 0..total {
                let mut c = Vec::with_capacity(d + 1);
                let mut t = idx;
                for _ in 0..d {
                    c.push(elems[t % elems.len()].clone());
                    t /= elems.len();
                }
                c.push(k.one());
                let g = pr.from_coeffs(c);
                if pr.rem(f, &g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factorization_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, r) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let pr = PolyRing::new(FiniteField::gf(p, r).unwrap());
            for _ in 0..40 {
                let f = pr.random_of_degree(&mut rng, 7);
                if f.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let fs = factor(&pr, &f);
                let prod = fs.iter().fold(pr.one(), |acc, (g, m)| {
                    pr.mul(&acc, &pr.pow(g, *m as u64))
                });
                assert_eq!(prod, pr.monic(&f));
                for (g, _) in &fs {
                    assert!(brute_irreducible(&pr, g), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn repeated_factors_in_char_p() {
        let pr = PolyRing::new(FiniteField::gf(2, 1).unwrap());
        // (x+1)^4 · x^2
        let f = pr.mul(&pr.pow(&pr.from_ints(&[1, 1]), 4), &pr.from_ints(&[0, 0, 1]));
        let fs = factor(&pr, &f);
        assert_eq!(fs, vec![(pr.from_ints(&[0, 1]), 2), (pr.from_ints(&[1, 1]), 4)]);
    }

    #[test]
    fn char_poly_of_companion() {
        let k = FiniteField::gf(2, 1).unwrap();
        let pr = PolyRing::new(k.clone());
        // companion of x^3+x+1
        let e = |v: i64| k.from_int(v);
        let a = vec![
            vec![e(0), e(1), e(0)],
            vec![e(0), e(0), e(1)],
            vec![e(1), e(1), e(0)],
        ];
        assert_eq!(char_poly(&pr, &a), pr.from_ints(&[1, 1, 0, 1]));
    }

    #[test]
    fn char_poly_matches_determinant_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = FiniteField::gf(3, 1).unwrap();
        let pr = PolyRing::new(k.clone());
        for _ in 0..50 {
            let m = FpMatrix::random(3, 4, 4, &mut rng);
            let a: Vec<Vec<FieldElem>> = m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|&x| k.from_prime(x)).collect())
                .collect();
            let cp = char_poly(&pr, &a);
            // evaluate at each scalar c: det(cI - A)
            for c in 0..3u32 {
                let shifted = FpMatrix::identity(3, 4).scale(c).sub(&m);
                assert_eq!(k.as_prime(&pr.eval(&cp, &k.from_prime(c))), Some(shifted.det()));
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = FiniteField::gf(2, 2).unwrap();
        let big = FiniteField::gf(2, 4).unwrap();
        let emb = SubfieldEmbedding::new(&small, &big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(
                    emb.embed(&small.mul(&a, &b)),
                    big.mul(&emb.embed(&a), &emb.embed(&b))
                );
            }
            assert_eq!(emb.restrict(&emb.embed(&a)), Some(a));
        }
        assert!(emb.restrict(&big.generator()).is_none());
    }
}
