//! Bounded search for `a·u = b·v ≠ 0`.
//!
//! The coefficient of `F^l` in `a·u` is `Σ a_{l-j} u_j^{q^{l-j}}`. Raising
//! the `l`-th equation to the power `q^{L-l}` makes it linear in
//! `U_j = u_j^{q^{L-j}}`, so the search becomes a linear system over `k`
//! with the side condition `U_j ∈ k^{q^{L-j}}`. Over a perfect field that
//! condition is empty. Otherwise it is enforced by repeatedly writing each
//! constrained unknown as a `q`-th power and splitting every equation along
//! a basis of `k` over `k^q`.

use crate::error::{Error, Result};
use crate::fields::Ring;
use crate::linalg::{kernel_over, rref_over};
use crate::skew::{SkewPoly, SkewRing};

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome<E> {
    /// `a·u = b·v ≠ 0` with `deg u, deg v ≤ degree`, the least such bound.
    Found {
        u: SkewPoly<E>,
        v: SkewPoly<E>,
        degree: usize,
    },
    /// No solution with `deg u, deg v ≤ maxdeg`.
    NotFound,
}

impl<E> SearchOutcome<E> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

/// Finds the common right multiple of least degree bound, up to `maxdeg`.
pub fn common_right_multiple_search<R: Ring>(
    sr: &SkewRing<R>,
    a: &SkewPoly<R::Elem>,
    b: &SkewPoly<R::Elem>,
    maxdeg: usize,
) -> Result<SearchOutcome<R::Elem>> {
    let k = sr.base();
    if !k.is_field() {
        return Err(Error::NotAField);
    }
    let (Some(da), Some(db)) = (a.degree().finite(), b.degree().finite()) else {
        return Ok(SearchOutcome::NotFound);
    };
    for m in 0..=maxdeg {
        if let Some((u, v)) = solve_at(sr, a, b, da, db, m)? {
            if u.is_zero() || sr.mul(a, &u) != sr.mul(b, &v) {
                return Err(Error::Internal("common multiple check failed".into()));
            }
            let (u, v) = if k.is_perfect() {
                let c = sr.right_normalizer(&u)?;
                (sr.scale_right(&u, &c), sr.scale_right(&v, &c))
            } else {
                (u, v)
            };
            return Ok(SearchOutcome::Found { u, v, degree: m });
        }
    }
    Ok(SearchOutcome::NotFound)
}

fn solve_at<R: Ring>(
    sr: &SkewRing<R>,
    a: &SkewPoly<R::Elem>,
    b: &SkewPoly<R::Elem>,
    da: usize,
    db: usize,
    m: usize,
) -> Result<Option<(SkewPoly<R::Elem>, SkewPoly<R::Elem>)>> {
    let k = sr.base();
    let top = da.max(db) + m;
    let nvars = 2 * (m + 1);
    // columns 0..=m are U_j, m+1..2m+1 are V_j
    let mut rows = Vec::with_capacity(top + 1);
    for l in 0..=top {
        let mut row = vec![k.zero(); nvars];
        for j in 0..=m.min(l) {
            let i = l - j;
            if i <= da {
                row[j] = k.frobenius_iter(&sr.coeff(a, i), top - l);
            }
            if i <= db {
                row[m + 1 + j] = k.neg(&k.frobenius_iter(&sr.coeff(b, i), top - l));
            }
        }
        if row.iter().any(|x| !k.is_zero(x)) {
            rows.push(row);
        }
    }
    let levels: Vec<usize> = (0..nvars).map(|c| top - (c % (m + 1))).collect();
    let values = if k.is_perfect() {
        kernel_over(k, &rows, nvars).into_iter().next()
    } else {
        peel(k, rows, levels.clone())
    };
    let Some(values) = values else {
        return Ok(None);
    };
    let root = |x: &R::Elem, n: usize| -> Result<R::Elem> {
        if k.is_perfect() {
            k.qth_root_iter(x, n)
        } else {
            (0..n).try_fold(x.clone(), |y, _| root_of_power(k, &y))
        }
    };
    let mut u = Vec::with_capacity(m + 1);
    let mut v = Vec::with_capacity(m + 1);
    for j in 0..=m {
        u.push(root(&values[j], levels[j])?);
        v.push(root(&values[m + 1 + j], levels[m + 1 + j])?);
    }
    Ok(Some((sr.from_coeffs(u), sr.from_coeffs(v))))
}

/// The `q`-th root of an element known to be a `q`-th power.
fn root_of_power<R: Ring>(k: &R, x: &R::Elem) -> Result<R::Elem> {
    let basis = k.frobenius_basis();
    let parts = k.frobenius_decompose(x);
    debug_assert!(k.is_one(&basis[0]));
    if parts[1..].iter().any(|c| !k.is_zero(c)) {
        return Err(Error::Internal("expected a q-th power".into()));
    }
    Ok(parts[0].clone())
}

struct Round<E> {
    prev_vars: usize,
    /// Previous indices of the surviving unknowns, in their new order.
    kept: Vec<usize>,
    /// `X_i = Σ c·X_j` over kept unknowns, for eliminated unconstrained `i`.
    dropped: Vec<(usize, Vec<(usize, E)>)>,
}

/// Nonzero solution of `rows·X = 0` with `X_i ∈ k^{q^{levels[i]}}`.
fn peel<R: Ring>(k: &R, mut rows: Vec<Vec<R::Elem>>, mut levels: Vec<usize>) -> Option<Vec<R::Elem>> {
    let mut history: Vec<Round<R::Elem>> = Vec::new();
    let solution = loop {
        let n = levels.len();
        if n == 0 {
            return None;
        }
        if rows.is_empty() {
            let mut x = vec![k.zero(); n];
            x[0] = k.one();
            break x;
        }
        // unconstrained unknowns first
        let mut perm: Vec<usize> = (0..n).filter(|&i| levels[i] == 0).collect();
        let n_free_level = perm.len();
        perm.extend((0..n).filter(|&i| levels[i] > 0));
        let mut m: Vec<Vec<R::Elem>> = rows
            .iter()
            .map(|r| perm.iter().map(|&i| r[i].clone()).collect())
            .collect();
        let piv = rref_over(k, &mut m);
        if piv.len() == n {
            return None;
        }
        if let Some(fc) = (0..n_free_level).find(|c| !piv.contains(c)) {
            let mut x = vec![k.zero(); n];
            x[perm[fc]] = k.one();
            for (r, &pc) in piv.iter().enumerate() {
                x[perm[pc]] = k.neg(&m[r][fc]);
            }
            break x;
        }
        // every unconstrained unknown is a pivot; solve for it and drop it
        let kept: Vec<usize> = (n_free_level..n).map(|c| perm[c]).collect();
        let new_index = |old: usize| kept.iter().position(|&i| i == old).unwrap();
        let mut dropped = Vec::new();
        let mut rest = Vec::new();
        for (r, &pc) in piv.iter().enumerate() {
            if pc < n_free_level {
                let combo = (n_free_level..n)
                    .filter(|&c| !k.is_zero(&m[r][c]))
                    .map(|c| (new_index(perm[c]), k.neg(&m[r][c])))
                    .collect();
                dropped.push((perm[pc], combo));
            } else {
                rest.push(m[r][n_free_level..].to_vec());
            }
        }
        // X = Y^q; split each equation along the Frobenius basis
        let nb = k.frobenius_basis().len();
        let mut next = Vec::new();
        for row in &rest {
            let parts: Vec<Vec<R::Elem>> = row.iter().map(|c| k.frobenius_decompose(c)).collect();
            for bi in 0..nb {
                let nr: Vec<R::Elem> = parts.iter().map(|p| p[bi].clone()).collect();
                if nr.iter().any(|x| !k.is_zero(x)) {
                    next.push(nr);
                }
            }
        }
        levels = kept.iter().map(|&i| levels[i] - 1).collect();
        rows = next;
        history.push(Round {
            prev_vars: n,
            kept,
            dropped,
        });
    };
    let mut x = solution;
    while let Some(round) = history.pop() {
        let mut prev = vec![k.zero(); round.prev_vars];
        let lifted: Vec<R::Elem> = x.iter().map(|y| k.frobenius(y)).collect();
        for (ni, &old) in round.kept.iter().enumerate() {
            prev[old] = lifted[ni].clone();
        }
        for (old, combo) in &round.dropped {
            prev[*old] = combo
                .iter()
                .fold(k.zero(), |acc, (ni, c)| k.add(&acc, &k.mul(c, &lifted[*ni])));
        }
        x = prev;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, RatFunc};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ore_fails_for_f_and_tf() {
        let k = RatFunc::new(FiniteField::gf(2, 1).unwrap());
        let sr = SkewRing::new(k.clone());
        let a = sr.f_pow(1);
        let b = sr.monomial(k.variable(), 1);
        for maxdeg in [0, 3, 8] {
            assert_eq!(
                common_right_multiple_search(&sr, &a, &b, maxdeg).unwrap(),
                SearchOutcome::NotFound
            );
        }
    }

    #[test]
    fn square_coefficients_do_have_multiples() {
        // F·t = t^2·F
        let k = RatFunc::new(FiniteField::gf(2, 1).unwrap());
        let sr = SkewRing::new(k.clone());
        let t = k.variable();
        let a = sr.f_pow(1);
        let b = sr.monomial(k.mul(&t, &t), 1);
        let out = common_right_multiple_search(&sr, &a, &b, 3).unwrap();
        let SearchOutcome::Found { u, v, degree } = out else {
            panic!("expected a witness");
        };
        assert_eq!(degree, 0);
        assert_eq!(sr.mul(&a, &u), sr.mul(&b, &v));
    }

    #[test]
    fn non_perfect_witness_of_higher_degree() {
        // a = F + t, b = F over F_3(t): u = t^2·F, v = t^2·F + t
        let k = RatFunc::new(FiniteField::gf(3, 1).unwrap());
        let sr = SkewRing::new(k.clone());
        let a = sr.add(&sr.f_pow(1), &sr.constant(k.variable()));
        let b = sr.f_pow(1);
        let out = common_right_multiple_search(&sr, &a, &b, 3).unwrap();
        let SearchOutcome::Found { u, v, degree } = out else {
            panic!("expected a witness");
        };
        assert_eq!(degree, 1);
        assert_eq!(sr.mul(&a, &u), sr.mul(&b, &v));
    }

    #[test]
    fn f_and_f_squared() {
        let sr = SkewRing::new(FiniteField::gf(2, 2).unwrap());
        let out = common_right_multiple_search(&sr, &sr.f_pow(1), &sr.f_pow(2), 2).unwrap();
        assert_eq!(
            out,
            SearchOutcome::Found {
                u: sr.f_pow(1),
                v: sr.one(),
                degree: 1
            }
        );
    }

    #[test]
    fn perfect_fields_always_succeed() {
        let sr = SkewRing::new(FiniteField::gf(2, 2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let a = sr.random_of_degree(&mut rng, 2);
            let b = sr.random_of_degree(&mut rng, 3);
            let out = common_right_multiple_search(&sr, &a, &b, 5).unwrap();
            assert!(out.is_found());
        }
    }
}
