//! Degree filtration `I^{≤d} = I ∩ k[F]_{≤d}` of a right ideal, the
//! cokernel of `Ĩ →·F I`, and the reduction `α = α̂·F + γ`.
//!
//! Everything is `F_p`-linear algebra on truncations of `k[F]`. A polynomial
//! of degree `≤ d` has coordinates `i·r + a` for the coefficient of `w^a F^i`.

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FiniteField, Ring};
use crate::linalg::{Echelon, FpMatrix};
use crate::skew::{SkewPoly, SkewRing};

type Elem = SkewPoly<FieldElem>;

/// The right ideal `Σ g_i·k[F]`.
#[derive(Debug, Clone)]
pub struct FilteredIdeal {
    ring: SkewRing<FiniteField>,
    gens: Vec<Elem>,
}

impl FilteredIdeal {
    /// Zero generators are dropped.
    pub fn new(ring: &SkewRing<FiniteField>, gens: &[Elem]) -> Self {
        FilteredIdeal {
            ring: ring.clone(),
            gens: gens.iter().filter(|g| !g.is_zero()).cloned().collect(),
        }
    }

    pub fn ring(&self) -> &SkewRing<FiniteField> {
        &self.ring
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// `I·F`, generated by the `g_i·F`.
    pub fn times_f(&self) -> FilteredIdeal {
        let f = self.ring.f_pow(1);
        FilteredIdeal {
            ring: self.ring.clone(),
            gens: self.gens.iter().map(|g| self.ring.mul(g, &f)).collect(),
        }
    }

    fn deg_sum(&self) -> usize {
        self.gens.iter().filter_map(|g| g.degree().finite()).sum()
    }

    /// `F_p`-basis of `I^{≤d}`.
    ///
    /// Products `g_i·w^a F^j` are enumerated up to a larger degree `D` so that
    /// cancellation among generators is captured, then the subspace of
    /// degree `≤ d` is read off an echelon form ordered by descending degree.
    pub fn level(&self, d: usize) -> Vec<Elem> {
        if self.is_zero() {
            return Vec::new();
        }
        let k = self.ring.base();
        let r = k.degree();
        let p = k.p();
        let top = d + self.deg_sum();
        let width = (top + 1) * r;
        let w_pows = powers_of_generator(k);
        let mut rows = Vec::new();
        for g in &self.gens {
            let dg = g.degree().finite().unwrap_or(0);
            for j in 0..=top.saturating_sub(dg) {
                if dg + j > top {
                    break;
                }
                for wa in &w_pows {
                    let h = self.ring.mul(g, &self.ring.monomial(wa.clone(), j));
                    let mut v = vec![0u32; width];
                    for (i, c) in h.terms() {
                        for (a, &x) in c.coeffs().iter().enumerate() {
                            v[(top - i) * r + a] = x;
                        }
                    }
                    rows.push(v);
                }
            }
        }
        let m = FpMatrix::from_rows(p, width, &rows);
        let (e, pivots) = m.rref();
        let cut = (top - d) * r;
        pivots
            .iter()
            .enumerate()
            .filter(|(_, &pc)| pc >= cut)
            .map(|(row, _)| {
                let v = e.row(row);
                self.ring.from_terms((0..=d).map(|i| {
                    let base = (top - i) * r;
                    (i, k.from_coeffs(&v[base..base + r]))
                }))
            })
            .collect()
    }

    pub fn level_dim(&self, d: usize) -> usize {
        self.level(d).len()
    }
}

fn powers_of_generator(k: &FiniteField) -> Vec<FieldElem> {
    let mut out = vec![k.one()];
    for a in 1..k.degree() {
        out.push(k.mul(&out[a - 1], &k.generator()));
    }
    out
}

/// Coordinates of `h` in `k[F]_{≤d}`.
fn coords(k: &FiniteField, h: &Elem, d: usize) -> Vec<u32> {
    let r = k.degree();
    let mut v = vec![0u32; (d + 1) * r];
    for (i, c) in h.terms() {
        assert!(i <= d, "element exceeds the truncation degree");
        v[i * r..(i + 1) * r].copy_from_slice(c.coeffs());
    }
    v
}

fn span(k: &FiniteField, elems: &[Elem], d: usize) -> Echelon {
    let mut e = Echelon::new(k.p(), (d + 1) * k.degree());
    for h in elems {
        e.insert(&coords(k, h, d));
    }
    e
}

/// `F_p`-basis of `I^{≤d}` for `I = Σ gens·k[F]`.
pub fn ideal_filtration(ring: &SkewRing<FiniteField>, gens: &[Elem], d: usize) -> Vec<Elem> {
    FilteredIdeal::new(ring, gens).level(d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CokernelDims {
    /// `dim_{F_p} I^{≤d} / I^{≤d-1}·F` for `d = 0..=dbound`.
    pub dims: Vec<usize>,
    /// The value at `dbound`.
    pub stable: usize,
    /// Least `d` after which the dimension no longer changes.
    pub stable_from: usize,
}

/// Dimensions of the graded pieces of `coker(Ĩ →·F I)`.
pub fn cokernel_f_dim(ring: &SkewRing<FiniteField>, gens: &[Elem], dbound: usize) -> Result<CokernelDims> {
    let ideal = FilteredIdeal::new(ring, gens);
    let k = ring.base();
    let f = ring.f_pow(1);
    let mut dims = Vec::with_capacity(dbound + 1);
    let mut prev: Vec<Elem> = Vec::new();
    for d in 0..=dbound {
        let cur = ideal.level(d);
        let shifted: Vec<Elem> = prev.iter().map(|x| ring.mul(x, &f)).collect();
        let sub = span(k, &shifted, d);
        let whole = span(k, &cur, d);
        if shifted.iter().any(|x| !whole.contains(&coords(k, x, d))) {
            return Err(Error::Internal("I^{≤d-1}·F is not inside I^{≤d}".into()));
        }
        dims.push(whole.dim() - sub.dim());
        prev = cur;
    }
    let stable = *dims.last().unwrap_or(&0);
    let stable_from = dims.iter().rposition(|&c| c != stable).map_or(0, |i| i + 1);
    Ok(CokernelDims {
        dims,
        stable,
        stable_from,
    })
}

/// Whether `I·F ∩ I^{≤d} = I^{≤d-1}·F`, compared by dimension with `I·F`
/// enumerated from its own generators.
pub fn reduction_identity_holds(ring: &SkewRing<FiniteField>, gens: &[Elem], d: usize) -> bool {
    let ideal = FilteredIdeal::new(ring, gens);
    let k = ring.base();
    let f = ring.f_pow(1);
    let if_d = span(k, &ideal.times_f().level(d), d);
    let lower: Vec<Elem> = if d == 0 {
        Vec::new()
    } else {
        ideal.level(d - 1).iter().map(|x| ring.mul(x, &f)).collect()
    };
    let lower = span(k, &lower, d);
    // I·F ⊆ I, so the intersection with I^{≤d} is (I·F)^{≤d}
    if_d.dim() == lower.dim() && lower.basis().iter().all(|v| if_d.contains(v))
}

/// `α = α̂·F + γ` with `γ ∈ I^{≤d0}` and `α̂ ∈ I^{≤degree-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStep {
    pub degree: usize,
    pub alpha: Elem,
    pub alpha_hat: Elem,
    pub gamma: Elem,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmertonReduction {
    pub d0: usize,
    /// A right `k`-basis of `I^{≤d0}`, normalized monic.
    pub reduced_gens: Vec<Elem>,
    /// One chain per input generator, reducing it to degree `≤ d0`.
    pub chains: Vec<Vec<ReductionStep>>,
    /// `I = I^{≤d0}·k[F]`, checked by comparing truncations up to `d0 + 4`.
    pub generated: bool,
    /// The monic generator from the Euclidean algorithm agrees.
    pub matches_euclid: bool,
}

impl EmertonReduction {
    pub fn verified(&self) -> bool {
        self.generated && self.matches_euclid
    }
}

/// Least `d0` such that `I^{≤d0}` surjects onto `coker(Ĩ →·F I)`, and the
/// reduction of every generator down to degree `d0`.
pub fn emerton_reduce(ring: &SkewRing<FiniteField>, gens: &[Elem]) -> Result<EmertonReduction> {
    let ideal = FilteredIdeal::new(ring, gens);
    if ideal.is_zero() {
        return Err(Error::EmptyInput);
    }
    let k = ring.base();
    let f = ring.f_pow(1);
    let maxdeg = ideal
        .gens()
        .iter()
        .filter_map(|g| g.degree().finite())
        .max()
        .unwrap_or(0);
    // the image of I^{≤d} in I/IF has dimension c(d); the cokernel itself is
    // reached by degree maxdeg
    let coker = cokernel_f_dim(ring, gens, maxdeg + 1)?;
    let d0 = coker
        .dims
        .iter()
        .position(|&c| c == coker.stable)
        .expect("stable value occurs");
    let base_level = ideal.level(d0);

    let mut chains = Vec::new();
    for g in ideal.gens() {
        let mut chain = Vec::new();
        let mut alpha = g.clone();
        while let Some(d) = alpha.degree().finite().filter(|&d| d > d0) {
            let lower = ideal.level(d - 1);
            let mut cands: Vec<Elem> = base_level.clone();
            cands.extend(lower.iter().map(|x| ring.mul(x, &f)));
            let rows: Vec<Vec<u32>> = cands.iter().map(|x| coords(k, x, d)).collect();
            let m = FpMatrix::from_rows(k.p(), (d + 1) * k.degree(), &rows);
            let x = m
                .solve_left(&coords(k, &alpha, d))
                .ok_or_else(|| Error::Internal(format!("no reduction at degree {d}")))?;
            let comb = |elems: &[Elem], xs: &[u32]| {
                elems.iter().zip(xs).fold(ring.zero(), |acc, (e, &c)| {
                    ring.add(&acc, &ring.scale_left(&k.from_prime(c), e))
                })
            };
            let gamma = comb(&base_level, &x[..base_level.len()]);
            let alpha_hat = comb(&lower, &x[base_level.len()..]);
            if ring.add(&ring.mul(&alpha_hat, &f), &gamma) != alpha {
                return Err(Error::Internal("reduction step does not recombine".into()));
            }
            chain.push(ReductionStep {
                degree: d,
                alpha: alpha.clone(),
                alpha_hat: alpha_hat.clone(),
                gamma,
            });
            alpha = alpha_hat;
        }
        chains.push(chain);
    }

    let reduced_gens = right_k_basis(ring, &base_level)?;
    let reduced = FilteredIdeal::new(ring, &reduced_gens);
    let generated = (0..=d0 + 4).all(|d| {
        let a = span(k, &ideal.level(d), d);
        let b = span(k, &reduced.level(d), d);
        a.dim() == b.dim() && b.basis().iter().all(|v| a.contains(v))
    });
    let euclid = ring.right_ideal_generator(ideal.gens())?;
    let matches_euclid = euclid.degree().finite() == Some(d0) && reduced_gens == vec![euclid];
    Ok(EmertonReduction {
        d0,
        reduced_gens,
        chains,
        generated,
        matches_euclid,
    })
}

/// A minimal subset spanning the same right `k`-space, each made monic.
fn right_k_basis(ring: &SkewRing<FiniteField>, elems: &[Elem]) -> Result<Vec<Elem>> {
    let k = ring.base();
    let d = elems.iter().filter_map(|e| e.degree().finite()).max().unwrap_or(0);
    let w_pows = powers_of_generator(k);
    let mut spanned = Echelon::new(k.p(), (d + 1) * k.degree());
    let mut out = Vec::new();
    let mut sorted = elems.to_vec();
    sorted.sort_by_key(|e| std::cmp::Reverse(e.degree().finite()));
    for e in sorted {
        if spanned.contains(&coords(k, &e, d)) {
            continue;
        }
        for wa in &w_pows {
            spanned.insert(&coords(k, &ring.mul(&e, &ring.constant(wa.clone())), d));
        }
        out.push(ring.monic_right(&e)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(p: u32, r: u32) -> SkewRing<FiniteField> {
        SkewRing::new(FiniteField::gf(p, r).unwrap())
    }

    /// Every `F_p`-combination of products `g_i·w^a F^j` with `j ≤ extra`
    /// that lands in degree `≤ d`, by exhaustive enumeration.
    fn brute_level_dim(sr: &SkewRing<FiniteField>, gens: &[Elem], d: usize, extra: usize) -> usize {
        let k = sr.base();
        let top = d + extra;
        let mut prods = Vec::new();
        for g in gens {
            for j in 0..=extra {
                for wa in powers_of_generator(k) {
                    let h = sr.mul(g, &sr.monomial(wa, j));
                    if h.degree().finite().is_some_and(|e| e <= top) {
                        prods.push(h);
                    }
                }
            }
        }
        assert!(prods.len() <= 14, "oracle too large");
        let p = k.p() as usize;
        let mut found = Echelon::new(k.p(), (d + 1) * k.degree());
        for mut idx in 0..p.pow(prods.len() as u32) {
            let mut acc = sr.zero();
            for h in &prods {
                let c = (idx % p) as u32;
                idx /= p;
                acc = sr.add(&acc, &sr.scale_left(&k.from_prime(c), h));
            }
            if acc.degree().finite().is_none_or(|e| e <= d) {
                found.insert(&coords(k, &acc, d));
            }
        }
        found.dim()
    }

    #[test]
    fn principal_levels() {
        let sr = ring(2, 1);
        let g = sr.f_pow(2);
        let lvl = ideal_filtration(&sr, std::slice::from_ref(&g), 3);
        assert_eq!(lvl.len(), 2);
        let mut degs: Vec<_> = lvl.iter().map(|x| x.degree().finite().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![2, 3]);
        assert_eq!(brute_level_dim(&sr, std::slice::from_ref(&g), 3, 3), 2);
        assert!(ideal_filtration(&sr, &[g], 1).is_empty());

        let sr4 = ring(2, 2);
        assert_eq!(ideal_filtration(&sr4, &[sr4.one()], 0).len(), 2);
    }

    #[test]
    fn cancellation_between_generators() {
        // F + 1 and F generate the unit ideal, visible only after cancelling
        let sr = ring(2, 1);
        let gens = [sr.add(&sr.f_pow(1), &sr.one()), sr.f_pow(1)];
        assert_eq!(ideal_filtration(&sr, &gens, 0), vec![sr.one()]);
        assert_eq!(brute_level_dim(&sr, &gens, 0, 2), 1);
    }

    #[test]
    fn levels_match_enumeration() {
        let sr = ring(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..6 {
            let a = sr.random_of_degree(&mut rng, 2);
            let b = sr.random_of_degree(&mut rng, 1);
            let gens = [a, b];
            for d in 0..3 {
                assert_eq!(
                    ideal_filtration(&sr, &gens, d).len(),
                    brute_level_dim(&sr, &gens, d, 3),
                );
            }
        }
    }

    #[test]
    fn cokernel_dimensions() {
        let sr = ring(2, 1);
        let out = cokernel_f_dim(&sr, &[sr.f_pow(2)], 6).unwrap();
        assert_eq!(out.dims, vec![0, 0, 1, 1, 1, 1, 1]);
        assert_eq!((out.stable, out.stable_from), (1, 2));

        let sr4 = ring(2, 2);
        let out = cokernel_f_dim(&sr4, &[sr4.one()], 4).unwrap();
        assert_eq!(out.dims, vec![2; 5]);

        let out = cokernel_f_dim(&sr4, &[], 3).unwrap();
        assert_eq!(out.dims, vec![0; 4]);
    }

    #[test]
    fn reductions() {
        let sr = ring(2, 1);
        let red = emerton_reduce(&sr, &[sr.f_pow(3), sr.f_pow(2)]).unwrap();
        assert_eq!(red.d0, 2);
        assert_eq!(red.reduced_gens, vec![sr.f_pow(2)]);
        assert!(red.verified());
        assert_eq!(red.chains[0].len(), 1);
        assert_eq!(red.chains[0][0].alpha_hat, sr.f_pow(2));

        let red = emerton_reduce(&sr, &[sr.f_pow(1), sr.add(&sr.f_pow(1), &sr.one())]).unwrap();
        assert_eq!(red.d0, 0);
        assert_eq!(red.reduced_gens, vec![sr.one()]);
        assert!(red.verified());

        let sr9 = ring(3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = sr9.random_monic(&mut rng, 3);
        let red = emerton_reduce(&sr9, std::slice::from_ref(&g)).unwrap();
        assert_eq!(red.d0, 3);
        assert!(red.chains[0].is_empty());
        assert!(red.verified());

        assert_eq!(emerton_reduce(&sr, &[]).unwrap_err(), Error::EmptyInput);
        assert_eq!(emerton_reduce(&sr, &[sr.zero()]).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn reduction_identity_for_random_principal_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (p, r) in [(2, 1), (2, 2), (3, 2)] {
            let sr = ring(p, r);
            for _ in 0..4 {
                let g = sr.random_of_degree(&mut rng, 2);
                for d in 0..=8 {
                    assert!(reduction_identity_holds(&sr, std::slice::from_ref(&g), d));
                }
            }
        }
    }
}
