//! Exact linear algebra: dense matrices over `F_p` and Gaussian elimination
//! over any field implementing [`Ring`].
//!
//! Matrices act on row vectors from the right (`v ↦ v·M`), matching the
//! convention used for right module actions throughout the crate.

use std::fmt;

use rand::Rng;

use crate::fields::prime;
use crate::fields::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.rows).map(|i| self.row(i)).collect();
        write!(f, "FpMatrix(p={}, {:?})", self.p, rows)
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1 % p);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn random<G: Rng + ?Sized>(p: u32, rows: usize, cols: usize, rng: &mut G) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: (0..rows * cols).map(|_| rng.gen_range(0..p)).collect(),
        }
    }

    pub fn random_invertible<G: Rng + ?Sized>(p: u32, n: usize, rng: &mut G) -> Self {
        loop {
            let m = Self::random(p, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = (*d + a * b as u64) % p;
                }
            }
        }
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| prime::add(a, b, self.p))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| prime::sub(a, b, self.p))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| prime::mul(a, c, self.p)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.p, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (d, &b) in out.iter_mut().zip(self.row(i)) {
                *d = (*d + a as u64 * b as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = prime::inv(m.get(r, c), p);
            for j in c..m.cols {
                let v = prime::mul(m.get(r, j), inv, p);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if f != 0 {
                        for j in c..m.cols {
                            let v = prime::sub(m.get(i, j), prime::mul(f, m.get(r, j), p), p);
                            m.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the row space (nonzero rows of the RREF).
    pub fn row_space(&self) -> Vec<Vec<u32>> {
        let (m, piv) = self.rref();
        (0..piv.len()).map(|i| m.row(i).to_vec()).collect()
    }

    /// Basis of `{x : M·x = 0}` (column vectors).
    pub fn right_kernel(&self) -> Vec<Vec<u32>> {
        let (m, piv) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (i, &pc) in piv.iter().enumerate() {
                    v[pc] = prime::neg(m.get(i, f), p);
                }
                v
            })
            .collect()
    }

    /// Basis of `{v : v·M = 0}` (row vectors).
    pub fn left_kernel(&self) -> Vec<Vec<u32>> {
        self.transpose().right_kernel()
    }

    /// Some `x` with `x·M = b`, if one exists.
    pub fn solve_left(&self, b: &[u32]) -> Option<Vec<u32>> {
        // transpose: M^T x^T = b^T; augment and reduce
        let t = self.transpose();
        let mut aug = FpMatrix::zeros(self.p, t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug.set(i, j, t.get(i, j));
            }
            aug.set(i, t.cols, b[i] % self.p);
        }
        let (m, piv) = aug.rref();
        if piv.last() == Some(&t.cols) {
            return None;
        }
        let mut x = vec![0u32; t.cols];
        for (i, &c) in piv.iter().enumerate() {
            x[c] = m.get(i, t.cols);
        }
        Some(x)
    }

    pub fn det(&self) -> u32 {
        assert!(self.is_square());
        let mut m = self.clone();
        let p = self.p;
        let n = self.rows;
        let mut det = 1u32 % p;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if piv != c {
                m.swap_rows(piv, c);
                det = prime::neg(det, p);
            }
            let pv = m.get(c, c);
            det = prime::mul(det, pv, p);
            let inv = prime::inv(pv, p);
            for i in c + 1..n {
                let f = prime::mul(m.get(i, c), inv, p);
                if f != 0 {
                    for j in c..n {
                        let v = prime::sub(m.get(i, j), prime::mul(f, m.get(c, j), p), p);
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (m, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Matrix of `v ↦ v·M` restricted to the span of `basis`, which must
    /// be invariant; returns coordinates with respect to `basis`.
    pub fn restrict(&self, basis: &[Vec<u32>]) -> Option<FpMatrix> {
        let b = FpMatrix::from_rows(self.p, self.cols, basis);
        let rows: Option<Vec<Vec<u32>>> = basis
            .iter()
            .map(|v| b.solve_left(&self.vec_mul(v)))
            .collect();
        Some(FpMatrix::from_rows(self.p, basis.len(), &rows?))
    }
}

/// Incrementally maintained echelon basis of a subspace of `F_p^n`.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u32,
    n: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(p: u32, n: usize) -> Self {
        Echelon {
            p,
            n,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Residue of `v` after eliminating against the stored rows.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut v: Vec<u32> = v.to_vec();
        for (piv, row) in &self.rows {
            let f = v[*piv];
            if f != 0 {
                let nf = p - f as u64;
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = ((*x as u64 + nf * r as u64) % p) as u32;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = prime::inv(r[piv], self.p);
        for x in r.iter_mut() {
            *x = prime::mul(*x, inv, self.p);
        }
        let p = self.p as u64;
        for (_, row) in self.rows.iter_mut() {
            let f = row[piv];
            if f != 0 {
                let nf = p - f as u64;
                for (x, &y) in row.iter_mut().zip(&r) {
                    if y != 0 {
                        *x = ((*x as u64 + nf * y as u64) % p) as u32;
                    }
                }
            }
        }
        self.rows.push((piv, r));
        true
    }

    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// Gaussian elimination over a field: transforms `rows` into reduced row
/// echelon form in place and returns the pivot columns.
pub fn rref_over<R: Ring>(ring: &R, rows: &mut Vec<Vec<R::Elem>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !ring.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = ring.inv(&rows[r][c]).expect("nonzero pivot in a field");
        for j in c..cols {
            rows[r][j] = ring.mul(&inv, &rows[r][j]);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || ring.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                let t = ring.mul(&f, &pivot_row[j]);
                row[j] = ring.sub(&row[j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    pivots
}

/// Basis of `{x : A·x = 0}` over a field, where `A` is given by its rows.
pub fn kernel_over<R: Ring>(ring: &R, rows: &[Vec<R::Elem>], cols: usize) -> Vec<Vec<R::Elem>> {
    let mut m = rows.to_vec();
    let piv = rref_over(ring, &mut m);
    (0..cols)
        .filter(|c| !piv.contains(c))
        .map(|f| {
            let mut v = vec![ring.zero(); cols];
            v[f] = ring.one();
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = ring.neg(&m[i][f]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_and_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let m = FpMatrix::random_invertible(5, 4, &mut rng);
            let inv = m.inverse().unwrap();
            assert_eq!(m.mul(&inv), FpMatrix::identity(5, 4));
            assert_ne!(m.det(), 0);
        }
        let sing = FpMatrix::from_rows(3, 2, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(sing.det(), 0);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn kernels_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let m = FpMatrix::random(3, 4, 6, &mut rng);
            let k = m.right_kernel();
            assert_eq!(k.len() + m.rank(), 6);
            for v in &k {
                assert!(m.transpose().vec_mul(v).iter().all(|&x| x == 0));
            }
            for v in m.left_kernel() {
                assert!(m.vec_mul(&v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn echelon_tracks_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = FpMatrix::random(2, 7, 5, &mut rng);
        let mut e = Echelon::new(2, 5);
        for i in 0..7 {
            e.insert(m.row(i));
        }
        assert_eq!(e.dim(), m.rank());
        for i in 0..7 {
            assert!(e.contains(m.row(i)));
        }
    }

    #[test]
    fn solve_left_finds_preimage() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = FpMatrix::random(7, 3, 5, &mut rng);
        let x = vec![1, 2, 3];
        let b = m.vec_mul(&x);
        let y = m.solve_left(&b).unwrap();
        assert_eq!(m.vec_mul(&y), b);
    }
}
