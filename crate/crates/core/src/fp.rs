//! Dense matrices over the prime field `F_p`.
//!
//! Entries are stored reduced into `[0, p)` in row-major order. Elimination
//! always picks the first nonzero entry as pivot, so ranks, echelon forms and
//! bases are reproducible.

use std::fmt;

/// Multiplicative inverse of a nonzero residue.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of arbitrary integers, reducing mod `p`.
    /// All rows must have length `cols`.
    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<i64>]) -> Option<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return None;
            }
            data.extend(row.iter().map(|&x| reduce(x, p)));
        }
        Some(Self { p, rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, x % p);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        self.data[r * self.cols + c] = x % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = (*d + a * b) % p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + a * b) % self.p)
            })
            .collect()
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.p, self.rows, self.cols), (other.p, other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Self { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product `self ⊗ other`: entry `((i,k),(j,l)) = self[i][j] * other[k][l]`.
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = Self::zeros(p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.set(i * other.rows + k, j * other.cols + l, a * b % p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let mut out = Self::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!((self.p, self.rows), (other.p, other.rows));
        let mut out = Self::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.p, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(r) = (prow..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if r != prow {
                for k in 0..self.cols {
                    self.data.swap(r * self.cols + k, prow * self.cols + k);
                }
            }
            let inv = inv_mod(self.get(prow, c), p);
            for k in c..self.cols {
                let v = self.get(prow, k);
                self.set(prow, k, v * inv % p);
            }
            for r2 in 0..self.rows {
                if r2 == prow {
                    continue;
                }
                let f = self.get(r2, c);
                if f == 0 {
                    continue;
                }
                for k in c..self.cols {
                    let v = self.get(prow, k);
                    if v != 0 {
                        let cur = self.get(r2, k);
                        self.set(r2, k, (cur + p - f * v % p) % p);
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = if self.rows <= self.cols { self.clone() } else { self.transpose() };
        m.rref_in_place().len()
    }

    /// Basis of the null space `{v : self v = 0}`, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m.get(i, free)) % p;
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space, taken as the pivot columns of `self`.
    pub fn column_space(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        pivots.iter().map(|&c| self.column(c)).collect()
    }
}

/// A subspace of `F_p^n` stored by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u64,
    ambient: usize,
    basis: Vec<Vec<u64>>,
}

impl Subspace {
    /// Span of arbitrary vectors; redundant vectors are dropped.
    pub fn span(p: u64, ambient: usize, vectors: &[Vec<u64>]) -> Self {
        if vectors.is_empty() {
            return Self { p, ambient, basis: Vec::new() };
        }
        let basis = FpMatrix::from_columns(p, ambient, vectors).column_space();
        Self { p, ambient, basis }
    }

    pub fn whole(p: u64, ambient: usize) -> Self {
        let basis = FpMatrix::identity(p, ambient).columns();
        Self { p, ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    fn as_matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.p, self.ambient, &self.basis)
    }

    /// `U ∩ V`, computed from the kernel of `[U | V]`.
    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!((self.p, self.ambient), (other.p, other.ambient));
        if self.basis.is_empty() || other.basis.is_empty() {
            return Self { p: self.p, ambient: self.ambient, basis: Vec::new() };
        }
        let u = self.as_matrix();
        let joined = u.hcat(&other.as_matrix());
        let k = self.dim();
        let vectors: Vec<Vec<u64>> = joined
            .kernel()
            .into_iter()
            .map(|c| u.mul_vec(&c[..k]))
            .collect();
        Self::span(self.p, self.ambient, &vectors)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        FpMatrix::from_columns(self.p, self.ambient, &vs).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }
}
