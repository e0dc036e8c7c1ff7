//! Dense exact linear algebra over the prime fields `F_q`, `q` prime and small.
//!
//! Everything downstream (representation spaces, graded complexes, extension
//! scans) reduces to row reduction of small dense matrices with entries in
//! `F_q`.  Entries are stored as residues `0..q`; all arithmetic is exact.
//! Sizes stay tiny (dimensions well below 100), so a naive `O(n^3)` Gaussian
//! elimination is the right tool.

use crate::error::{Error, Result};

/// Modular inverse in `F_q` for prime `q`, by Fermat: `a^(q-2)`.
fn inv_mod(a: u8, q: u8) -> u8 {
    debug_assert!(a != 0);
    let mut acc: u8 = 1;
    for _ in 0..(q - 2) {
        acc = mul_mod(acc, a, q);
    }
    acc
}

#[inline]
fn mul_mod(a: u8, b: u8, q: u8) -> u8 {
    ((a as u16 * b as u16) % q as u16) as u8
}

#[inline]
fn add_mod(a: u8, b: u8, q: u8) -> u8 {
    let s = a as u16 + b as u16;
    (s % q as u16) as u8
}

#[inline]
fn neg_mod(a: u8, q: u8) -> u8 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

/// A dense matrix over `F_q` with `rows x cols` entries stored row-major.
///
/// The zero-row or zero-column case is legal and common (maps in and out of
/// the zero space); such matrices still carry their shape.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    q: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl std::fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FqMatrix({}x{} mod {})[", self.rows, self.cols, self.q)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl FqMatrix {
    /// All-zero matrix of the given shape.
    pub fn zero(q: u8, rows: usize, cols: usize) -> Self {
        FqMatrix {
            q,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(q: u8, n: usize) -> Self {
        let mut m = Self::zero(q, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from a row-major list of entries (reduced mod `q`).
    pub fn from_rows(q: u8, rows: usize, cols: usize, entries: &[u8]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        FqMatrix {
            q,
            rows,
            cols,
            data: entries.iter().map(|&e| e % q).collect(),
        }
    }

    /// Build entry-wise from a closure.
    pub fn from_fn(q: u8, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut m = Self::zero(q, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c) % q);
            }
        }
        m
    }

    pub fn q(&self) -> u8 {
        self.q
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.q;
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FqMatrix {
        FqMatrix::from_fn(self.q, self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn add(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(
            (self.rows, self.cols, self.q),
            (other.rows, other.cols, other.q)
        );
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = add_mod(*a, b, self.q);
        }
        out
    }

    pub fn sub(&self, other: &FqMatrix) -> FqMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FqMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = neg_mod(*a, self.q);
        }
        out
    }

    pub fn scale(&self, s: u8) -> FqMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = mul_mod(*a, s % self.q, self.q);
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.q, other.q);
        let mut out = FqMatrix::zero(self.q, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = add_mod(out.get(r, c), mul_mod(a, other.get(k, c), self.q), self.q);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Apply to a vector given as a slice (length = `cols`).
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut s = 0u16;
                for (c, &x) in v.iter().enumerate() {
                    s = (s + self.get(r, c) as u16 * x as u16) % self.q as u16;
                }
                s as u8
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.q, other.q);
        FqMatrix::from_fn(self.q, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                other.get(r, c - self.cols)
            }
        })
    }

    /// Vertical concatenation `[self ; other]`.
    pub fn vconcat(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.q, other.q);
        FqMatrix::from_fn(self.q, self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c)
            } else {
                other.get(r - self.rows, c)
            }
        })
    }

    /// 2x2 block matrix `[[a, b], [c, d]]`; shapes must be consistent.
    pub fn block2x2(a: &FqMatrix, b: &FqMatrix, c: &FqMatrix, d: &FqMatrix) -> FqMatrix {
        a.hconcat(b).vconcat(&c.hconcat(d))
    }

    /// Copy of the given column range as a matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> FqMatrix {
        FqMatrix::from_fn(self.q, self.rows, range.len(), |r, c| {
            self.get(r, range.start + c)
        })
    }

    /// Row-reduce in place to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // find pivot
            let mut pr = None;
            for r in row..self.rows {
                if self.get(r, col) != 0 {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            // swap rows
            if pr != row {
                for c in 0..self.cols {
                    let (a, b) = (self.get(row, c), self.get(pr, c));
                    self.set(row, c, b);
                    self.set(pr, c, a);
                }
            }
            // normalize pivot row
            let p = self.get(row, col);
            if p != 1 {
                let pi = inv_mod(p, self.q);
                for c in 0..self.cols {
                    let v = mul_mod(self.get(row, c), pi, self.q);
                    self.set(row, c, v);
                }
            }
            // eliminate the column everywhere else
            for r in 0..self.rows {
                if r != row {
                    let f = self.get(r, col);
                    if f != 0 {
                        for c in 0..self.cols {
                            let v = add_mod(
                                self.get(r, c),
                                mul_mod(neg_mod(f, self.q), self.get(row, c), self.q),
                                self.q,
                            );
                            self.set(r, c, v);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank via row reduction (on a copy).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right null space `{x : self * x = 0}`, returned as a
    /// `cols x k` matrix whose columns are the basis vectors.  The basis is
    /// the canonical one read off the reduced row echelon form (one basis
    /// vector per free column, deterministic).
    pub fn kernel_basis(&self) -> FqMatrix {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FqMatrix::zero(self.q, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, neg_mod(m.get(r, fc), self.q));
            }
        }
        out
    }

    /// Solve `self * X = rhs` for `X`; `None` if inconsistent.  When the
    /// solution is not unique the free coordinates are set to zero
    /// (deterministic particular solution).
    pub fn solve_matrix(&self, rhs: &FqMatrix) -> Option<FqMatrix> {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.q, rhs.q);
        let mut aug = self.hconcat(rhs);
        let pivots = aug.rref_in_place();
        // consistency: no pivot in the rhs block
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = FqMatrix::zero(self.q, self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, aug.get(r, self.cols + c));
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix; `None` if singular.
    pub fn inverse(&self) -> Option<FqMatrix> {
        assert!(self.is_square());
        let id = FqMatrix::identity(self.q, self.rows);
        let mut aug = self.hconcat(&id);
        let pivots = aug.rref_in_place();
        // invertible iff every pivot lands in the left block and fills it
        if pivots.len() != self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some(aug.columns(self.cols..2 * self.cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Canonical basis of the column space: the reduced row echelon form of
    /// the transpose, transposed back (columns form the canonical basis of
    /// the span, so two equal subspaces produce identical matrices).
    pub fn column_space_basis(&self) -> FqMatrix {
        let mut t = self.transpose();
        let pivots = t.rref_in_place();
        let k = pivots.len();
        FqMatrix::from_fn(self.q, self.rows, k, |r, c| t.get(c, r))
    }

    /// True when every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &FqMatrix) -> bool {
        self.solve_matrix(other).is_some()
    }

    /// Deterministic extension of the columns of `self` (assumed independent)
    /// to a basis of the ambient space, returning only the new columns.
    pub fn complement_basis(&self) -> FqMatrix {
        let id = FqMatrix::identity(self.q, self.rows);
        let aug = self.hconcat(&id);
        let mut red = aug.clone();
        let pivots = red.rref_in_place();
        let extra: Vec<usize> = pivots.iter().copied().filter(|&p| p >= self.cols).collect();
        let mut out = FqMatrix::zero(self.q, self.rows, extra.len());
        for (k, &p) in extra.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, k, aug.get(r, p));
            }
        }
        out
    }
}

/// All subspaces of `F_q^n`, each given by its canonical `n x k` basis matrix
/// (the transpose of a reduced row echelon form).  Ordered deterministically:
/// by dimension, then by pivot set, then by free entries in odometer order.
pub fn enumerate_subspaces(q: u8, n: usize) -> Vec<FqMatrix> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free entry positions: (row i, col j) with j > pivots[i], j not a pivot
            let mut free_pos = Vec::new();
            for (i, &p) in pivots.iter().enumerate() {
                for j in (p + 1)..n {
                    if !pivots.contains(&j) {
                        free_pos.push((i, j));
                    }
                }
            }
            let mut fill = vec![0u8; free_pos.len()];
            loop {
                let mut rowmat = FqMatrix::zero(q, k, n);
                for (i, &p) in pivots.iter().enumerate() {
                    rowmat.set(i, p, 1);
                }
                for (t, &(i, j)) in free_pos.iter().enumerate() {
                    rowmat.set(i, j, fill[t]);
                }
                out.push(rowmat.transpose());
                // odometer
                let mut t = 0;
                loop {
                    if t == fill.len() {
                        break;
                    }
                    fill[t] += 1;
                    if fill[t] < q {
                        break;
                    }
                    fill[t] = 0;
                    t += 1;
                }
                if t == fill.len() {
                    break;
                }
            }
        }
    }
    out
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Iterator over all vectors of `F_q^n` in odometer order (first coordinate
/// fastest), starting from the zero vector.
pub struct VectorIter {
    q: u8,
    v: Vec<u8>,
    done: bool,
    fresh: bool,
}

impl VectorIter {
    pub fn new(q: u8, n: usize) -> Self {
        VectorIter {
            q,
            v: vec![0; n],
            done: false,
            fresh: true,
        }
    }
}

impl Iterator for VectorIter {
    type Item = Vec<u8>;
    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(self.v.clone());
        }
        let mut t = 0;
        loop {
            if t == self.v.len() {
                self.done = true;
                return None;
            }
            self.v[t] += 1;
            if self.v[t] < self.q {
                break;
            }
            self.v[t] = 0;
            t += 1;
        }
        Some(self.v.clone())
    }
}

/// `q^e` as a checked `u128`; errors against the given budget description.
pub fn checked_pow(q: u8, e: u32, what: &'static str, budget: u128) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc
            .checked_mul(q as u128)
            .filter(|&v| v <= budget)
            .ok_or(Error::Budget {
                what,
                needed: u128::MAX,
                budget,
            })?;
    }
    Ok(acc)
}

/// Order of the general linear group `GL(n, F_q)`.
pub fn gl_order(q: u8, n: usize) -> u128 {
    let qn = (q as u128).pow(n as u32);
    let mut acc: u128 = 1;
    for i in 0..n {
        acc *= qn - (q as u128).pow(i as u32);
    }
    acc
}
