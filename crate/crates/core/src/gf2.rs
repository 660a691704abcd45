//! Dense matrices over GF(2) with rows packed into 64-bit words.
//!
//! Row operations are word-parallel XORs, so eliminating an `m x n` matrix
//! costs about `m * n * n / 64` word operations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD)
}

/// A `rows x cols` matrix over GF(2), row-major, one bit per entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from a closure giving each entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values. All rows must have the same length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_fn(rows.len(), cols, |i, j| {
            let row = rows[i].as_ref();
            assert_eq!(row.len(), cols, "ragged row {i}");
            row[j] & 1 == 1
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        (self.bits[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let w = &mut self.bits[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Adds one to entry `(i, j)`.
    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.bits[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| !self.get(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Column indices of the nonzero entries of row `i`, ascending.
    pub fn row_support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i)
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * WORD + b))
    }

    /// Row indices of the nonzero entries of column `j`, ascending.
    pub fn col_support(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows).filter(move |&i| self.get(i, j))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_support(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Exact product over GF(2).
    pub fn multiply(&self, rhs: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = i * out.stride;
            for k in self.row_support(i) {
                let src = rhs.row_words(k);
                for (d, s) in out.bits[dst..dst + out.stride].iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }

    /// Entrywise sum over GF(2).
    pub fn add(&self, rhs: &F2Matrix) -> Result<F2Matrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        for (d, s) in out.bits.iter_mut().zip(&rhs.bits) {
            *d ^= s;
        }
        Ok(out)
    }

    /// Adds row `src` into row `dst`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert!(src < self.rows && dst < self.rows);
        if src == dst {
            self.bits[dst * self.stride..(dst + 1) * self.stride].fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.bits.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.bits.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, w) in b.iter_mut().zip(a) {
            *d ^= w;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for w in 0..s {
            self.bits.swap(a * s + w, b * s + w);
        }
    }

    /// Reduces a copy to reduced row echelon form and returns it with the
    /// pivot column of each nonzero row.
    fn echelon(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let s = m.stride;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let (wi, mask) = (col / WORD, 1u64 << (col % WORD));
            let Some(p) = (r..m.rows).find(|&i| m.bits[i * s + wi] & mask != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let (head, tail) = m.bits.split_at_mut(r * s);
            let (pivot, rest) = tail.split_at_mut(s);
            for row in head.chunks_exact_mut(s).chain(rest.chunks_exact_mut(s)) {
                if row[wi] & mask != 0 {
                    // Words left of the pivot word are already zero in the pivot row.
                    for (d, w) in row[wi..].iter_mut().zip(&pivot[wi..]) {
                        *d ^= w;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank over GF(2). The matrix itself is not modified.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let s = m.stride;
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let (wi, mask) = (col / WORD, 1u64 << (col % WORD));
            let Some(p) = (r..m.rows).find(|&i| m.bits[i * s + wi] & mask != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let (head, tail) = m.bits.split_at_mut((r + 1) * s);
            let pivot = &head[r * s..];
            for row in tail.chunks_exact_mut(s) {
                if row[wi] & mask != 0 {
                    for (d, w) in row[wi..].iter_mut().zip(&pivot[wi..]) {
                        *d ^= w;
                    }
                }
            }
            r += 1;
        }
        r
    }

    /// A basis of the right kernel `{x : A x = 0}`, one basis vector per row
    /// of the returned `(cols - rank) x cols` matrix.
    pub fn kernel(&self) -> F2Matrix {
        let (ech, pivots) = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut basis = F2Matrix::zeros(free.len(), self.cols);
        for (b, &f) in free.iter().enumerate() {
            basis.set(b, f, true);
            for (row, &p) in pivots.iter().enumerate() {
                if ech.get(row, f) {
                    basis.set(b, p, true);
                }
            }
        }
        basis
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}
