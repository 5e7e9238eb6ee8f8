//! Bit-packed vectors and matrices over F2.

use serde::{Deserialize, Serialize};

use crate::error::LinalgError;

const W: usize = 64;

#[inline]
fn words(n: usize) -> usize {
    n.div_ceil(W)
}

/// A vector over F2, 64 coordinates per word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitVec {
    len: usize,
    data: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, data: vec![0; words(len)] }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn unit(len: usize, i: usize) -> Self {
        Self::from_indices(len, [i])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.data[i / W] >> (i % W) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % W);
        if b {
            self.data[i / W] |= m;
        } else {
            self.data[i / W] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.data[i / W] ^= 1u64 << (i % W);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.data.iter().zip(&other.data).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    /// Index of the lowest set coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.data.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, w)| k * W + w.trailing_zeros() as usize)
    }

    /// Indices of the set coordinates, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.data.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * W + t)
            })
        })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// A dense matrix over F2 with bit-packed rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words(cols);
        F2Matrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries; all rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Dimension { expected: cols, got: r.len() });
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x & 1 == 1);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_bitvecs(rows: &[BitVec], cols: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Dimension { expected: cols, got: r.len() });
            }
            m.row_words_mut(i).copy_from_slice(&r.data);
        }
        Ok(m)
    }

    /// A matrix with the given vectors as columns.
    pub fn from_columns(cols: &[BitVec], rows: usize) -> Result<Self, LinalgError> {
        Ok(Self::from_bitvecs(cols, rows)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / W] >> (j % W) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / W];
        let m = 1u64 << (j % W);
        if b {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / W] ^= 1u64 << (j % W);
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec { len: self.cols, data: self.row_words(i).to_vec() }
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&i| self.get(i, j)))
    }

    /// Adds row `src` into row `dst`.
    fn add_row(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..src * s + s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..dst * s + s])
        };
        for (x, y) in b.iter_mut().zip(a) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.stride {
                self.data.swap(a * self.stride + k, b * self.stride + k);
            }
        }
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension { expected: self.cols, got: v.len() });
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let p: u32 = self.row_words(i).iter().zip(&v.data).map(|(a, b)| (a & b).count_ones()).sum();
            if p % 2 == 1 {
                out.flip(i);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix, LinalgError> {
        if other.rows != self.cols {
            return Err(LinalgError::Dimension { expected: self.cols, got: other.rows });
        }
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in self.row(i).ones() {
                for w in 0..out.stride {
                    out.data[i * out.stride + w] ^= other.data[k * other.stride + w];
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Reduced row echelon form in place; returns the pivot column of each nonzero row.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, j)) else { continue };
            self.swap_rows(p, r);
            for i in 0..self.rows {
                if i != r && self.get(i, j) {
                    self.add_row(r, i);
                }
            }
            pivots.push(j);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }
}

/// Rank and a kernel basis, one vector per free column of the reduced row echelon form.
///
/// The basis vector for free column `f` has a 1 at `f`, zeros at the other
/// free columns, so the basis is itself in reduced echelon form (pivoting on
/// free columns from the right).
pub fn f2_rank_kernel(m: &F2Matrix) -> (usize, Vec<BitVec>) {
    let mut e = m.clone();
    let pivots = e.rref_in_place();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVec::unit(m.cols, f);
            for (r, &p) in pivots.iter().enumerate() {
                if e.get(r, f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    (pivots.len(), kernel)
}

/// Some `x` with `M·x = b`, or `None` when the system is inconsistent.
pub fn solve_f2(m: &F2Matrix, b: &BitVec) -> Result<Option<BitVec>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::Dimension { expected: m.rows, got: b.len() });
    }
    // Row reduce [M | b].
    let mut aug = F2Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in m.row(i).ones() {
            aug.set(i, j, true);
        }
        aug.set(i, m.cols, b.get(i));
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = BitVec::zeros(m.cols);
    for (r, &p) in pivots.iter().enumerate() {
        x.set(p, aug.get(r, m.cols));
    }
    Ok(Some(x))
}
