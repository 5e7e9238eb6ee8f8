//! Integer matrices and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// `U·M·V = diag(diagonal)` with `U`, `V` unimodular and each entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub u: ZMatrix,
    pub v: ZMatrix,
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers; rows shorter than `cols` are zero-padded.
    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate().take(cols) {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.entries[i * self.cols + j] = x;
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn mul(&self, other: &ZMatrix) -> ZMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = ZMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.at(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Whether the matrix is diagonal with the given diagonal entries.
    pub fn is_diagonal_with(&self, diagonal: &[BigInt]) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let want = if i == j { diagonal.get(i).cloned().unwrap_or_default() } else { BigInt::zero() };
                *self.get(i, j) == want
            })
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Row `dst` += `q` · row `src`.
    fn add_row(&mut self, src: usize, dst: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = self.get(src, j).clone();
            if !s.is_zero() {
                *self.at(dst, j) += q * s;
            }
        }
    }

    /// Column `dst` += `q` · column `src`.
    fn add_col(&mut self, src: usize, dst: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = self.get(i, src).clone();
            if !s.is_zero() {
                *self.at(i, dst) += q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = self.at(i, j);
            *x = -std::mem::take(x);
        }
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &ZMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = ZMatrix::identity(r);
    let mut v = ZMatrix::identity(c);
    let n = r.min(c);
    let mut t = 0;
    while t < n {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        let p = a.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..r {
            if !a.get(i, t).is_zero() {
                let q = -a.get(i, t).div_floor(&p);
                a.add_row(t, i, &q);
                u.add_row(t, i, &q);
                clean &= a.get(i, t).is_zero();
            }
        }
        for j in t + 1..c {
            if !a.get(t, j).is_zero() {
                let q = -a.get(t, j).div_floor(&p);
                a.add_col(t, j, &q);
                v.add_col(t, j, &q);
                clean &= a.get(t, j).is_zero();
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility by pulling an offending row into row t.
        let offending = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&p)));
        if let Some(i) = offending {
            let one = BigInt::one();
            a.add_row(i, t, &one);
            u.add_row(i, t, &one);
            continue;
        }
        if p.is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..n).map(|i| a.get(i, i).clone()).collect();
    Snf { diagonal, u, v }
}

/// Whether a square matrix is invertible over the integers.
pub fn is_unimodular(m: &ZMatrix) -> bool {
    if m.rows != m.cols {
        return false;
    }
    let d = smith_normal_form(m).diagonal;
    d.iter().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn diag_two_three() {
        let m = ZMatrix::from_i64(&[vec![2, 0], vec![0, 3]], 2);
        let s = smith_normal_form(&m);
        assert_eq!(ints(&s.diagonal), vec![1, 6]);
        assert!(s.u.mul(&m).mul(&s.v).is_diagonal_with(&s.diagonal));
    }

    #[test]
    fn zero_matrix() {
        let s = smith_normal_form(&ZMatrix::zeros(3, 2));
        assert_eq!(ints(&s.diagonal), vec![0, 0]);
    }

    #[test]
    fn unimodular_transforms() {
        let m = ZMatrix::from_i64(&[vec![4, 6, 2], vec![2, -8, 10], vec![6, 0, 12]], 3);
        let s = smith_normal_form(&m);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        assert!(s.u.mul(&m).mul(&s.v).is_diagonal_with(&s.diagonal));
    }
}
